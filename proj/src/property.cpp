#include "mogra/property.hpp"

#include <stdexcept>

namespace mogra {

void PropertySpec::validate() const {
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("property '" + name + "': direction must be +1 or -1");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("property '" + name + "': delta must be positive");
  }
  if (name.empty()) throw std::invalid_argument("property name must be nonempty");
}

Candidate Candidate::from_tokens(std::vector<int> tokens) {
  Candidate c;
  c.valid = !tokens.empty();
  c.tokens = std::move(tokens);
  return c;
}

bool TaskSpec::is_improve(const std::string& name) const {
  for (const auto& n : improve_set) {
    if (n == name) return true;
  }
  return false;
}

const PropertySpec& TaskSpec::spec(const std::string& name) const {
  for (const auto& p : properties) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown property '" + name + "'");
}

std::size_t TaskSpec::property_index(const std::string& name) const {
  for (std::size_t i = 0; i < properties.size(); ++i) {
    if (properties[i].name == name) return i;
  }
  throw std::invalid_argument("unknown property '" + name + "'");
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> partition_properties(
    std::span<const double> source_values, std::span<const PropertySpec> specs) {
  if (source_values.size() != specs.size()) {
    throw std::invalid_argument("partition_properties: one value per spec required");
  }
  std::vector<std::size_t> improve;
  std::vector<std::size_t> stabilize;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const double d = specs[i].direction;
    if (d * source_values[i] < d * specs[i].theta) {
      improve.push_back(i);
    } else {
      stabilize.push_back(i);
    }
  }
  return {std::move(improve), std::move(stabilize)};
}

TaskSpec make_task(Candidate source, std::vector<PropertySpec> specs,
                   const OracleRegistry& registry, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  for (const auto& s : specs) {
    s.validate();
    registry.get(s.oracle_id);  // resolve now, not at first rollout
  }
  TaskSpec task;
  task.max_len = max_len;
  task.properties = std::move(specs);
  task.source = std::move(source);
  if (!task.source.valid) throw std::invalid_argument("task source must be a valid sequence");
  if (static_cast<int>(task.source.tokens.size()) > max_len) {
    throw std::invalid_argument("task source longer than max_len");
  }

  const auto& src_vals = eval_properties(task.source, task, registry);
  auto [improve, stabilize] = partition_properties(src_vals, task.properties);
  for (auto i : improve) {
    const auto& p = task.properties[i];
    task.improve_set.push_back(p.name);
    task.targets[p.name] = src_vals[i] + p.direction * p.delta;
  }
  for (auto i : stabilize) {
    const auto& p = task.properties[i];
    task.stabilize_set.push_back(p.name);
    task.bands[p.name] = {src_vals[i] - p.delta, src_vals[i] + p.delta};
  }
  return task;
}

const std::vector<double>& eval_properties(Candidate& cand, const TaskSpec& task,
                                           const OracleRegistry& registry) {
  if (!cand.valid) throw std::invalid_argument("cannot evaluate properties of an invalid candidate");
  if (cand.props) {
    if (cand.props->size() != task.properties.size()) {
      throw std::invalid_argument("cached property vector does not match task");
    }
    return *cand.props;
  }
  std::vector<double> vals;
  vals.reserve(task.properties.size());
  for (const auto& p : task.properties) {
    vals.push_back(registry.get(p.oracle_id).fn(cand.tokens));
  }
  cand.props = std::move(vals);
  return *cand.props;
}

const Fingerprint& ensure_fingerprint(Candidate& cand, int width) {
  if (!cand.fp || cand.fp->width() != width) {
    cand.fp = fingerprint_tokens(cand.tokens, width);
  }
  return *cand.fp;
}

}  // namespace mogra
