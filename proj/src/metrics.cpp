#include "mogra/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mogra {

EvalPair make_eval_pair(const Candidate& source, const Candidate& generated, const TaskSpec& task,
                        const OracleRegistry& registry) {
  EvalPair pair;
  pair.source = source;
  pair.generated = generated;
  pair.task = &task;
  eval_properties(pair.source, task, registry);
  if (pair.generated.valid) eval_properties(pair.generated, task, registry);
  return pair;
}

namespace {

const std::vector<double>& props_of(const Candidate& c, const char* who) {
  if (!c.props) {
    throw std::invalid_argument(std::string("eval pair: ") + who + " has no cached properties");
  }
  return *c.props;
}

}  // namespace

bool sor_pass(const EvalPair& pair) {
  if (!pair.task) throw std::invalid_argument("eval pair without task");
  if (!pair.generated.valid) return false;
  const auto& task = *pair.task;
  const auto& src = props_of(pair.source, "source");
  const auto& gen = props_of(pair.generated, "generated");
  for (std::size_t i = 0; i < task.properties.size(); ++i) {
    const auto& p = task.properties[i];
    if (task.is_improve(p.name)) {
      if (!(p.direction * (gen[i] - src[i]) >= p.delta)) return false;
    } else {
      if (!(std::abs(gen[i] - src[i]) <= p.delta)) return false;
    }
  }
  return true;
}

bool ssor_pass(const EvalPair& pair, bool gated_on_sor) {
  if (!pair.task) throw std::invalid_argument("eval pair without task");
  if (!pair.generated.valid) return false;
  if (gated_on_sor && !sor_pass(pair)) return false;
  const auto& task = *pair.task;
  const auto& gen = props_of(pair.generated, "generated");
  for (std::size_t i = 0; i < task.properties.size(); ++i) {
    const auto& p = task.properties[i];
    if (!(p.direction * gen[i] >= p.direction * p.theta)) return false;
  }
  return true;
}

double pair_ri(const EvalPair& pair, std::size_t* guard_events) {
  if (!pair.task) throw std::invalid_argument("eval pair without task");
  if (!pair.generated.valid) return 0.0;
  const auto& task = *pair.task;
  if (task.improve_set.empty()) return 0.0;
  const auto& src = props_of(pair.source, "source");
  const auto& gen = props_of(pair.generated, "generated");
  double sum = 0.0;
  for (const auto& name : task.improve_set) {
    const std::size_t i = task.property_index(name);
    const auto& p = task.properties[i];
    double denom = std::abs(src[i]);
    if (denom == 0.0) {
      denom = 1e-8;
      if (guard_events) ++*guard_events;
    }
    sum += p.direction * (gen[i] - src[i]) / denom;
  }
  return sum / static_cast<double>(task.improve_set.size());
}

double sor(std::span<const EvalPair> pairs) {
  if (pairs.empty()) throw std::invalid_argument("sor: empty pair list");
  std::size_t hits = 0;
  for (const auto& p : pairs) {
    if (sor_pass(p)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

double ssor(std::span<const EvalPair> pairs, bool gated_on_sor) {
  if (pairs.empty()) throw std::invalid_argument("ssor: empty pair list");
  std::size_t hits = 0;
  for (const auto& p : pairs) {
    if (ssor_pass(p, gated_on_sor)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

double ri(std::span<const EvalPair> pairs, std::size_t* guard_events) {
  if (pairs.empty()) throw std::invalid_argument("ri: empty pair list");
  double sum = 0.0;
  for (const auto& p : pairs) sum += pair_ri(p, guard_events);
  return sum / static_cast<double>(pairs.size());
}

double similarity_avg(std::span<const EvalPair> pairs, int fp_width) {
  if (pairs.empty()) throw std::invalid_argument("similarity_avg: empty pair list");
  double sum = 0.0;
  std::size_t n_valid = 0;
  for (const auto& pair : pairs) {
    if (!pair.generated.valid) continue;
    Candidate src = pair.source;
    Candidate gen = pair.generated;
    sum += tanimoto(ensure_fingerprint(src, fp_width), ensure_fingerprint(gen, fp_width));
    ++n_valid;
  }
  if (n_valid == 0) throw std::invalid_argument("similarity_avg: no valid generated candidates");
  return sum / static_cast<double>(n_valid);
}

MetricsReport compute_metrics(std::span<const EvalPair> pairs, bool ssor_gated, int fp_width,
                              std::size_t* ri_guard_events) {
  MetricsReport report;
  report.n = pairs.size();
  report.sor = sor(pairs);
  report.ssor = ssor(pairs, ssor_gated);
  report.ri = ri(pairs, ri_guard_events);
  bool any_valid = false;
  for (const auto& p : pairs) any_valid |= p.generated.valid;
  report.sim = any_valid ? similarity_avg(pairs, fp_width) : 0.0;
  return report;
}

std::size_t select_candidate_index(const Candidate& source, std::span<const Candidate> beam,
                                   const TaskSpec& task, const OracleRegistry& registry) {
  if (beam.empty()) throw std::invalid_argument("select_candidate: empty beam");

  bool have_sor = false, have_valid = false;
  std::size_t best = 0;
  double best_ri = 0.0;
  for (std::size_t k = 0; k < beam.size(); ++k) {
    if (!beam[k].valid) continue;
    const EvalPair pair = make_eval_pair(source, beam[k], task, registry);
    const bool compliant = sor_pass(pair);
    const double r = pair_ri(pair);
    if (compliant && !have_sor) {
      // first compliant entry resets the running argmax to the compliant set
      have_sor = true;
      have_valid = true;
      best = k;
      best_ri = r;
      continue;
    }
    if (compliant != have_sor) continue;  // non-compliant entries stop competing
    if (!have_valid || r > best_ri) {
      best = k;
      best_ri = r;
      have_valid = true;
    }
  }
  return (have_sor || have_valid) ? best : 0;  // all invalid: top-ranked entry
}

Candidate select_candidate(const Candidate& source, std::span<const Candidate> beam,
                           const TaskSpec& task, const OracleRegistry& registry) {
  return beam[select_candidate_index(source, beam, task, registry)];
}

}  // namespace mogra
