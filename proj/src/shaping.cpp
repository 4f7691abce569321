#include "mogra/shaping.hpp"

#include <cmath>
#include <stdexcept>

namespace mogra {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double steepness(double delta, const SteepnessConfig& cfg) {
  if (!(delta > 0.0)) throw std::invalid_argument("steepness: delta must be positive");
  if (!(cfg.proportionality > 0.0)) {
    throw std::invalid_argument("steepness: proportionality must be positive");
  }
  return cfg.proportionality * 5.0 / delta;
}

double improvement_score(double v, double target, double alpha, int direction) {
  if (!(alpha > 0.0)) throw std::invalid_argument("improvement_score: alpha must be positive");
  return sigmoid(alpha * direction * (v - target));
}

double improvement_score_dv(double v, double target, double alpha, int direction) {
  const double s = improvement_score(v, target, alpha, direction);
  return alpha * direction * s * (1.0 - s);
}

double stability_score(double v, double lo, double hi, double alpha) {
  if (!(lo < hi)) throw std::invalid_argument("stability_score: band requires L < U");
  if (!(alpha > 0.0)) throw std::invalid_argument("stability_score: alpha must be positive");
  return sigmoid(alpha * (hi - v)) * sigmoid(alpha * (v - lo));
}

double stability_score_dv(double v, double lo, double hi, double alpha) {
  if (!(lo < hi)) throw std::invalid_argument("stability_score: band requires L < U");
  const double a = sigmoid(alpha * (hi - v));
  const double b = sigmoid(alpha * (v - lo));
  return alpha * (-a * (1.0 - a) * b + a * b * (1.0 - b));
}

ShapedScores shape_rewards(std::span<const double> values, const TaskSpec& task,
                           const SteepnessConfig& cfg) {
  if (values.size() != task.properties.size()) {
    throw std::invalid_argument("shape_rewards: one value per task property required");
  }
  ShapedScores out;
  out.task = &task;
  for (std::size_t i = 0; i < task.properties.size(); ++i) {
    const auto& p = task.properties[i];
    const double alpha = steepness(p.delta, cfg);
    if (task.is_improve(p.name)) {
      out.per_property[p.name] =
          improvement_score(values[i], task.targets.at(p.name), alpha, p.direction);
    } else {
      const auto& [lo, hi] = task.bands.at(p.name);
      out.per_property[p.name] = stability_score(values[i], lo, hi, alpha);
    }
  }
  return out;
}

std::vector<double> shaped_vector(std::span<const double> values, const TaskSpec& task,
                                  const SteepnessConfig& cfg) {
  ShapedScores scores = shape_rewards(values, task, cfg);
  std::vector<double> out;
  out.reserve(task.properties.size());
  for (const auto& p : task.properties) out.push_back(scores.per_property.at(p.name));
  return out;
}

std::vector<double> raw_vector(std::span<const double> values, const TaskSpec& task) {
  if (values.size() != task.properties.size()) {
    throw std::invalid_argument("raw_vector: one value per task property required");
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back(task.properties[i].direction * values[i]);
  }
  return out;
}

}  // namespace mogra
