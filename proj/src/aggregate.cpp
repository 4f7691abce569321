#include "mogra/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mogra {

AggregatorKind aggregator_from_string(const std::string& s) {
  if (s == "arithmetic_mean" || s == "am") return AggregatorKind::arithmetic_mean;
  if (s == "geometric_mean" || s == "gm") return AggregatorKind::geometric_mean;
  if (s == "lse_softmin" || s == "lse") return AggregatorKind::lse_softmin;
  throw std::invalid_argument("unknown aggregator '" + s + "'");
}

std::string to_string(AggregatorKind k) {
  switch (k) {
    case AggregatorKind::arithmetic_mean: return "arithmetic_mean";
    case AggregatorKind::geometric_mean: return "geometric_mean";
    case AggregatorKind::lse_softmin: return "lse_softmin";
  }
  throw std::logic_error("bad aggregator kind");
}

double Aggregator::operator()(std::span<const double> values) const {
  switch (kind) {
    case AggregatorKind::arithmetic_mean: return arithmetic_mean(values);
    case AggregatorKind::geometric_mean: return geometric_mean(values);
    case AggregatorKind::lse_softmin: return lse_softmin(values, temperature);
  }
  throw std::logic_error("bad aggregator kind");
}

double arithmetic_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("arithmetic_mean: empty input");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double geometric_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("geometric_mean: empty input");
  double log_sum = 0.0;
  for (double v : values) {
    if (v < 0.0) throw std::invalid_argument("geometric_mean: negative input");
    if (v == 0.0) return 0.0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

double lse_softmin(std::span<const double> values, double k) {
  if (values.empty()) throw std::invalid_argument("lse_softmin: empty input");
  if (!(k > 0.0)) throw std::invalid_argument("lse_softmin: k must be positive");
  // shift by the minimum: exp(-k(v - m)) <= 1 for every term
  const double m = *std::min_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::exp(-k * (v - m));
  return m - std::log(sum) / k;
}

std::vector<double> gm_gradient(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("gm_gradient: empty input");
  for (double v : values) {
    if (!(v > 0.0)) throw std::invalid_argument("gm_gradient: inputs must be strictly positive");
  }
  const double gm = geometric_mean(values);
  const double n = static_cast<double>(values.size());
  std::vector<double> grad(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) grad[i] = gm / (n * values[i]);
  return grad;
}

std::vector<double> lse_gradient(std::span<const double> values, double k) {
  if (values.empty()) throw std::invalid_argument("lse_gradient: empty input");
  if (!(k > 0.0)) throw std::invalid_argument("lse_gradient: k must be positive");
  const double m = *std::min_element(values.begin(), values.end());
  std::vector<double> grad(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    grad[i] = std::exp(-k * (values[i] - m));
    sum += grad[i];
  }
  for (double& g : grad) g /= sum;
  return grad;
}

}  // namespace mogra
