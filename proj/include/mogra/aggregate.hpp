#pragma once

#include <span>
#include <string>
#include <vector>

namespace mogra {

enum class AggregatorKind { arithmetic_mean, geometric_mean, lse_softmin };

AggregatorKind aggregator_from_string(const std::string& s);
std::string to_string(AggregatorKind k);

// Scalarizer for per-property scores. temperature only affects lse_softmin;
// with temperature 1 the soft-min reduces to -log sum exp(-x), the form used
// for aggregating decoupled advantages.
struct Aggregator {
  AggregatorKind kind = AggregatorKind::geometric_mean;
  double temperature = 1.0;

  double operator()(std::span<const double> values) const;
};

// (1/N) sum. Throws on empty input.
double arithmetic_mean(std::span<const double> values);

// (prod)^(1/N). Inputs must be nonnegative; exact zeros are legal and make
// the mean 0, negatives throw (the geometric mean is undefined there).
double geometric_mean(std::span<const double> values);

// -(1/k) log sum exp(-k x_i), computed with a max shift so large magnitudes
// cannot overflow. Lower-bounds the minimum within log(N)/k.
double lse_softmin(std::span<const double> values, double k = 1.0);

// d GM / d r_j = (1/N) GM / r_j. Requires strictly positive inputs.
std::vector<double> gm_gradient(std::span<const double> values);

// d LSE / d x_j = softmax of -k x; nonnegative, sums to 1.
std::vector<double> lse_gradient(std::span<const double> values, double k = 1.0);

}  // namespace mogra
