#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mogra/property.hpp"

namespace mogra {

// Controls the margin-adaptive sigmoid steepness alpha_p =
// proportionality * 5 / delta_p. With the default proportionality of 1,
// moving a property by exactly its margin in the desired direction maps to
// sigmoid(5) regardless of the property's numeric scale.
struct SteepnessConfig {
  double proportionality = 1.0;
};

double sigmoid(double x);

// alpha for a given margin; throws unless delta > 0.
double steepness(double delta, const SteepnessConfig& cfg = {});

// Score for a property that must improve: sigmoid(alpha*direction*(v - T)).
// Exactly 0.5 at v == T, saturating toward 0/1 away from it.
double improvement_score(double v, double target, double alpha, int direction);

// d improvement_score / d v.
double improvement_score_dv(double v, double target, double alpha, int direction);

// Score for a property that must stay inside [L, U]:
// sigmoid(alpha*(U-v)) * sigmoid(alpha*(v-L)). A plateau over the band with
// exponential decay outside. Throws unless L < U.
double stability_score(double v, double lo, double hi, double alpha);

// d stability_score / d v.
double stability_score_dv(double v, double lo, double hi, double alpha);

// Per-property scores in (0,1), keyed by property name.
struct ShapedScores {
  std::map<std::string, double> per_property;
  const TaskSpec* task = nullptr;
};

// Applies improvement_score to improve-set properties (against T_p) and
// stability_score to stabilize-set properties (against [L_p, U_p]).
// values must be ordered like task.properties.
ShapedScores shape_rewards(std::span<const double> values, const TaskSpec& task,
                           const SteepnessConfig& cfg = {});

// Same as shape_rewards but returned in task property order.
std::vector<double> shaped_vector(std::span<const double> values, const TaskSpec& task,
                                  const SteepnessConfig& cfg = {});

// The no-alignment alternative: each property contributes its raw value
// oriented by direction, r_p = direction * v_p. Keeps the heterogeneous
// scales of the underlying oracles, which is precisely what sigmoid
// alignment removes.
std::vector<double> raw_vector(std::span<const double> values, const TaskSpec& task);

}  // namespace mogra
