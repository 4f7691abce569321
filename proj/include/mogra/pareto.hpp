#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mogra/aggregate.hpp"

namespace mogra {

// A two-objective front traced by t in [0,1], outputs in [0,1]^2.
struct ParetoFront {
  std::string name;
  std::function<std::pair<double, double>(double)> sampler;
  int resolution = 1000;
};

enum class ArgmaxLocation { interior, boundary };

struct ParetoArgmax {
  double t_star = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double value = 0.0;
  ArgmaxLocation location = ArgmaxLocation::interior;
};

// Grid-search argmax of the aggregator over the front. Classified boundary
// iff t* lies within one grid step of 0 or 1. Requires resolution >= 100 and
// a non-degenerate front (constant fronts throw).
ParetoArgmax pareto_argmax(const ParetoFront& front, const Aggregator& agg);

// Row-major table of aggregator values over a rectangular grid, for offline
// contour plotting.
struct GridSpec {
  double x_lo = 0.0, x_hi = 1.0;
  double y_lo = 0.0, y_hi = 1.0;
  int nx = 50, ny = 50;
};

struct ContourRow {
  double x, y, value;
};

std::vector<ContourRow> contour_data(const Aggregator& agg, const GridSpec& grid);

// Shipped front family.
//   nonconvex_qXX:  r1^q + r2^q = 1 with q = XX/100 < 1; bulges toward the
//                   origin, so a linear scalarizer peaks at the endpoints
//   linear:         r1 + r2 = 1
std::vector<ParetoFront> shipped_fronts();
std::vector<ParetoFront> shipped_nonconvex_fronts();
ParetoFront front_by_name(const std::string& name);

}  // namespace mogra
