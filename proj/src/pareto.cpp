#include "mogra/pareto.hpp"

#include <cmath>
#include <stdexcept>

namespace mogra {

ParetoArgmax pareto_argmax(const ParetoFront& front, const Aggregator& agg) {
  if (front.resolution < 100) throw std::invalid_argument("pareto_argmax: resolution must be >= 100");
  const int n = front.resolution;
  ParetoArgmax best;
  bool first = true;
  double vmin = 0.0, vmax = 0.0;
  double r1min = 0.0, r1max = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    auto [r1, r2] = front.sampler(t);
    const double vals[2] = {r1, r2};
    const double v = agg(vals);
    if (first || v > best.value) {
      best = {t, r1, r2, v, ArgmaxLocation::interior};
    }
    vmin = first ? v : std::min(vmin, v);
    vmax = first ? v : std::max(vmax, v);
    r1min = first ? r1 : std::min(r1min, r1);
    r1max = first ? r1 : std::max(r1max, r1);
    first = false;
  }
  if (vmax - vmin < 1e-12 && r1max - r1min < 1e-12) {
    throw std::invalid_argument("pareto_argmax: degenerate front (constant output)");
  }
  const double step = 1.0 / static_cast<double>(n);
  best.location = (best.t_star <= step || best.t_star >= 1.0 - step) ? ArgmaxLocation::boundary
                                                                     : ArgmaxLocation::interior;
  return best;
}

std::vector<ContourRow> contour_data(const Aggregator& agg, const GridSpec& grid) {
  if (grid.nx < 2 || grid.ny < 2) throw std::invalid_argument("contour_data: grid too small");
  if (agg.kind == AggregatorKind::geometric_mean && (grid.x_lo < 0.0 || grid.y_lo < 0.0)) {
    throw std::invalid_argument("contour_data: geometric mean on a grid containing negatives");
  }
  std::vector<ContourRow> rows;
  rows.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double y = grid.y_lo + (grid.y_hi - grid.y_lo) * iy / (grid.ny - 1);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x_lo + (grid.x_hi - grid.x_lo) * ix / (grid.nx - 1);
      const double vals[2] = {x, y};
      rows.push_back({x, y, agg(vals)});
    }
  }
  return rows;
}

namespace {

ParetoFront power_front(const std::string& name, double q) {
  return ParetoFront{name,
                     [q](double t) {
                       const double r1 = t;
                       const double inner = std::max(0.0, 1.0 - std::pow(t, q));
                       return std::pair<double, double>{r1, std::pow(inner, 1.0 / q)};
                     },
                     1000};
}

}  // namespace

std::vector<ParetoFront> shipped_nonconvex_fronts() {
  return {power_front("nonconvex_q30", 0.30), power_front("nonconvex_q50", 0.50),
          power_front("nonconvex_q70", 0.70)};
}

std::vector<ParetoFront> shipped_fronts() {
  auto fronts = shipped_nonconvex_fronts();
  fronts.push_back(ParetoFront{
      "linear", [](double t) { return std::pair<double, double>{t, 1.0 - t}; }, 1000});
  return fronts;
}

ParetoFront front_by_name(const std::string& name) {
  for (auto& f : shipped_fronts()) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("unknown front '" + name + "'");
}

}  // namespace mogra
