#include "wdvv/geometry.hpp"

#include <algorithm>
#include <limits>

namespace wdvv {

ScanResult singularity_scan(const CoefficientTable& table, const Real& t1,
                            const Real& t3, const Real& X0,
                            const std::vector<Real>& deltas,
                            const PrecisionContext& ctx) {
  if (!(t3 > 0))
    throw std::invalid_argument(
        "singularity_scan: requires t3 > 0 (the X-chart); for t3 < 0 build "
        "the intersection form with an explicit X instead");
  if (deltas.empty())
    throw std::invalid_argument("singularity_scan: no delta samples");

  PrecisionScope scope(ctx);
  const PhiEvaluator evaluator(table, ctx);
  const Real x0 = at_current_precision(X0);
  const Real s = at_current_precision(t1);
  const Real w = at_current_precision(t3);
  const Real log_w = log(w);

  std::vector<Real> sorted;
  sorted.reserve(deltas.size());
  for (const Real& d : deltas) {
    if (!(d > 0))
      throw std::invalid_argument("singularity_scan: deltas must be positive");
    sorted.push_back(at_current_precision(d));
  }
  std::sort(sorted.begin(), sorted.end());

  ScanResult result;
  result.rows.reserve(sorted.size());
  std::vector<Real> xs, ys;
  xs.reserve(sorted.size());
  ys.reserve(sorted.size());

  for (const Real& delta : sorted) {
    const Real x = x0 - delta;
    const PhiValues phi = evaluator.at_x(x);
    if (phi.outside_disk)
      throw std::domain_error(
          "singularity_scan: sample at delta=" + decimal(delta, 8) +
          " is not strictly inside the estimated convergence disk");

    const FlatPoint<Real> point{s, x - 3 * log_w, w};
    const auto form = intersection_form(point, phi);
    const auto cubic = characteristic_cubic(form);
    const auto coords = canonical_coordinates(cubic, ctx);
    const auto jacobian = coordinate_jacobian_row(point, phi);

    result.rows.push_back(ScanRow{delta, x, coords, jacobian.j2, jacobian.j3});
    xs.push_back(log(delta));
    ys.push_back(log(abs(jacobian.j2)));
  }

  if (result.rows.size() >= 2) {
    result.j2_loglog = least_squares_line(xs, ys);
    result.blowup_exponent = result.j2_loglog.slope;
  } else {
    result.j2_loglog = LineFit{std::numeric_limits<Real>::quiet_NaN(),
                               std::numeric_limits<Real>::quiet_NaN(),
                               std::numeric_limits<Real>::quiet_NaN()};
    result.blowup_exponent = std::numeric_limits<Real>::quiet_NaN();
  }
  return result;
}

}  // namespace wdvv
