#include "wdvv/series.hpp"

#include <limits>
#include <string>

#include "wdvv/fit.hpp"

namespace wdvv {

namespace {

Real margin_threshold() { return Real(1) - Real(kMarginTolerance); }

}  // namespace

PhiEvaluator::PhiEvaluator(const CoefficientTable& table,
                           const PrecisionContext& ctx)
    : ctx_(ctx) {
  PrecisionScope scope(ctx_);
  coeffs_.reserve(static_cast<std::size_t>(table.n_max()));
  for (int k = 1; k <= table.n_max(); ++k)
    coeffs_.push_back(to_real(table.at(k)));

  const int n = table.n_max();
  if (n >= 2) {
    // Trailing ratio with the k^{-7/2} drift removed estimates the growth
    // base; the (1 + 8/n) factor keeps it an upper estimate.
    const Real ratio = to_real(table.at(n) / table.at(n - 1));
    growth_base_ = ratio * pow(Real(n) / (n - 1), Real(7) / 2) *
                   (1 + Real(8) / n);
  } else {
    growth_base_ = Real(2) / 3;  // proven upper bound for the growth base
  }
}

PhiValues PhiEvaluator::at_x(const Real& X) const {
  PrecisionScope scope(ctx_);
  const Real x = at_current_precision(X);
  PhiValues values = at_tau(exp(x));
  values.X = x;
  return values;
}

PhiValues PhiEvaluator::at_tau(const Real& tau) const {
  PrecisionScope scope(ctx_);
  const Real t = at_current_precision(tau);

  Real power = 1;
  Real s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const unsigned long k = static_cast<unsigned long>(i) + 1;
    power *= t;
    Real term = coeffs_[i] * power;
    s0 += term;
    term *= k;
    s1 += term;
    term *= k;
    s2 += term;
    term *= k;
    s3 += term;
  }

  PhiValues values;
  values.X = t > 0 ? log(t) : std::numeric_limits<Real>::quiet_NaN();
  values.phi0 = s0;
  values.phi1 = s1;
  values.phi2 = s2;
  values.phi3 = s3;
  values.n_terms = n_terms();
  values.convergence_margin = abs(t) * growth_base_;
  values.outside_disk = values.convergence_margin >= margin_threshold();
  values.phi3_divergent = values.outside_disk;
  return values;
}

Real PhiEvaluator::tail_bound(const Real& abs_tau, int r) const {
  PrecisionScope scope(ctx_);
  const unsigned long n = static_cast<unsigned long>(coeffs_.size());
  const Real q = growth_base_ * at_current_precision(abs_tau) *
                 pow(Real(n + 1) / n, r);
  if (q >= 1) return std::numeric_limits<Real>::infinity();
  const Real last_term =
      coeffs_.back() * pow(at_current_precision(abs_tau), n) * pow(Real(n), r);
  return last_term * q / (1 - q);
}

PhiValues eval_phi(const CoefficientTable& table, const Real& X,
                   const PrecisionContext& ctx) {
  return PhiEvaluator(table, ctx).at_x(X);
}

Real refined_phi2(const Real& phi1) { return (27 + 2 * phi1) / 3; }

Real constraint_residual(const PhiValues& values) {
  return 27 + 2 * values.phi1 - 3 * values.phi2;
}

FreeEnergyValue eval_f(const CoefficientTable& table, const Real& t2,
                       const Real& t3, const PrecisionContext& ctx) {
  if (t3 == 0)
    throw std::domain_error("eval_f: chart is singular at t3 = 0");
  PrecisionScope scope(ctx);
  const Real w = at_current_precision(t3);
  const Real tau = w * w * w * exp(at_current_precision(t2));
  const PhiValues sums = PhiEvaluator(table, ctx).at_tau(tau);
  return FreeEnergyValue{sums.phi0 / w, sums.convergence_margin,
                         sums.outside_disk};
}

PdeResidual pde_residual(const CoefficientTable& table, const Real& t2,
                         const Real& t3, const PrecisionContext& ctx) {
  if (t3 == 0)
    throw std::domain_error("pde_residual: chart is singular at t3 = 0");
  PrecisionScope scope(ctx);
  const Real w = at_current_precision(t3);
  const Real tau = w * w * w * exp(at_current_precision(t2));

  const PhiEvaluator evaluator(table, ctx);
  const PhiValues s = evaluator.at_tau(tau);
  if (s.outside_disk)
    throw std::domain_error(
        "pde_residual: point outside the estimated convergence disk "
        "(margin " + decimal(s.convergence_margin, 8) + ")");

  // Third partials of f = phi(tau)/t3 through dX/dt2 = 1, dX/dt3 = 3/t3.
  const Real w2 = w * w, w3 = w2 * w, w4 = w3 * w;
  const Real f222 = s.phi3 / w;
  const Real f223 = (3 * s.phi3 - s.phi2) / w2;
  const Real f233 = (9 * s.phi3 - 9 * s.phi2 + 2 * s.phi1) / w3;
  const Real f333 = (27 * s.phi3 - 54 * s.phi2 + 33 * s.phi1 - 6 * s.phi0) / w4;

  PdeResidual out;
  out.residual = f222 * f233 + f333 - f223 * f223;
  out.convergence_margin = s.convergence_margin;

  // Truncation majorant: the residual is a polynomial R(S0..S3) vanishing on
  // the full sums, so |R(truncated)| <= sum_r sup|dR/dS_r| * tail_r with the
  // partial derivatives bounded on the tail box.
  const Real abs_tau = abs(tau);
  const Real t0 = evaluator.tail_bound(abs_tau, 0);
  const Real t1 = evaluator.tail_bound(abs_tau, 1);
  const Real t2b = evaluator.tail_bound(abs_tau, 2);
  const Real t3b = evaluator.tail_bound(abs_tau, 3);
  const Real s1u = abs(s.phi1) + t1;
  const Real s2u = abs(s.phi2) + t2b;
  const Real s3u = abs(s.phi3) + t3b;
  const Real truncation = (6 * t0 + (33 + 2 * s3u) * t1 +
                           (54 + 2 * s2u + 3 * s3u) * t2b +
                           (27 + 2 * s1u + 3 * s2u) * t3b) /
                          abs(w4);

  // Round-off floor: the combination cancels to near zero, so the computed
  // value carries noise proportional to the largest intermediate magnitude.
  const Real eps = pow(Real(10), 1 - static_cast<int>(ctx.digits()));
  Real magnitude = abs(f222 * f233);
  magnitude = std::max(magnitude, abs(f333));
  magnitude = std::max(magnitude, f223 * f223);
  const Real roundoff =
      32 * static_cast<unsigned>(evaluator.n_terms()) * eps * magnitude;

  out.bound = truncation + roundoff;
  return out;
}

SingularExponentEstimate estimate_singular_exponent(
    const CoefficientTable& table, const Real& X0, const PrecisionContext& ctx,
    const std::vector<Real>& deltas) {
  if (deltas.size() < 3)
    throw std::invalid_argument(
        "estimate_singular_exponent: need at least 3 samples, got " +
        std::to_string(deltas.size()));
  for (const Real& d : deltas)
    if (!(d > 0) || !(d < Real(1) / 2))
      throw std::invalid_argument(
          "estimate_singular_exponent: samples must lie in (0, 0.5)");

  PrecisionScope scope(ctx);
  const PhiEvaluator evaluator(table, ctx);
  const Real x0 = at_current_precision(X0);

  std::vector<Real> xs, ys;
  xs.reserve(deltas.size());
  ys.reserve(deltas.size());
  Real dmin = at_current_precision(deltas.front());
  Real dmax = dmin;
  for (const Real& delta_in : deltas) {
    const Real delta = at_current_precision(delta_in);
    const PhiValues values = evaluator.at_x(x0 - delta);
    if (values.outside_disk)
      throw std::domain_error(
          "estimate_singular_exponent: sample not strictly inside the "
          "convergence disk");
    xs.push_back(log(delta));
    ys.push_back(log(values.phi3));
    dmin = std::min(dmin, delta);
    dmax = std::max(dmax, delta);
  }

  const LineFit line = least_squares_line(xs, ys);
  return SingularExponentEstimate{line.slope, {dmin, dmax},
                                  static_cast<int>(deltas.size())};
}

std::vector<Real> default_delta_samples() {
  std::vector<Real> deltas;
  deltas.reserve(10);
  const Real low = Real(2) / 100;
  const Real ratio = pow(Real(10), Real(1) / 9);  // spans one decade in 10 steps
  Real d = low;
  for (int i = 0; i < 10; ++i) {
    deltas.push_back(d);
    d *= ratio;
  }
  return deltas;
}

}  // namespace wdvv
