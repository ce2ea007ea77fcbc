#pragma once

#include <utility>
#include <vector>

#include "wdvv/coefficients.hpp"

namespace wdvv {

/// Partial sums sum_{k<=n} k^r A_k e^{kX} for r = 0..3 (Phi and its first
/// three derivatives), evaluated at working precision.
template <class Scalar>
struct PhiValuesT {
  Scalar X{};
  Scalar phi0{}, phi1{}, phi2{}, phi3{};
  int n_terms = 0;
  /// |tau| times the estimated growth base of A_k. Values >= 1 mean the
  /// point is outside the estimated convergence disk.
  Scalar convergence_margin{};
  /// Set when the point is not strictly inside the estimated disk (within
  /// kMarginTolerance of the boundary or beyond). phi0..phi2 still exist on
  /// the boundary; phi3 does not, hence the separate divergence flag.
  bool outside_disk = false;
  bool phi3_divergent = false;
};

using PhiValues = PhiValuesT<Real>;

/// Relative slack applied when comparing the convergence margin against 1;
/// absorbs the uncertainty of the ratio-based growth estimate.
inline constexpr double kMarginTolerance = 1e-3;

/// Batch evaluator: converts every exact A_k to floating form once at
/// construction and reuses the converted coefficients across evaluations.
class PhiEvaluator {
 public:
  PhiEvaluator(const CoefficientTable& table, const PrecisionContext& ctx);

  /// Sums at tau = e^X.
  PhiValues at_x(const Real& X) const;

  /// Sums in powers of tau directly (tau may be negative; PhiValues.X is
  /// meaningful only for tau > 0).
  PhiValues at_tau(const Real& tau) const;

  /// Estimated geometric growth base of the coefficients: the trailing ratio
  /// A_n/A_{n-1} with the k^{-7/2} drift removed, plus a safety margin.
  const Real& growth_base() const { return growth_base_; }

  /// Upper estimate for the omitted tail sum_{k>n_max} k^r A_k |tau|^k:
  /// the last included term times a geometric series in
  /// q = growth_base * |tau| * (1+1/n)^r. Infinity when q >= 1.
  Real tail_bound(const Real& abs_tau, int r) const;

  int n_terms() const { return static_cast<int>(coeffs_.size()); }
  const PrecisionContext& ctx() const { return ctx_; }

 private:
  PrecisionContext ctx_;
  std::vector<Real> coeffs_;
  Real growth_base_;
};

/// One-shot evaluation of Phi, Phi', Phi'', Phi''' at X.
PhiValues eval_phi(const CoefficientTable& table, const Real& X,
                   const PrecisionContext& ctx);

/// Boundary refinement of Phi'' from the constraint
/// 27 + 2 Phi'(X0) - 3 Phi''(X0) = 0: returns (27 + 2 phi1) / 3.
Real refined_phi2(const Real& phi1);

/// 27 + 2 phi1 - 3 phi2; exactly zero for refined phi2, nonzero for
/// truncated direct sums.
Real constraint_residual(const PhiValues& values);

struct FreeEnergyValue {
  Real value;
  Real convergence_margin;
  bool outside_disk = false;
};

/// Non-cubic part of the free energy, f(t2,t3) = phi(tau)/t3 with
/// tau = t3^3 e^{t2}. Throws std::domain_error when t3 = 0 (the chart
/// degenerates there).
FreeEnergyValue eval_f(const CoefficientTable& table, const Real& t2,
                       const Real& t3, const PrecisionContext& ctx);

struct PdeResidual {
  Real residual;  // f222 f233 + f333 - f223^2 on the truncated series
  Real bound;     // truncation majorant plus round-off floor
  Real convergence_margin;
};

/// Residual of the associativity PDE at (t2, t3), with the third partials of
/// f written as exact finite combinations of the series sums via
/// dX/dt2 = 1, dX/dt3 = 3/t3. Requires the point strictly inside the
/// estimated convergence disk.
PdeResidual pde_residual(const CoefficientTable& table, const Real& t2,
                         const Real& t3, const PrecisionContext& ctx);

struct SingularExponentEstimate {
  Real exponent;
  std::pair<Real, Real> window;  // [min delta, max delta] sampled
  int points = 0;
};

/// Least-squares slope of log Phi'''(X0 - delta) against log delta over the
/// given samples (expected near -1/2 at the convergence boundary). Requires
/// at least 3 samples, each in (0, 0.5) and strictly inside the disk.
SingularExponentEstimate estimate_singular_exponent(
    const CoefficientTable& table, const Real& X0, const PrecisionContext& ctx,
    const std::vector<Real>& deltas);

/// Ten logarithmically spaced deltas in [0.02, 0.2].
std::vector<Real> default_delta_samples();

}  // namespace wdvv
