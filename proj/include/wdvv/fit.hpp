#pragma once

#include <utility>
#include <vector>

#include "wdvv/coefficients.hpp"

namespace wdvv {

/// Inclusive index window [n0, n] of table entries used by a fit.
struct FitWindow {
  int n0 = 900;
  int n = 1000;
};

/// Growth constants of A_k ~ b a^k k^{-7/2}. The exponent -7/2 is fixed by
/// the singular expansion at the convergence boundary and is not fitted.
struct FitResult {
  Real a;
  Real b;
  Real ln_a;
  Real ln_b;
  Real rms_residual;
  FitWindow window;
  bool low_confidence = false;  // window shorter than 3 points
};

struct LineFit {
  Real slope;
  Real intercept;
  Real rms;
};

/// Plain least squares y = slope*x + intercept in means form:
/// slope = sum (x - xbar)(y - ybar) / sum (x - xbar)^2. Needs >= 2 points.
LineFit least_squares_line(const std::vector<Real>& xs,
                           const std::vector<Real>& ys);

/// Fits ln(A_k k^{7/2}) = (ln a) k + ln b over the window. The y-values are
/// formed from the exact rationals with high-precision logarithms (A_1000 is
/// of order 10^-840 and underflows any fixed-precision float).
FitResult fit_growth(const CoefficientTable& table, FitWindow window,
                     const PrecisionContext& ctx);

/// Adjacent-ratio sequence (k, A_{k+1}/A_k) over the window, exact.
std::vector<std::pair<int, Rational>> ratio_diagnostics(
    const CoefficientTable& table, FitWindow window);

/// X0 = ln(1/a) = -ln a; requires a in (0, 1).
Real derive_x0(const Real& a);
Real derive_x0(const FitResult& fit);

}  // namespace wdvv
