#include "wdvv/fit.hpp"

#include <string>

namespace wdvv {

LineFit least_squares_line(const std::vector<Real>& xs,
                           const std::vector<Real>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("least_squares_line: size mismatch");
  const std::size_t n = xs.size();
  if (n < 2)
    throw std::invalid_argument("least_squares_line: need at least 2 points");

  Real xbar = 0, ybar = 0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= static_cast<unsigned>(n);
  ybar /= static_cast<unsigned>(n);

  Real sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real dx = xs[i] - xbar;
    sxy += dx * (ys[i] - ybar);
    sxx += dx * dx;
  }
  if (sxx == 0)
    throw std::invalid_argument("least_squares_line: degenerate abscissae");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;

  Real ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms = sqrt(ss / static_cast<unsigned>(n));
  return fit;
}

FitResult fit_growth(const CoefficientTable& table, FitWindow window,
                     const PrecisionContext& ctx) {
  if (window.n0 < 1 || window.n0 >= window.n || window.n > table.n_max())
    throw std::invalid_argument(
        "fit_growth: window [" + std::to_string(window.n0) + ", " +
        std::to_string(window.n) + "] invalid for table of size " +
        std::to_string(table.n_max()));

  PrecisionScope scope(ctx);
  const Real seven_halves = Real(7) / 2;

  std::vector<Real> xs, ys;
  xs.reserve(static_cast<std::size_t>(window.n - window.n0 + 1));
  ys.reserve(xs.capacity());
  for (int k = window.n0; k <= window.n; ++k) {
    xs.push_back(Real(k));
    ys.push_back(log(to_real(table.at(k))) + seven_halves * log(Real(k)));
  }

  const LineFit line = least_squares_line(xs, ys);

  FitResult result;
  result.ln_a = line.slope;
  result.ln_b = line.intercept;
  result.a = exp(line.slope);
  result.b = exp(line.intercept);
  result.rms_residual = line.rms;
  result.window = window;
  result.low_confidence = (window.n - window.n0 + 1) < 3;
  return result;
}

std::vector<std::pair<int, Rational>> ratio_diagnostics(
    const CoefficientTable& table, FitWindow window) {
  if (window.n0 < 1 || window.n0 > window.n || window.n >= table.n_max())
    throw std::invalid_argument(
        "ratio_diagnostics: window [" + std::to_string(window.n0) + ", " +
        std::to_string(window.n) + "] invalid; need n < n_max = " +
        std::to_string(table.n_max()));

  std::vector<std::pair<int, Rational>> ratios;
  ratios.reserve(static_cast<std::size_t>(window.n - window.n0 + 1));
  for (int k = window.n0; k <= window.n; ++k)
    ratios.emplace_back(k, table.at(k + 1) / table.at(k));
  return ratios;
}

Real derive_x0(const Real& a) {
  if (!(a > 0) || !(a < 1))
    throw std::domain_error("derive_x0: growth base must lie in (0, 1)");
  return -log(a);
}

Real derive_x0(const FitResult& fit) { return derive_x0(fit.a); }

}  // namespace wdvv
