#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "wdvv/numeric.hpp"

namespace wdvv {

// Scalar-generic elementary functions. std::complex is not usable with
// multiprecision scalars, so the solver carries its own thin complex type
// and routes sqrt/cbrt/acos/cos through these overloads.
inline double sqrt_s(double x) { return std::sqrt(x); }
inline double cbrt_s(double x) { return std::cbrt(x); }
inline double acos_s(double x) { return std::acos(x); }
inline double cos_s(double x) { return std::cos(x); }
inline double abs_s(double x) { return std::fabs(x); }
inline Rational abs_s(const Rational& x) { return abs(x); }
inline Real sqrt_s(const Real& x) { return sqrt(x); }
inline Real cbrt_s(const Real& x) { return cbrt(x); }
inline Real acos_s(const Real& x) { return acos(x); }
inline Real cos_s(const Real& x) { return cos(x); }
inline Real abs_s(const Real& x) { return abs(x); }

/// Minimal complex value over an arbitrary real scalar.
template <class Scalar>
struct Cx {
  Scalar re{};
  Scalar im{};

  friend Cx operator+(const Cx& a, const Cx& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Cx operator-(const Cx& a, const Cx& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const Scalar& s, const Cx& a) {
    return {s * a.re, s * a.im};
  }
  friend Cx operator/(const Cx& a, const Cx& b) {
    const Scalar n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
};

template <class Scalar>
Cx<Scalar> conj(const Cx<Scalar>& z) {
  return {z.re, -z.im};
}

template <class Scalar>
Scalar abs_squared(const Cx<Scalar>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class Scalar>
Scalar abs_c(const Cx<Scalar>& z) {
  return sqrt_s(abs_squared(z));
}

/// Roots of the monic cubic u^3 + c2 u^2 + c1 u + c0 with real coefficients,
/// in descending order of real part (ties by ascending imaginary part).
template <class Scalar>
struct CubicRoots {
  std::array<Cx<Scalar>, 3> u{};
  Scalar discriminant{};  // 18 c2 c1 c0 - 4 c2^3 c0 + c2^2 c1^2 - 4 c1^3 - 27 c0^2
};

namespace detail {

template <class Scalar>
Cx<Scalar> horner(const Cx<Scalar>& u, const Scalar& c2, const Scalar& c1,
                  const Scalar& c0) {
  Cx<Scalar> v = u + Cx<Scalar>{c2, Scalar(0)};
  v = v * u + Cx<Scalar>{c1, Scalar(0)};
  return v * u + Cx<Scalar>{c0, Scalar(0)};
}

template <class Scalar>
Cx<Scalar> horner_derivative(const Cx<Scalar>& u, const Scalar& c2,
                             const Scalar& c1) {
  Cx<Scalar> v = Scalar(3) * u + Cx<Scalar>{2 * c2, Scalar(0)};
  return v * u + Cx<Scalar>{c1, Scalar(0)};
}

// A few Newton steps against the original coefficients; keeps whichever
// iterate has the smaller residual.
template <class Scalar>
Cx<Scalar> polish_root(Cx<Scalar> u, const Scalar& c2, const Scalar& c1,
                       const Scalar& c0) {
  Scalar best_norm = abs_squared(horner(u, c2, c1, c0));
  Cx<Scalar> best = u;
  for (int step = 0; step < 4; ++step) {
    const Cx<Scalar> dp = horner_derivative(u, c2, c1);
    if (abs_squared(dp) == 0) break;
    u = u - horner(u, c2, c1, c0) / dp;
    const Scalar norm = abs_squared(horner(u, c2, c1, c0));
    if (norm < best_norm) {
      best_norm = norm;
      best = u;
    }
  }
  return best;
}

}  // namespace detail

template <class Scalar>
CubicRoots<Scalar> solve_monic_cubic(const Scalar& c2, const Scalar& c1,
                                     const Scalar& c0) {
  CubicRoots<Scalar> result;
  result.discriminant = 18 * c2 * c1 * c0 - 4 * c2 * c2 * c2 * c0 +
                        c2 * c2 * c1 * c1 - 4 * c1 * c1 * c1 - 27 * c0 * c0;

  // Depress with u = v - c2/3: v^3 + p v + q.
  const Scalar shift = c2 / 3;
  const Scalar p = c1 - c2 * shift;
  const Scalar q = c0 - c1 * shift + 2 * shift * shift * shift;

  std::array<Cx<Scalar>, 3> roots;
  const Scalar depressed_disc = -4 * p * p * p - 27 * q * q;

  if (p == 0 && q == 0) {
    roots.fill(Cx<Scalar>{-shift, Scalar(0)});
    result.u = roots;
    return result;
  }

  if (depressed_disc >= 0) {
    // Three real roots (p < 0 here); trigonometric form.
    const Scalar m = 2 * sqrt_s(-p / 3);
    Scalar arg = 3 * q / (p * m);
    if (arg > 1) arg = Scalar(1);
    if (arg < -1) arg = Scalar(-1);
    const Scalar theta = acos_s(arg) / 3;
    const Scalar two_thirds_pi = 2 * acos_s(Scalar(-1)) / 3;
    for (int k = 0; k < 3; ++k) {
      const Scalar v = m * cos_s(theta - k * two_thirds_pi);
      roots[static_cast<std::size_t>(k)] = Cx<Scalar>{v - shift, Scalar(0)};
    }
    for (auto& r : roots) {
      r = detail::polish_root(r, c2, c1, c0);
      r.im = Scalar(0);  // real coefficients, real root
    }
  } else {
    // One real root (Cardano, cancellation-free branch) and a conjugate pair.
    Scalar v1;
    if (q == 0) {
      v1 = Scalar(0);
    } else {
      const Scalar radical = sqrt_s(q * q / 4 + p * p * p / 27);
      const Scalar w =
          cbrt_s(q > 0 ? -q / 2 - radical : -q / 2 + radical);
      v1 = w - p / (3 * w);
    }
    Cx<Scalar> real_root{v1 - shift, Scalar(0)};
    real_root = detail::polish_root(real_root, c2, c1, c0);
    real_root.im = Scalar(0);

    // Deflate: remaining factor v^2 + v1 v + (p + v1^2).
    const Scalar half = v1 / 2;
    const Scalar im2 = 3 * v1 * v1 / 4 + p;  // positive in this branch
    Cx<Scalar> pair{-half - shift, sqrt_s(im2 > 0 ? im2 : Scalar(0))};
    pair = detail::polish_root(pair, c2, c1, c0);
    roots[0] = real_root;
    roots[1] = Cx<Scalar>{pair.re, -abs_s(pair.im)};
    roots[2] = conj(roots[1]);
  }

  // Descending real part, ties by ascending imaginary part.
  std::sort(roots.begin(), roots.end(), [](const Cx<Scalar>& a, const Cx<Scalar>& b) {
    if (a.re != b.re) return a.re > b.re;
    return a.im < b.im;
  });
  result.u = roots;
  return result;
}

}  // namespace wdvv
