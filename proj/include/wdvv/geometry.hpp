#pragma once

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <array>
#include <limits>
#include <type_traits>
#include <vector>

#include "wdvv/cubic.hpp"
#include "wdvv/fit.hpp"
#include "wdvv/series.hpp"

namespace wdvv {

template <class Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

/// Point in flat coordinates; the chart degenerates at t3 = 0. For t3 > 0 the
/// series variable is X = t2 + 3 ln t3.
template <class Scalar>
struct FlatPoint {
  Scalar t1{};
  Scalar t2{};
  Scalar t3{};
};

/// Flat metric of QH*(CP^2): antidiagonal ones.
template <class Scalar>
Mat3<Scalar> flat_metric() {
  Mat3<Scalar> eta = Mat3<Scalar>::Zero();
  eta(0, 2) = eta(1, 1) = eta(2, 0) = Scalar(1);
  return eta;
}

/// Quasi-homogeneity data: E = t1 d1 + 3 d2 - t3 d3, charges (0,1,2),
/// dimension 2, and E(F) - F = 3 t1 t2 giving the quadratic correction.
struct EulerData {
  std::array<int, 3> charges{0, 1, 2};
  int dimension = 2;
};

template <class Scalar>
Mat3<Scalar> quadratic_correction() {
  Mat3<Scalar> a = Mat3<Scalar>::Zero();
  a(1, 2) = a(2, 1) = Scalar(3);
  return a;
}

template <class Scalar>
struct IntersectionFormT {
  Mat3<Scalar> g;
  FlatPoint<Scalar> source_point;
  PhiValuesT<Scalar> phi;
};

using IntersectionForm = IntersectionFormT<Real>;

namespace detail {

template <class Scalar>
inline constexpr bool kHasExp =
    std::is_floating_point_v<Scalar> || std::is_same_v<Scalar, Real>;

inline double exp_s(double x) { return std::exp(x); }
inline Real exp_s(const Real& x) { return exp(x); }

}  // namespace detail

/// Intersection form g^{ab} = (1+d-q_a-q_b) eta^{am} eta^{bn} d_m d_n F + A^{ab}
/// at the given point, assembled from the series sums:
///
///       [ 3/t3^3 (2 phi0 - 9 phi1 + 9 phi2)   2/t3^2 (3 phi2 - phi1)   t1 ]
///   g = [ 2/t3^2 (3 phi2 - phi1)              t1 + phi2/t3             3  ]
///       [ t1                                  3                      -t3  ]
///
/// For floating scalars with series data attached (phi.n_terms > 0) the
/// pairing is validated: e^{phi.X} must equal t3^3 e^{t2}.
template <class Scalar>
IntersectionFormT<Scalar> intersection_form(const FlatPoint<Scalar>& point,
                                            const PhiValuesT<Scalar>& phi) {
  if (point.t3 == 0)
    throw std::invalid_argument("intersection_form: chart degenerates at t3 = 0");

  if constexpr (detail::kHasExp<Scalar>) {
    if (phi.n_terms > 0) {
      const Scalar tau_point =
          point.t3 * point.t3 * point.t3 * detail::exp_s(point.t2);
      const Scalar tau_phi = detail::exp_s(phi.X);
      const Scalar tol = Scalar(1) / 1000000;
      if (abs_s(tau_point - tau_phi) > tol * abs_s(tau_point))
        throw std::invalid_argument(
            "intersection_form: phi was evaluated at an X inconsistent with "
            "the point (need X = t2 + 3 ln t3)");
    }
  }

  const Scalar w = point.t3;
  const Scalar w2 = w * w, w3 = w2 * w;

  IntersectionFormT<Scalar> form;
  form.g = Mat3<Scalar>::Zero();
  form.g(0, 0) = 3 * (2 * phi.phi0 - 9 * phi.phi1 + 9 * phi.phi2) / w3;
  form.g(0, 1) = 2 * (3 * phi.phi2 - phi.phi1) / w2;
  form.g(0, 2) = point.t1;
  form.g(1, 0) = form.g(0, 1);
  form.g(1, 1) = point.t1 + phi.phi2 / w;
  form.g(1, 2) = Scalar(3);
  form.g(2, 0) = form.g(0, 2);
  form.g(2, 1) = form.g(1, 2);
  form.g(2, 2) = -w;
  form.source_point = point;
  form.phi = phi;
  return form;
}

/// Monic characteristic cubic det(g - u eta) = u^3 + c2 u^2 + c1 u + c0,
/// plus the per-coefficient discrepancy against the independently
/// hand-expanded closed form (a transcription diagnostic; the determinant
/// route is authoritative).
template <class Scalar>
struct CharacteristicCubicT {
  Scalar c2{};
  Scalar c1{};
  Scalar c0{};
  std::array<Scalar, 3> expanded_form_delta{};  // |det route - closed form|
};

using CharacteristicCubic = CharacteristicCubicT<Real>;

/// Hand-expanded coefficients (c2, c1, c0) of the same cubic; kept as an
/// independent cross-check route for characteristic_cubic.
template <class Scalar>
std::array<Scalar, 3> expanded_cubic_coefficients(
    const FlatPoint<Scalar>& point, const PhiValuesT<Scalar>& phi) {
  const Scalar s = point.t1, w = point.t3;
  const Scalar w2 = w * w, w3 = w2 * w;
  const Scalar p0 = phi.phi0, p1 = phi.phi1, p2 = phi.phi2;

  const Scalar c2 = -(3 * s + p2 / w);
  const Scalar c1 =
      -(-3 * s * s - 2 * s * p2 / w + (9 * p2 + 15 * p1 - 6 * p0) / w2);
  const Scalar c0 =
      (-9 * s * w * p2 + 243 * p2 - 243 * p1 + 6 * p0 * p1 - 9 * p2 * p2 +
       6 * s * w * p0 + s * s * w2 * p2 - 3 * p1 * p2 + s * s * s * w3 -
       4 * p1 * p1 + 54 * p0 - 15 * s * w * p1) /
      w3;
  return {c2, c1, c0};
}

/// det(g - u eta) as a monic cubic. Since eta^{-1} = eta, the polynomial is
/// the characteristic polynomial of B = eta g: u^3 - tr(B) u^2 + m2(B) u
/// - det(B) with m2 the sum of principal 2x2 minors.
template <class Scalar>
CharacteristicCubicT<Scalar> characteristic_cubic(
    const IntersectionFormT<Scalar>& form) {
  const Mat3<Scalar> b = flat_metric<Scalar>() * form.g;

  const Scalar trace = b.trace();
  const Scalar minors = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0) +
                        b(0, 0) * b(2, 2) - b(0, 2) * b(2, 0) +
                        b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1);
  const Scalar det = b.determinant();

  CharacteristicCubicT<Scalar> cubic;
  cubic.c2 = -trace;
  cubic.c1 = minors;
  cubic.c0 = -det;

  const auto expanded = expanded_cubic_coefficients(form.source_point, form.phi);
  cubic.expanded_form_delta = {abs_s(cubic.c2 - expanded[0]),
                               abs_s(cubic.c1 - expanded[1]),
                               abs_s(cubic.c0 - expanded[2])};
  return cubic;
}

/// Ordered canonical coordinates: the roots of the characteristic cubic.
template <class Scalar>
struct CanonicalCoordsT {
  Cx<Scalar> u1{}, u2{}, u3{};
  Scalar separation{};  // min pairwise |u_i - u_j|
  bool near_degenerate = false;
  Scalar condition{};  // root sensitivity estimate, >= 1
};

using CanonicalCoords = CanonicalCoordsT<Real>;

/// Solves the cubic in closed form with Newton polishing, orders the roots
/// (descending real part, ties by ascending imaginary part), and measures the
/// minimal pairwise separation. A separation below degeneracy_tol times the
/// root scale sets the near-degenerate warning rather than failing: measuring
/// closeness to degeneracy is the point.
template <class Scalar>
CanonicalCoordsT<Scalar> canonical_coordinates(
    const CharacteristicCubicT<Scalar>& cubic, const Scalar& degeneracy_tol) {
  const CubicRoots<Scalar> roots =
      solve_monic_cubic(cubic.c2, cubic.c1, cubic.c0);

  CanonicalCoordsT<Scalar> coords;
  coords.u1 = roots.u[0];
  coords.u2 = roots.u[1];
  coords.u3 = roots.u[2];

  const Scalar d12 = abs_c(roots.u[0] - roots.u[1]);
  const Scalar d13 = abs_c(roots.u[0] - roots.u[2]);
  const Scalar d23 = abs_c(roots.u[1] - roots.u[2]);
  coords.separation = std::min(d12, std::min(d13, d23));

  Scalar scale = Scalar(1);
  Scalar condition = Scalar(1);
  for (const auto& u : roots.u) {
    const Scalar mag = abs_c(u);
    if (mag > scale) scale = mag;
  }
  for (const auto& u : roots.u) {
    // kappa_i = sum_j |c_j| |u_i|^j / (|p'(u_i)| max(|u_i|, 1))
    const Scalar mag = abs_c(u);
    const Scalar poly_scale = abs_s(cubic.c0) +
                              mag * (abs_s(cubic.c1) +
                                     mag * (abs_s(cubic.c2) + mag));
    const Cx<Scalar> dp = detail::horner_derivative(u, cubic.c2, cubic.c1);
    const Scalar dp_mag = abs_c(dp);
    const Scalar denom = dp_mag * (mag > 1 ? mag : Scalar(1));
    if (denom == 0) {
      condition = std::numeric_limits<Scalar>::infinity();
      break;
    }
    const Scalar kappa = poly_scale / denom;
    if (kappa > condition) condition = kappa;
  }
  coords.condition = condition;
  coords.near_degenerate = coords.separation <= degeneracy_tol * scale;
  return coords;
}

/// Real-typed convenience: degeneracy tolerance 10^{-digits/2}.
inline CanonicalCoords canonical_coordinates(const CharacteristicCubic& cubic,
                                             const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Real tol = pow(Real(10), -static_cast<int>(ctx.digits() / 2));
  return canonical_coordinates<Real>(cubic, tol);
}

/// Gradient of u1+u2+u3 = 3 t1 + Phi''(X)/t3 in flat coordinates:
/// (3, Phi'''/t3, -Phi''/t3^2 + 3 Phi'''/t3^2).
template <class Scalar>
struct JacobianRow {
  Scalar j1{}, j2{}, j3{};
};

template <class Scalar>
JacobianRow<Scalar> coordinate_jacobian_row(const FlatPoint<Scalar>& point,
                                            const PhiValuesT<Scalar>& phi) {
  if (point.t3 == 0)
    throw std::invalid_argument(
        "coordinate_jacobian_row: chart degenerates at t3 = 0");
  const Scalar w = point.t3;
  return JacobianRow<Scalar>{Scalar(3), phi.phi3 / w,
                             (3 * phi.phi3 - phi.phi2) / (w * w)};
}

/// One sample of the approach to the convergence boundary.
struct ScanRow {
  Real delta;
  Real X;
  CanonicalCoords coords;
  Real j2;
  Real j3;
};

struct ScanResult {
  std::vector<ScanRow> rows;   // ordered by ascending delta
  LineFit j2_loglog;           // log|j2| against log delta
  Real blowup_exponent;        // slope of the fit, expected near -1/2
};

/// For each delta: evaluates the series at X = X0 - delta, builds the
/// intersection form at (t1, t3), extracts canonical coordinates and the
/// Jacobian row, then fits the growth of |j2|. Requires t3 > 0 (the X-chart)
/// and every sample strictly inside the estimated convergence disk.
ScanResult singularity_scan(const CoefficientTable& table, const Real& t1,
                            const Real& t3, const Real& X0,
                            const std::vector<Real>& deltas,
                            const PrecisionContext& ctx);

}  // namespace wdvv
