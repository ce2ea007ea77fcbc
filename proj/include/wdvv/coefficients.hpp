#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "wdvv/numeric.hpp"

namespace wdvv {

/// Exact rational coefficients A_1..A_n of the Kontsevich expansion
/// sum_k A_k tau^k for QH*(CP^2). Immutable once built; safe to share
/// across concurrent readers.
class CoefficientTable {
 public:
  /// Takes ownership of A_1..A_n (1-based index k maps to coeffs[k-1]).
  /// Requires a nonempty sequence of strictly positive rationals.
  explicit CoefficientTable(std::vector<Rational> coeffs);

  int n_max() const { return static_cast<int>(coeffs_.size()); }

  /// A_k, 1 <= k <= n_max.
  const Rational& at(int k) const;

  const std::vector<Rational>& coeffs() const { return coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

/// Exact A_1..A_{n_max} from the associativity recurrence with seed A_1 = 1/2:
///
///   A_k = sum_{i=1}^{k-1} A_i A_{k-i} i(k-i) [(3i-2)(3k-3i-2)(k+2)+8k-8]
///         / [6 (3k-1)(3k-2)(3k-3)]
///
/// The summand is symmetric under i <-> k-i, so only half the terms are
/// evaluated. All arithmetic is exact; results are in lowest terms.
CoefficientTable compute_coefficients(int n_max);

/// Genus-zero Gromov-Witten invariant: the number of degree-k rational curves
/// through 3k-1 generic points.
struct GwInvariant {
  int k = 0;
  BigInt value;
};

/// N_k = A_k (3k-1)!, checked to be an exact integer.
/// Throws std::invalid_argument for k out of range and ConsistencyError if
/// the product is not an integer (a corrupted table).
GwInvariant gw_invariant(const CoefficientTable& table, int k);

/// Exact residual of the coefficient of e^{mX} after substituting
/// Phi(X) = sum_k A_k e^{kX} into the ODE
///
///   -6 Phi + 33 Phi' - 54 Phi'' - (Phi'')^2 + Phi'''(27 + 2 Phi' - 3 Phi'') = 0.
///
/// Must be exactly zero for every m when the table comes from the recurrence.
struct OdeResidualReport {
  int order = 0;
  Rational residual;
};

/// Coefficient-wise ODE check, independent of the recurrence: for each
/// m <= n_max collects the linear part (27m^3 - 54m^2 + 33m - 6) A_m and the
/// convolutions contributed by (Phi'')^2, Phi'''Phi' and Phi'''Phi''.
std::vector<OdeResidualReport> verify_ode_coefficients(
    const CoefficientTable& table);

/// Table file format: UTF-8 text, header
///   # kontsevich-A version=1 n_max=<N>
/// then one line `<k> <numerator> <denominator>` per coefficient,
/// all decimal, no exponents.
void save_table(const CoefficientTable& table, std::ostream& out);
void save_table(const CoefficientTable& table, const std::filesystem::path& path);
CoefficientTable load_table(std::istream& in);
CoefficientTable load_table(const std::filesystem::path& path);

}  // namespace wdvv
