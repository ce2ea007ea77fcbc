#include "wdvv/coefficients.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <utility>

namespace wdvv {

BigInt factorial(unsigned long n) {
  BigInt result;
  mpz_fac_ui(result.backend().data(), n);
  return result;
}

CoefficientTable::CoefficientTable(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw std::invalid_argument("CoefficientTable: empty coefficient list");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] <= 0)
      throw std::invalid_argument("CoefficientTable: A_" + std::to_string(i + 1) +
                                  " is not strictly positive");
  }
}

const Rational& CoefficientTable::at(int k) const {
  if (k < 1 || k > n_max())
    throw std::invalid_argument("CoefficientTable: index " + std::to_string(k) +
                                " outside [1, " + std::to_string(n_max()) + "]");
  return coeffs_[static_cast<std::size_t>(k) - 1];
}

CoefficientTable compute_coefficients(int n_max) {
  if (n_max < 1)
    throw std::invalid_argument("compute_coefficients: n_max must be >= 1, got " +
                                std::to_string(n_max));

  std::vector<Rational> a;
  a.reserve(static_cast<std::size_t>(n_max));
  a.emplace_back(1, 2);  // A_1 = 1/2

  for (long long k = 2; k <= n_max; ++k) {
    Rational sum = 0;
    // Summand is symmetric under i <-> k-i; fold the sum in half.
    for (long long i = 1; i * 2 < k; ++i) {
      const long long j = k - i;
      const long long weight =
          i * j * ((3 * i - 2) * (3 * j - 2) * (k + 2) + 8 * k - 8);
      Rational term = a[static_cast<std::size_t>(i) - 1] *
                      a[static_cast<std::size_t>(j) - 1];
      term *= 2 * weight;
      sum += term;
    }
    if (k % 2 == 0) {
      const long long i = k / 2;
      const long long weight =
          i * i * ((3 * i - 2) * (3 * i - 2) * (k + 2) + 8 * k - 8);
      Rational term = a[static_cast<std::size_t>(i) - 1];
      term *= term;
      term *= weight;
      sum += term;
    }
    sum /= 6 * (3 * k - 1) * (3 * k - 2) * (3 * k - 3);
    a.push_back(std::move(sum));
  }
  return CoefficientTable(std::move(a));
}

GwInvariant gw_invariant(const CoefficientTable& table, int k) {
  if (k < 1 || k > table.n_max())
    throw std::invalid_argument("gw_invariant: k=" + std::to_string(k) +
                                " outside [1, " + std::to_string(table.n_max()) +
                                "]");
  const Rational& a_k = table.at(k);
  // N_k = A_k (3k-1)!; (3k-1)! is only materialized here, on demand.
  BigInt product = numerator(a_k) * factorial(3 * static_cast<unsigned long>(k) - 1);
  BigInt quotient, remainder;
  mp::divide_qr(product, BigInt(denominator(a_k)), quotient, remainder);
  if (remainder != 0)
    throw ConsistencyError("gw_invariant: A_" + std::to_string(k) +
                           " (3k-1)! is not an integer; table is corrupted");
  return GwInvariant{k, std::move(quotient)};
}

std::vector<OdeResidualReport> verify_ode_coefficients(
    const CoefficientTable& table) {
  const int n = table.n_max();
  std::vector<OdeResidualReport> reports;
  reports.reserve(static_cast<std::size_t>(n));

  for (long long m = 1; m <= n; ++m) {
    // Linear part: coefficient of A_m e^{mX} in -6 Phi + 33 Phi' - 54 Phi''
    // + 27 Phi''' (the 27 from Phi''' times the constant in the bracket).
    Rational residual = table.at(static_cast<int>(m)) *
                        (27 * m * m * m - 54 * m * m + 33 * m - 6);
    // Convolutions: -(Phi'')^2 contributes -i^2 j^2, Phi''' 2Phi' contributes
    // 2 i^3 j, and Phi''' (-3 Phi'') contributes -3 i^3 j^2 at i + j = m.
    for (long long i = 1; i < m; ++i) {
      const long long j = m - i;
      const long long w =
          2 * i * i * i * j - i * i * j * j - 3 * i * i * i * j * j;
      Rational term = table.at(static_cast<int>(i)) *
                      table.at(static_cast<int>(j));
      term *= w;
      residual += term;
    }
    reports.push_back(OdeResidualReport{static_cast<int>(m), std::move(residual)});
  }
  return reports;
}

void save_table(const CoefficientTable& table, std::ostream& out) {
  out << "# kontsevich-A version=1 n_max=" << table.n_max() << "\n";
  for (int k = 1; k <= table.n_max(); ++k) {
    const Rational& a_k = table.at(k);
    out << k << ' ' << numerator(a_k).str() << ' ' << denominator(a_k).str()
        << '\n';
  }
  if (!out) throw IoError("save_table: write failed");
}

void save_table(const CoefficientTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("save_table: cannot open " + path.string());
  save_table(table, out);
}

CoefficientTable load_table(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw IoError("load_table: empty input");

  int n_max = 0;
  {
    std::istringstream hs(header);
    std::string hash, name, version, nfield;
    hs >> hash >> name >> version >> nfield;
    if (hash != "#" || name != "kontsevich-A" || version != "version=1" ||
        nfield.rfind("n_max=", 0) != 0)
      throw IoError("load_table: bad header: " + header);
    try {
      n_max = std::stoi(nfield.substr(6));
    } catch (const std::exception&) {
      throw IoError("load_table: bad n_max in header: " + header);
    }
    if (n_max < 1) throw IoError("load_table: n_max must be >= 1");
  }

  std::vector<Rational> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n_max));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    long long k = 0;
    std::string num, den;
    if (!(ls >> k >> num >> den))
      throw IoError("load_table: malformed record: " + line);
    if (k != static_cast<long long>(coeffs.size()) + 1)
      throw IoError("load_table: record " + std::to_string(k) +
                    " out of sequence");
    try {
      BigInt n(num), d(den);
      if (d == 0) throw IoError("load_table: zero denominator: " + line);
      coeffs.emplace_back(Rational(n) / d);
    } catch (const IoError&) {
      throw;
    } catch (const std::exception&) {
      throw IoError("load_table: bad rational in record: " + line);
    }
    if (coeffs.back() <= 0)
      throw IoError("load_table: nonpositive coefficient in record: " + line);
  }
  if (static_cast<int>(coeffs.size()) != n_max)
    throw IoError("load_table: expected " + std::to_string(n_max) +
                  " records, found " + std::to_string(coeffs.size()));
  return CoefficientTable(std::move(coeffs));
}

CoefficientTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_table: cannot open " + path.string());
  return load_table(in);
}

}  // namespace wdvv
