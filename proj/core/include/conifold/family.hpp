#pragma once

#include <compare>
#include <complex>
#include <span>
#include <vector>

#include "conifold/polynomial.hpp"

namespace conifold {

/// Integers identifying the blowup of P^n along a linear P^r.
///
/// Only constructible through derive_params / params_from_mk, so every
/// instance satisfies n >= 2, 0 <= r <= n-2, m = n-r-1, k = r+1 and
/// rho = gcd(m, k+1).
class FamilyParams {
 public:
  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  int m() const noexcept { return m_; }
  int k() const noexcept { return k_; }
  /// Fano index.
  int rho() const noexcept { return rho_; }
  /// Degree of the reduced polynomial, (m+1)(k+1).
  int reduced_degree() const noexcept { return (m_ + 1) * (k_ + 1); }

  bool operator==(const FamilyParams&) const = default;
  /// Lexicographic in (m, k).
  std::strong_ordering operator<=>(const FamilyParams& other) const noexcept;

 private:
  friend FamilyParams derive_params(int n, int r);
  FamilyParams(int n, int r);

  int n_ = 0;
  int r_ = 0;
  int m_ = 0;
  int k_ = 0;
  int rho_ = 0;
};

/// Throws Error(Domain) naming the violated bound.
FamilyParams derive_params(int n, int r);
/// Same family addressed by (m, k); requires m >= 1, k >= 1.
FamilyParams params_from_mk(int m, int k);

using IntVector = std::vector<int>;
using ComplexVector = std::vector<std::complex<double>>;

struct LaurentMonomial {
  IntVector exponents;

  bool operator==(const LaurentMonomial&) const = default;
  auto operator<=>(const LaurentMonomial&) const = default;

  /// x^exponents; coordinates must be nonzero where the exponent is negative.
  std::complex<double> operator()(std::span<const std::complex<double>> x) const;
};

/// Sum of unit-coefficient Laurent monomials in `dimension` variables.
struct MirrorPolynomial {
  std::vector<LaurentMonomial> terms;
  int dimension = 0;

  std::complex<double> operator()(std::span<const std::complex<double>> x) const;
  double operator()(std::span<const double> x) const;
};

/// Primitive ray generators e_1..e_n, -(e_1+..+e_n), -(e_1+..+e_{r+1}).
std::vector<IntVector> fan_generators(const FamilyParams& p);

/// x_1 + ... + x_n + 1/(x_1...x_n) + 1/(x_1...x_{r+1}).
MirrorPolynomial build_mirror(const FamilyParams& p);

/// u(x) = x^{m+1}(x^{m+1}+x)^k - 1 in expanded dense form; binomial
/// coefficients are computed in exact integer arithmetic.
DensePolynomial reduced_polynomial(const FamilyParams& p);

/// g(x) = (k+1)x^{m+1} + (k+m+1)x, the critical value attached to a root of u.
std::complex<double> critical_value_g(const FamilyParams& p, std::complex<double> x);
double critical_value_g(const FamilyParams& p, double x);

/// h(x) = (k+1)x^{-(m+1)/k} + m x on x > 0. Throws Error(Domain) otherwise.
double envelope_h(const FamilyParams& p, double x);

/// r0 = ((m+1)(k+1)/(mk))^{k/(m+k+1)}, the minimiser of h.
double radius_bound_r0(const FamilyParams& p);

/// Positive critical point: k copies of r^{m+1}+r followed by m copies of r.
/// Throws Error(Domain) for r_plus <= 0.
std::vector<double> conifold_vector(const FamilyParams& p, double r_plus);

}  // namespace conifold
