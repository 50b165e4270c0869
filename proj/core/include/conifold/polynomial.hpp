#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace conifold {

/// Real-coefficient univariate polynomial, constant term first.
///
/// Polynomials built by this library have integer coefficients; the exact
/// integer form is kept alongside the double form so that square-freeness
/// can be decided without rounding.
class DensePolynomial {
 public:
  /// Throws Error(Precondition) when the coefficient list is empty or the
  /// leading coefficient is zero.
  explicit DensePolynomial(std::vector<double> coefficients);
  static DensePolynomial from_integers(std::vector<std::int64_t> coefficients);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  double coefficient(int power) const { return coeffs_.at(power); }
  double leading() const noexcept { return coeffs_.back(); }

  /// Exact integer coefficients, empty when the polynomial was built from
  /// doubles that are not all integers.
  const std::vector<std::int64_t>& integer_coefficients() const noexcept {
    return int_coeffs_;
  }
  bool has_integer_coefficients() const noexcept { return !int_coeffs_.empty(); }

  /// Sum of absolute coefficient values; scales residual tolerances.
  double abs_coefficient_sum() const noexcept;

  double operator()(double x) const noexcept;
  std::complex<double> operator()(std::complex<double> z) const noexcept;

  DensePolynomial derivative() const;

  bool operator==(const DensePolynomial& other) const = default;

 private:
  DensePolynomial() = default;

  std::vector<double> coeffs_;
  std::vector<std::int64_t> int_coeffs_;
};

}  // namespace conifold
