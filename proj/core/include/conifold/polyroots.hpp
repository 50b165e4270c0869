#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "conifold/family.hpp"
#include "conifold/polynomial.hpp"

namespace conifold {

enum class Precision {
  Double,    // iteration in double, polish and residuals in long double
  Extended,  // everything at RootConfig::mantissa_bits via MPFR
};

struct RootConfig {
  /// Residual certificate: |u(z)| <= residual_tol * sum|c_i|.
  double residual_tol = 1e-12;
  int max_iters = 500;
  Precision precision = Precision::Double;
  int mantissa_bits = 256;
  /// Run the companion-matrix method alongside and compare.
  bool cross_check = true;
  /// Largest allowed distance between the two methods' roots.
  double cross_check_tol = 1e-8;
  /// |u'(z)| <= derivative_floor * sum|c_i||z|^i flags a multiple-root cluster.
  double derivative_floor = 1e-10;
  /// Rotation of the initial guess circle, in radians.
  double angle_offset = 0.4;

  bool operator==(const RootConfig&) const = default;
};

/// A root approximation with a residual-based error radius.
///
/// error_radius is a bound on the distance to some exact root of the
/// polynomial with the stored coefficients: deg*|u|/|u'| for a simple
/// root, (|u|/|lead|)^{1/deg} when the derivative is too small to trust.
struct CertifiedRoot {
  std::complex<double> value;
  double residual = 0.0;
  double error_radius = 0.0;
  int newton_steps = 0;
  bool multiplicity_cluster = false;

  bool operator==(const CertifiedRoot&) const = default;
};

enum class RootMethod { SimultaneousIteration, CompanionMatrix };

struct RootSet {
  std::vector<CertifiedRoot> roots;  // with multiplicity, sorted by (arg, |z|)
  int polynomial_degree = 0;
  RootMethod method = RootMethod::SimultaneousIteration;
  int iterations = 0;
  /// Max distance between paired roots of the two methods; negative when
  /// the cross-check did not run.
  double method_disagreement = -1.0;

  double max_error_radius() const noexcept;
  double max_residual() const noexcept;
};

/// The unique positive root of u together with a sign-certified bracket.
struct PositiveRoot {
  double r_plus = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int bisection_steps = 0;
  int newton_steps = 0;

  double width() const noexcept { return hi - lo; }
};

/// Bisection on (0,1) followed by bracketed Newton. The returned bracket
/// has u(lo) < 0 < u(hi) certified against the evaluation error bound and
/// width <= 1e-14 * r_plus. When `trace` is given, every bisection bracket
/// is appended to it.
PositiveRoot find_positive_root(const DensePolynomial& u, const FamilyParams& p,
                                std::vector<std::pair<double, double>>* trace = nullptr);

/// All complex roots with multiplicity. Uses Aberth-Ehrlich simultaneous
/// iteration, falls back to companion-matrix eigenvalues when the
/// iteration stalls or its residuals fail, and cross-checks the two when
/// cfg.cross_check is set.
RootSet all_roots(const DensePolynomial& u, const RootConfig& cfg = {});

/// Newton polish of a single approximation with its certificate.
CertifiedRoot polish_root(const DensePolynomial& u, std::complex<double> z0,
                          const RootConfig& cfg = {});

/// Eigenvalues of the companion matrix, unpolished.
std::vector<std::complex<double>> companion_eigenvalues(const DensePolynomial& u);

struct SquareFreeCertificate {
  int gcd_degree = 0;           // degree of gcd(u, u') over Q
  std::uint64_t prime = 0;      // modulus that certified degree 0, or 0
  bool exact_rational = false;  // decided by rational Euclid instead

  bool square_free() const noexcept { return gcd_degree == 0; }
};

/// Degree of gcd(u, u') in exact arithmetic. Requires integer coefficients.
/// A degree-0 gcd modulo a prime not dividing the leading coefficient
/// certifies square-freeness over Q; otherwise falls back to rational
/// Euclid.
SquareFreeCertificate square_free_certificate(const DensePolynomial& u);

}  // namespace conifold
