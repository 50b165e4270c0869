#include "conifold/family.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "conifold/errors.hpp"

namespace conifold {

FamilyParams::FamilyParams(int n, int r)
    : n_(n), r_(r), m_(n - r - 1), k_(r + 1), rho_(std::gcd(m_, k_ + 1)) {
  // m | (k+1)d must force m | rho*d for every residue d; a failure here
  // means rho is not the Fano index and nothing downstream can be trusted.
  for (int d = 0; d < m_; ++d) {
    const bool lhs = ((k_ + 1) * d) % m_ == 0;
    const bool rhs = (rho_ * d) % m_ == 0;
    if (lhs && !rhs) {
      throw Error(ErrorKind::InternalConsistency,
                  "Fano index divisibility law fails for m=" + std::to_string(m_) +
                      ", k=" + std::to_string(k_) + ", d=" + std::to_string(d));
    }
  }
}

std::strong_ordering FamilyParams::operator<=>(const FamilyParams& other) const noexcept {
  if (auto c = m_ <=> other.m_; c != 0) return c;
  return k_ <=> other.k_;
}

FamilyParams derive_params(int n, int r) {
  if (n < 2) {
    throw Error(ErrorKind::Domain, "n must be at least 2 (got n=" + std::to_string(n) + ")");
  }
  if (r < 0) {
    throw Error(ErrorKind::Domain, "r must be nonnegative (got r=" + std::to_string(r) + ")");
  }
  if (r > n - 2) {
    throw Error(ErrorKind::Domain, "r must be at most n-2, i.e. m = n-r-1 >= 1 (got n=" +
                                       std::to_string(n) + ", r=" + std::to_string(r) + ")");
  }
  return FamilyParams(n, r);
}

FamilyParams params_from_mk(int m, int k) {
  if (m < 1) throw Error(ErrorKind::Domain, "m must be at least 1 (got m=" + std::to_string(m) + ")");
  if (k < 1) throw Error(ErrorKind::Domain, "k must be at least 1 (got k=" + std::to_string(k) + ")");
  return derive_params(m + k, k - 1);
}

std::complex<double> LaurentMonomial::operator()(std::span<const std::complex<double>> x) const {
  std::complex<double> acc = 1.0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const int e = exponents[i];
    if (e > 0) {
      for (int t = 0; t < e; ++t) acc *= x[i];
    } else if (e < 0) {
      for (int t = 0; t < -e; ++t) acc /= x[i];
    }
  }
  return acc;
}

std::complex<double> MirrorPolynomial::operator()(std::span<const std::complex<double>> x) const {
  std::complex<double> acc = 0.0;
  for (const auto& term : terms) acc += term(x);
  return acc;
}

double MirrorPolynomial::operator()(std::span<const double> x) const {
  ComplexVector z(x.begin(), x.end());
  return (*this)(std::span<const std::complex<double>>(z)).real();
}

std::vector<IntVector> fan_generators(const FamilyParams& p) {
  const int n = p.n();
  std::vector<IntVector> gens;
  gens.reserve(n + 2);
  for (int i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  gens.emplace_back(n, -1);
  IntVector partial(n, 0);
  for (int i = 0; i < p.k(); ++i) partial[i] = -1;
  gens.push_back(std::move(partial));
  return gens;
}

MirrorPolynomial build_mirror(const FamilyParams& p) {
  MirrorPolynomial f;
  f.dimension = p.n();
  for (auto& g : fan_generators(p)) f.terms.push_back(LaurentMonomial{std::move(g)});
  return f;
}

DensePolynomial reduced_polynomial(const FamilyParams& p) {
  const int m = p.m();
  const int k = p.k();
  if (k > 50) {
    throw Error(ErrorKind::Config, "k > 50: binomial coefficients no longer exact in double precision");
  }
  // u(x) = sum_j C(k,j) x^{m+k+1+mj} - 1
  std::vector<std::int64_t> coeffs(p.reduced_degree() + 1, 0);
  coeffs[0] = -1;
  std::int64_t binom = 1;
  for (int j = 0; j <= k; ++j) {
    coeffs[m + k + 1 + m * j] += binom;
    binom = binom * (k - j) / (j + 1);
  }
  return DensePolynomial::from_integers(std::move(coeffs));
}

std::complex<double> critical_value_g(const FamilyParams& p, std::complex<double> x) {
  std::complex<double> pw = 1.0;
  for (int i = 0; i <= p.m(); ++i) pw *= x;
  return static_cast<double>(p.k() + 1) * pw + static_cast<double>(p.k() + p.m() + 1) * x;
}

double critical_value_g(const FamilyParams& p, double x) {
  return (p.k() + 1) * std::pow(x, p.m() + 1) + (p.k() + p.m() + 1) * x;
}

double envelope_h(const FamilyParams& p, double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorKind::Domain, "envelope h is defined only for x > 0");
  }
  const double expo = -static_cast<double>(p.m() + 1) / p.k();
  return (p.k() + 1) * std::pow(x, expo) + p.m() * x;
}

double radius_bound_r0(const FamilyParams& p) {
  const double m = p.m();
  const double k = p.k();
  return std::pow((m + 1) * (k + 1) / (m * k), k / (m + k + 1));
}

std::vector<double> conifold_vector(const FamilyParams& p, double r_plus) {
  if (!(r_plus > 0.0)) {
    throw Error(ErrorKind::Domain, "conifold vector requires r_plus > 0");
  }
  std::vector<double> x(p.n(), r_plus);
  const double first = std::pow(r_plus, p.m() + 1) + r_plus;
  for (int i = 0; i < p.k(); ++i) x[i] = first;
  return x;
}

}  // namespace conifold
