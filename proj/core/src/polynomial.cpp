#include "conifold/polynomial.hpp"

#include <cmath>

#include "conifold/errors.hpp"

namespace conifold {

namespace {

void check_leading(const std::vector<double>& coeffs) {
  if (coeffs.empty()) {
    throw Error(ErrorKind::Precondition, "polynomial needs at least one coefficient");
  }
  if (coeffs.back() == 0.0) {
    throw Error(ErrorKind::Precondition, "leading coefficient must be nonzero");
  }
}

}  // namespace

DensePolynomial::DensePolynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  check_leading(coeffs_);
  bool integral = true;
  for (double c : coeffs_) {
    if (c != std::nearbyint(c) || std::fabs(c) > 9.0e15) {
      integral = false;
      break;
    }
  }
  if (integral) {
    int_coeffs_.reserve(coeffs_.size());
    for (double c : coeffs_) int_coeffs_.push_back(static_cast<std::int64_t>(c));
  }
}

DensePolynomial DensePolynomial::from_integers(std::vector<std::int64_t> coefficients) {
  DensePolynomial p;
  p.coeffs_.reserve(coefficients.size());
  for (std::int64_t c : coefficients) p.coeffs_.push_back(static_cast<double>(c));
  check_leading(p.coeffs_);
  p.int_coeffs_ = std::move(coefficients);
  return p;
}

double DensePolynomial::abs_coefficient_sum() const noexcept {
  double s = 0.0;
  for (double c : coeffs_) s += std::fabs(c);
  return s;
}

double DensePolynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> DensePolynomial::operator()(std::complex<double> z) const noexcept {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

DensePolynomial DensePolynomial::derivative() const {
  if (degree() < 1) {
    throw Error(ErrorKind::Precondition, "derivative of a constant has no leading term");
  }
  DensePolynomial d;
  d.coeffs_.resize(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d.coeffs_[i - 1] = static_cast<double>(i) * coeffs_[i];
  }
  if (!int_coeffs_.empty()) {
    d.int_coeffs_.resize(int_coeffs_.size() - 1);
    for (std::size_t i = 1; i < int_coeffs_.size(); ++i) {
      d.int_coeffs_[i - 1] = static_cast<std::int64_t>(i) * int_coeffs_[i];
    }
  }
  return d;
}

}  // namespace conifold
