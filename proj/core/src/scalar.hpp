#pragma once

// Minimal complex arithmetic over an arbitrary real field type. std::complex
// is only specified for float, double and long double, and the extended
// precision path runs on MPFR values.

#include <cmath>
#include <complex>
#include <limits>
#include <span>

#include <boost/multiprecision/mpfr.hpp>

namespace conifold::detail {

using MpReal = boost::multiprecision::mpfr_float;

template <class R>
struct Cx {
  R re{};
  R im{};

  Cx() = default;
  Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
  explicit Cx(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_double() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

template <class R> Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R> Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R> Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R> Cx<R> operator*(const R& s, const Cx<R>& a) { return {s * a.re, s * a.im}; }
template <class R> Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  using std::abs;
  if (abs(b.re) >= abs(b.im)) {
    R t = b.im / b.re;
    R den = b.re + b.im * t;
    return {(a.re + a.im * t) / den, (a.im - a.re * t) / den};
  }
  R t = b.re / b.im;
  R den = b.re * t + b.im;
  return {(a.re * t + a.im) / den, (a.im * t - a.re) / den};
}

template <class R> R norm2(const Cx<R>& a) { return a.re * a.re + a.im * a.im; }
template <class R> R modulus(const Cx<R>& a) {
  using std::sqrt;
  return sqrt(norm2(a));
}

/// Unit roundoff of the working type.
template <class R> R unit_roundoff() {
  if constexpr (std::is_same_v<R, MpReal>) {
    const unsigned digits = MpReal::default_precision();
    // digits10 -> mantissa bits, matching boost's conversion
    const long bits = static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 1;
    return boost::multiprecision::ldexp(MpReal(1), static_cast<int>(-bits));
  } else {
    return std::numeric_limits<R>::epsilon() / 2;
  }
}

/// Horner evaluation of p and p' with a first-order running error bound.
template <class R>
struct HornerResult {
  Cx<R> value;
  Cx<R> derivative;
  R value_bound;       // |computed p - exact p| bound
  R derivative_bound;  // |computed p' - exact p'| bound
  R abs_sum;           // sum |c_i| |z|^i
};

template <class R>
HornerResult<R> horner(std::span<const R> coeffs, const Cx<R>& z) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  using std::abs;
  const R az = modulus(z);
  Cx<R> p{coeffs[n], R(0)};
  Cx<R> dp{R(0), R(0)};
  R abs_sum = abs(coeffs[n]);
  R dabs_sum = R(0);
  for (int i = n - 1; i >= 0; --i) {
    dp = dp * z + p;
    p = p * z + Cx<R>{coeffs[i], R(0)};
    dabs_sum = dabs_sum * az + abs_sum;
    abs_sum = abs_sum * az + abs(coeffs[i]);
  }
  // Complex Horner: each step costs one complex multiply-add, error
  // bounded by gamma_{4n} times the absolute-value polynomial.
  const R u = unit_roundoff<R>();
  const R gamma = R(4 * n + 4) * u / (R(1) - R(4 * n + 4) * u);
  return {p, dp, gamma * abs_sum, gamma * R(2) * dabs_sum, abs_sum};
}

}  // namespace conifold::detail
