#include "conifold/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <fmt/format.h>

#include "conifold/errors.hpp"
#include "scalar.hpp"

namespace conifold {

using detail::Cx;
using detail::horner;
using detail::modulus;
using detail::MpReal;
using detail::unit_roundoff;

double RootSet::max_error_radius() const noexcept {
  double m = 0.0;
  for (const auto& r : roots) m = std::max(m, r.error_radius);
  return m;
}

double RootSet::max_residual() const noexcept {
  double m = 0.0;
  for (const auto& r : roots) m = std::max(m, r.residual);
  return m;
}

namespace {

// MPFR default precision is process-global in this boost version, so every
// extended-precision computation holds this lock for its whole lifetime.
std::mutex& extended_mutex() {
  static std::mutex mu;
  return mu;
}

class ExtendedPrecisionScope {
 public:
  explicit ExtendedPrecisionScope(int mantissa_bits)
      : lock_(extended_mutex()), saved_(MpReal::default_precision()) {
    const auto digits10 =
        static_cast<unsigned>(std::ceil(mantissa_bits * 0.30102999566398120)) + 1;
    MpReal::default_precision(digits10);
  }
  ~ExtendedPrecisionScope() { MpReal::default_precision(saved_); }
  ExtendedPrecisionScope(const ExtendedPrecisionScope&) = delete;
  ExtendedPrecisionScope& operator=(const ExtendedPrecisionScope&) = delete;

 private:
  std::scoped_lock<std::mutex> lock_;
  unsigned saved_;
};

template <class R>
std::vector<R> to_working(std::span<const double> c) {
  return std::vector<R>(c.begin(), c.end());
}

struct AberthOutcome {
  std::vector<std::complex<double>> roots;
  bool converged = false;
  int iterations = 0;
};

template <class R>
AberthOutcome aberth(std::span<const double> coeffs, const RootConfig& cfg) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  const std::vector<R> c = to_working<R>(coeffs);

  double radius = 1.0;
  if (coeffs[0] != 0.0) radius = std::pow(std::fabs(coeffs[0] / coeffs[n]), 1.0 / n);
  std::vector<Cx<R>> z;
  z.reserve(n);
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n + cfg.angle_offset;
    z.emplace_back(std::polar(radius, theta));
  }

  const R eps = unit_roundoff<R>();
  const Cx<R> one{R(1), R(0)};
  std::vector<char> done(n, 0);
  AberthOutcome out;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    out.iterations = iter;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      auto h = horner<R>(c, z[i]);
      if (modulus(h.value) <= h.value_bound) {
        done[i] = 1;
        continue;
      }
      if (detail::norm2(h.derivative) == R(0)) {
        // stationary point of u: nudge off it and retry next sweep
        z[i] = z[i] * Cx<R>{R(1) + R(1e-3), R(1e-3)};
        continue;
      }
      const Cx<R> newton = h.value / h.derivative;
      Cx<R> repulsion{R(0), R(0)};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const Cx<R> diff = z[i] - z[j];
        if (detail::norm2(diff) == R(0)) continue;
        repulsion = repulsion + one / diff;
      }
      const Cx<R> step = newton / (one - newton * repulsion);
      z[i] = z[i] - step;
      if (modulus(step) <= R(2) * eps * modulus(z[i])) done[i] = 1;
    }
    if (std::all_of(done.begin(), done.end(), [](char d) { return d != 0; })) {
      out.converged = true;
      break;
    }
  }
  out.roots.reserve(n);
  for (const auto& zi : z) out.roots.push_back(zi.to_double());
  return out;
}

template <class R>
CertifiedRoot certify(const std::vector<R>& c, std::complex<double> zd, int steps,
                      const RootConfig& cfg) {
  const int n = static_cast<int>(c.size()) - 1;
  using std::abs;
  using std::pow;
  const auto h = horner<R>(c, Cx<R>(zd));
  const R value_mod = modulus(h.value);
  const R upper = value_mod + h.value_bound;
  const R deriv_low = modulus(h.derivative) - h.derivative_bound;

  CertifiedRoot root;
  root.value = zd;
  root.residual = static_cast<double>(value_mod);
  root.newton_steps = steps;
  if (deriv_low > R(cfg.derivative_floor) * h.abs_sum) {
    root.error_radius = static_cast<double>(R(n) * upper / deriv_low);
  } else {
    // product of distances to the roots equals |u(z)/lead|
    const double ratio = static_cast<double>(upper / abs(c[n]));
    root.error_radius = std::pow(ratio, 1.0 / n);
    root.multiplicity_cluster = true;
  }
  return root;
}

template <class R>
CertifiedRoot polish_impl(std::span<const double> coeffs, std::complex<double> z0,
                          const RootConfig& cfg) {
  const std::vector<R> c = to_working<R>(coeffs);
  const R eps = unit_roundoff<R>();
  Cx<R> z(z0);
  int steps = 0;
  for (int it = 0; it < 60; ++it) {
    const auto h = horner<R>(c, z);
    if (modulus(h.value) == R(0)) break;
    if (modulus(h.derivative) <= R(cfg.derivative_floor) * h.abs_sum) break;
    const Cx<R> dz = h.value / h.derivative;
    z = z - dz;
    ++steps;
    if (modulus(dz) <= R(4) * eps * modulus(z)) break;
  }
  return certify<R>(c, z.to_double(), steps, cfg);
}

CertifiedRoot polish_dispatch(const DensePolynomial& u, std::complex<double> z0,
                              const RootConfig& cfg) {
  if (cfg.precision == Precision::Extended) {
    return polish_impl<MpReal>(u.coefficients(), z0, cfg);
  }
  return polish_impl<long double>(u.coefficients(), z0, cfg);
}

std::complex<double> canonical(std::complex<double> z) {
  // +0.0 imaginary part so real negative roots sort at arg = pi
  if (z.imag() == 0.0) return {z.real(), 0.0};
  return z;
}

// A near-real root whose widened disc around its real part is disjoint from
// every other root disc contains exactly one root, which must therefore be
// real (its conjugate lies in the same disc).
void snap_real_roots(const DensePolynomial& u, std::vector<CertifiedRoot>& roots,
                     const RootConfig& cfg) {
  const std::size_t n = roots.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto& ri = roots[i];
    if (ri.value.imag() == 0.0 || std::fabs(ri.value.imag()) > ri.error_radius) continue;
    const std::complex<double> center(ri.value.real(), 0.0);
    const double widened = ri.error_radius + std::fabs(ri.value.imag());
    bool isolated = true;
    for (std::size_t j = 0; j < n && isolated; ++j) {
      if (j == i) continue;
      if (std::abs(center - roots[j].value) <= widened + roots[j].error_radius) isolated = false;
    }
    if (!isolated) continue;
    const int prior_steps = ri.newton_steps;
    ri = polish_dispatch(u, center, cfg);
    ri.newton_steps += prior_steps;
  }
}

void flag_clusters(std::vector<CertifiedRoot>& roots) {
  double max_radius = 0.0;
  for (const auto& r : roots) max_radius = std::max(max_radius, r.error_radius);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i].value - roots[j].value) <= 2.0 * max_radius) {
        roots[i].multiplicity_cluster = true;
        roots[j].multiplicity_cluster = true;
      }
    }
  }
}

// Greedy minimum-distance pairing; returns the largest paired distance.
double pairing_distance(const std::vector<CertifiedRoot>& a, const std::vector<CertifiedRoot>& b) {
  struct Edge {
    double dist;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Edge> edges;
  edges.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      edges.push_back({std::abs(a[i].value - b[j].value), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    if (x.dist != y.dist) return x.dist < y.dist;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  });
  std::vector<char> used_a(a.size(), 0);
  std::vector<char> used_b(b.size(), 0);
  double worst = 0.0;
  std::size_t matched = 0;
  for (const auto& e : edges) {
    if (used_a[e.i] || used_b[e.j]) continue;
    used_a[e.i] = used_b[e.j] = 1;
    worst = std::max(worst, e.dist);
    if (++matched == std::min(a.size(), b.size())) break;
  }
  return worst;
}

std::vector<CertifiedRoot> polish_all(const DensePolynomial& u,
                                      const std::vector<std::complex<double>>& approx,
                                      const RootConfig& cfg) {
  std::vector<CertifiedRoot> out;
  out.reserve(approx.size());
  for (const auto& z : approx) out.push_back(polish_dispatch(u, z, cfg));
  snap_real_roots(u, out, cfg);
  for (auto& r : out) r.value = canonical(r.value);
  return out;
}

double worst_residual(const std::vector<CertifiedRoot>& roots) {
  double w = 0.0;
  for (const auto& r : roots) w = std::max(w, r.residual);
  return w;
}

bool residuals_ok(const std::vector<CertifiedRoot>& roots, double limit) {
  return std::all_of(roots.begin(), roots.end(), [&](const CertifiedRoot& r) {
    return r.residual <= limit && std::isfinite(r.error_radius);
  });
}

}  // namespace

std::vector<std::complex<double>> companion_eigenvalues(const DensePolynomial& u) {
  const int n = u.degree();
  if (n < 1) throw Error(ErrorKind::Precondition, "companion matrix needs degree >= 1");
  const auto c = u.coefficients();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "companion-matrix eigenvalue solver did not converge");
  }
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

CertifiedRoot polish_root(const DensePolynomial& u, std::complex<double> z0,
                          const RootConfig& cfg) {
  if (u.degree() < 1) throw Error(ErrorKind::Precondition, "polish_root needs degree >= 1");
  if (cfg.precision == Precision::Extended) {
    ExtendedPrecisionScope scope(cfg.mantissa_bits);
    return polish_dispatch(u, z0, cfg);
  }
  return polish_dispatch(u, z0, cfg);
}

RootSet all_roots(const DensePolynomial& u, const RootConfig& cfg) {
  const int n = u.degree();
  if (n < 1) throw Error(ErrorKind::Precondition, "all_roots needs degree >= 1");

  std::optional<ExtendedPrecisionScope> scope;
  if (cfg.precision == Precision::Extended) scope.emplace(cfg.mantissa_bits);

  const double limit = cfg.residual_tol * u.abs_coefficient_sum();
  AberthOutcome primary = cfg.precision == Precision::Extended
                              ? aberth<MpReal>(u.coefficients(), cfg)
                              : aberth<double>(u.coefficients(), cfg);

  RootSet set;
  set.polynomial_degree = n;
  set.iterations = primary.iterations;

  std::vector<CertifiedRoot> aberth_roots;
  bool aberth_ok = false;
  if (primary.converged) {
    aberth_roots = polish_all(u, primary.roots, cfg);
    aberth_ok = residuals_ok(aberth_roots, limit);
  }

  std::vector<CertifiedRoot> companion_roots;
  const bool need_companion = cfg.cross_check || !aberth_ok;
  if (need_companion) {
    companion_roots = polish_all(u, companion_eigenvalues(u), cfg);
  }

  if (aberth_ok) {
    set.method = RootMethod::SimultaneousIteration;
    set.roots = std::move(aberth_roots);
    if (cfg.cross_check) {
      set.method_disagreement = pairing_distance(set.roots, companion_roots);
      if (set.method_disagreement > cfg.cross_check_tol) {
        throw Error(ErrorKind::Numerical,
                    fmt::format("simultaneous iteration and companion matrix disagree by {:.3e} "
                                "(tolerance {:.1e})",
                                set.method_disagreement, cfg.cross_check_tol));
      }
    }
  } else {
    if (!residuals_ok(companion_roots, limit)) {
      const double worst = std::max(worst_residual(companion_roots),
                                    aberth_roots.empty() ? 0.0 : worst_residual(aberth_roots));
      throw Error(ErrorKind::Numerical,
                  fmt::format("no root method reached residual {:.3e} within {} iterations",
                              limit, cfg.max_iters))
          .with_residual(worst);
    }
    set.method = RootMethod::CompanionMatrix;
    set.roots = std::move(companion_roots);
  }

  flag_clusters(set.roots);
  std::sort(set.roots.begin(), set.roots.end(), [](const CertifiedRoot& a, const CertifiedRoot& b) {
    const double aa = std::arg(a.value);
    const double ab = std::arg(b.value);
    if (aa != ab) return aa < ab;
    return std::abs(a.value) < std::abs(b.value);
  });
  return set;
}

PositiveRoot find_positive_root(const DensePolynomial& u, const FamilyParams& p,
                                std::vector<std::pair<double, double>>* trace) {
  const auto& ic = u.integer_coefficients();
  if (ic.empty() || u.degree() != p.reduced_degree()) {
    throw Error(ErrorKind::InternalConsistency,
                "reduced polynomial has the wrong shape for this family");
  }
  std::int64_t at_one = 0;
  for (auto c : ic) at_one += c;
  const std::int64_t expected_at_one = (std::int64_t{1} << p.k()) - 1;
  if (!(ic[0] < 0 && at_one > 0) || ic[0] != -1 || at_one != expected_at_one) {
    throw Error(ErrorKind::InternalConsistency,
                fmt::format("no sign change of u on (0,1): u(0)={}, u(1)={} (expected -1, {})",
                            ic[0], at_one, expected_at_one));
  }

  const std::vector<long double> c = to_working<long double>(u.coefficients());
  auto eval = [&](long double x) { return horner<long double>(c, Cx<long double>{x, 0.0L}); };

  PositiveRoot out;
  long double lo = 0.0L;
  long double hi = 1.0L;
  constexpr long double kBisectionWidth = 1e-8L;
  while (hi - lo > kBisectionWidth) {
    const long double mid = lo + (hi - lo) / 2;
    const auto h = eval(mid);
    ++out.bisection_steps;
    if (std::fabs(h.value.re) <= h.value_bound) {
      // sign undecidable at this point: mid sits on the root to working accuracy
      lo = hi = mid;
      if (trace) trace->emplace_back(static_cast<double>(lo), static_cast<double>(hi));
      break;
    }
    if (h.value.re < 0) lo = mid;
    else hi = mid;
    if (trace) trace->emplace_back(static_cast<double>(lo), static_cast<double>(hi));
  }

  // Newton inside the bracket; a step leaving it falls back to bisection.
  long double x = lo + (hi - lo) / 2;
  for (int it = 0; it < 50; ++it) {
    const auto h = eval(x);
    if (h.value.re == 0.0L || h.derivative.re <= 0.0L) break;
    long double next = x - h.value.re / h.derivative.re;
    if (lo < hi && (next <= lo || next >= hi)) next = lo + (hi - lo) / 2;
    ++out.newton_steps;
    const long double step = std::fabs(next - x);
    if (h.value.re < 0) lo = std::max(lo, x);
    else hi = std::min(hi, x);
    x = next;
    if (step <= 4 * std::numeric_limits<long double>::epsilon() * x) break;
  }

  const double r = static_cast<double>(x);
  // Certify a tight bracket around the double-rounded root.
  for (double rel = 1e-15; rel <= 4.0001e-15; rel *= 2) {
    const double blo = r - rel * r;
    const double bhi = r + rel * r;
    const auto hl = eval(blo);
    const auto hh = eval(bhi);
    if (hl.value.re < -hl.value_bound && hh.value.re > hh.value_bound &&
        hl.derivative.re > hl.derivative_bound) {
      out.r_plus = r;
      out.lo = blo;
      out.hi = bhi;
      return out;
    }
  }
  throw Error(ErrorKind::Numerical,
              fmt::format("could not certify a bracket of relative width 1e-14 around r_plus={:.17g}", r));
}

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 base, u64 e, u64 p) {
  u64 r = 1;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

std::vector<u64> reduce_mod(const std::vector<std::int64_t>& c, u64 p) {
  std::vector<u64> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto sp = static_cast<std::int64_t>(p);
    std::int64_t v = c[i] % sp;
    if (v < 0) v += sp;
    out[i] = static_cast<u64>(v);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// a mod b over Z_p; b nonempty with nonzero leading coefficient.
std::vector<u64> rem_mod(std::vector<u64> a, const std::vector<u64>& b, u64 p) {
  const u64 inv_lead = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const u64 factor = mulmod(a.back(), inv_lead, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const u64 sub = mulmod(factor, b[i], p);
      a[i + shift] = (a[i + shift] + p - sub) % p;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

int gcd_degree_mod(const std::vector<std::int64_t>& f, const std::vector<std::int64_t>& g, u64 p) {
  auto a = reduce_mod(f, p);
  auto b = reduce_mod(g, p);
  while (!b.empty()) {
    auto r = rem_mod(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return static_cast<int>(a.size()) - 1;
}

int gcd_degree_rational(const std::vector<std::int64_t>& f, const std::vector<std::int64_t>& g) {
  using Q = boost::multiprecision::mpq_rational;
  auto load = [](const std::vector<std::int64_t>& c) {
    std::vector<Q> out(c.begin(), c.end());
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  };
  auto a = load(f);
  auto b = load(g);
  while (!b.empty()) {
    // make b monic to keep the remainder sequence small
    const Q lead = b.back();
    for (auto& x : b) x /= lead;
    while (a.size() >= b.size()) {
      const Q factor = a.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
      a.pop_back();
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace

SquareFreeCertificate square_free_certificate(const DensePolynomial& u) {
  if (!u.has_integer_coefficients()) {
    throw Error(ErrorKind::Precondition, "square-freeness check needs integer coefficients");
  }
  if (u.degree() < 1) return {0, 0, false};
  const auto& f = u.integer_coefficients();
  const DensePolynomial du = u.derivative();
  const auto& g = du.integer_coefficients();
  static constexpr u64 kPrimes[] = {2305843009213693951ULL, 4611686018427387847ULL,
                                    1000000000000000003ULL, 1000000000000000009ULL};
  for (u64 p : kPrimes) {
    const auto sp = static_cast<std::int64_t>(p);
    if (f.back() % sp == 0 || g.back() % sp == 0) continue;
    if (gcd_degree_mod(f, g, p) == 0) return {0, p, false};
  }
  return {gcd_degree_rational(f, g), 0, true};
}

}  // namespace conifold
