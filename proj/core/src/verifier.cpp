#include "conifold/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "conifold/errors.hpp"

namespace conifold {

std::string to_string(CaseId id) {
  switch (id) {
    case CaseId::I: return "I";
    case CaseId::II: return "II";
    case CaseId::III: return "III";
    case CaseId::IV: return "IV";
  }
  return "?";
}

CaseId applicable_case(int m, int k) {
  if (m < 1 || k < 1) {
    throw Error(ErrorKind::Domain, fmt::format("case split needs m, k >= 1 (got m={}, k={})", m, k));
  }
  if (k == 1) return CaseId::IV;
  if (m == 1) return CaseId::III;
  if (m == 2 && k == 2) return CaseId::II;
  return CaseId::I;  // (m-1)(k-1) >= 2
}

std::vector<int> equality_classes(const FamilyParams& p) {
  std::vector<int> out;
  for (int d = 0; d < p.m(); ++d) {
    if (((p.k() + 1) * d) % p.m() == 0) out.push_back(d);
  }
  return out;
}

namespace {

std::complex<double> root_of_unity(int d, int m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * d / m);
}

int circle_class(std::complex<double> alpha, int m) {
  const double turns = m * std::arg(alpha) / (2.0 * std::numbers::pi);
  const long d = std::lround(turns);
  return static_cast<int>(((d % m) + m) % m);
}

double conifold_value(const FamilyParams& p, const PositiveRoot& r_plus) {
  return critical_value_g(p, r_plus.r_plus);
}

// u'(x) from the factored form; positive on (0, inf).
double reduced_derivative(const FamilyParams& p, double x) {
  const int m = p.m();
  const int k = p.k();
  const double xm = std::pow(x, m);
  const double inner = xm * x + x;
  return (m + 1) * xm * std::pow(inner, k) +
         k * xm * x * std::pow(inner, k - 1) * ((m + 1) * xm + 1.0);
}

}  // namespace

std::vector<CriticalDatum> classify_spectrum(const FamilyParams& p, const RootSet& roots,
                                             const PositiveRoot& r_plus, const Tolerances& tol) {
  if (static_cast<int>(roots.roots.size()) != p.reduced_degree()) {
    throw Error(ErrorKind::Precondition,
                fmt::format("root set has {} roots, expected deg u = {}", roots.roots.size(),
                            p.reduced_degree()));
  }
  const double rp = r_plus.r_plus;
  const double t_con = conifold_value(p, r_plus);
  const int m = p.m();

  std::vector<CriticalDatum> data;
  data.reserve(roots.roots.size());
  for (const auto& root : roots.roots) {
    CriticalDatum datum;
    datum.alpha = root.value;
    datum.critical_value = critical_value_g(p, root.value);
    datum.modulus_value = std::abs(datum.critical_value);
    datum.modulus_root = std::abs(root.value);
    datum.on_circle = std::fabs(datum.modulus_root - rp) <= tol.circle_tol * rp;
    if (datum.on_circle) {
      const int d = circle_class(root.value, m);
      const std::complex<double> zeta = root_of_unity(d, m);
      const double recon = std::abs(root.value - zeta * rp);
      if (recon > tol.recon_tol * rp) {
        throw Error(ErrorKind::TheoremViolation,
                    fmt::format("on-circle root is not zeta_{}^{} r+ (distance {:.3e})", m, d, recon))
            .with_root(root.value);
      }
      if (((p.k() + 1) * d) % m != 0) {
        throw Error(ErrorKind::TheoremViolation,
                    fmt::format("on-circle root has d={} but {} does not divide {}", d, m,
                                (p.k() + 1) * d))
            .with_root(root.value);
      }
      const double value_gap = std::abs(datum.critical_value - zeta * t_con);
      if (value_gap > tol.match_tol * t_con) {
        throw Error(ErrorKind::TheoremViolation,
                    fmt::format("critical value of on-circle root d={} is {:.3e} away from "
                                "zeta_m^d T_con",
                                d, value_gap))
            .with_root(root.value);
      }
      datum.equality_class_d = d;
    }
    data.push_back(datum);
  }
  return data;
}

ConditionReport check_conditions(const FamilyParams& p, const std::vector<CriticalDatum>& data,
                                 const PositiveRoot& r_plus, const Tolerances& tol,
                                 FailurePolicy policy) {
  if (static_cast<int>(data.size()) != p.reduced_degree()) {
    throw Error(ErrorKind::Precondition,
                fmt::format("spectrum has {} entries, expected deg u = {}", data.size(),
                            p.reduced_degree()));
  }
  ConditionReport rep;
  const double t = conifold_value(p, r_plus);
  rep.t_con = t;
  rep.predicted_circle_count = std::gcd(p.m(), p.k() + 1);

  auto fail = [&](bool& flag, const CriticalDatum* offending, std::string msg) {
    flag = false;
    if (policy == FailurePolicy::Throw) {
      Error err(ErrorKind::VerificationFailure, msg);
      if (offending) err.with_root(offending->alpha);
      throw err;
    }
    if (offending) {
      msg += fmt::format(" [root {:.17g}{:+.17g}i]", offending->alpha.real(), offending->alpha.imag());
    }
    rep.diagnostics.push_back(std::move(msg));
  };

  // The conifold root is the d = 0 circle root; it should be r+ itself.
  const CriticalDatum* conifold = nullptr;
  int identity_roots = 0;
  for (const auto& d : data) {
    if (d.on_circle) ++rep.circle_count;
    if (d.on_circle && d.equality_class_d == 0) {
      ++identity_roots;
      if (!conifold || std::abs(d.alpha - r_plus.r_plus) < std::abs(conifold->alpha - r_plus.r_plus)) {
        conifold = &d;
      }
    }
  }

  // (1) every critical value lies in the closed disc of radius T_con
  rep.cond1_pass = true;
  double other_max = 0.0;
  bool other_on_circle = false;
  for (const auto& d : data) {
    if (d.modulus_value > t * (1.0 + tol.slack_tol)) {
      fail(rep.cond1_pass, &d,
           fmt::format("cond1: |g(alpha)| = {:.17g} exceeds T_con = {:.17g}", d.modulus_value, t));
    }
    if (&d == conifold) continue;
    other_max = std::max(other_max, d.modulus_value);
    if (d.on_circle) other_on_circle = true;
  }
  rep.cond1_margin = rep.cond1_pass ? (other_on_circle ? 0.0 : std::max(0.0, t - other_max)) : 0.0;

  // (2) the conifold point is the only critical point over T_con
  rep.cond2_pass = true;
  if (!(reduced_derivative(p, r_plus.r_plus) > 0.0)) {
    fail(rep.cond2_pass, conifold, "cond2: u'(r+) is not positive, r+ is not a simple root");
  }
  if (identity_roots != 1) {
    fail(rep.cond2_pass, conifold,
         fmt::format("cond2: {} roots classify as r+ itself, expected exactly 1", identity_roots));
  }
  for (const auto& d : data) {
    if (&d == conifold) continue;
    const double gap = std::abs(d.critical_value - t);
    if (gap <= tol.match_tol * t) {
      const int cls = d.equality_class_d.value_or(-1);
      fail(rep.cond2_pass, &d,
           fmt::format("cond2: a second root (circle class {}) maps to T_con within {:.3e}", cls, gap));
    }
  }

  // (3) every critical value of maximal modulus is a rho-th root of unity times T_con
  rep.cond3_pass = true;
  const int rho = p.rho();
  for (const auto& d : data) {
    if (d.modulus_value < t * (1.0 - tol.match_tol)) continue;
    if (!d.on_circle || !d.equality_class_d) {
      fail(rep.cond3_pass, &d, "cond3: maximal-modulus critical value from an off-circle root");
      continue;
    }
    const std::complex<double> zeta = d.critical_value / t;
    std::complex<double> power = 1.0;
    for (int i = 0; i < rho; ++i) power *= zeta;
    const double gap = std::abs(power - 1.0);
    if (gap > tol.match_tol * rho) {
      fail(rep.cond3_pass, &d, fmt::format("cond3: (g/T_con)^rho is {:.3e} away from 1", gap));
    }
    if ((rho * *d.equality_class_d) % p.m() != 0) {
      fail(rep.cond3_pass, &d,
           fmt::format("cond3: m={} does not divide rho*d = {}", p.m(), rho * *d.equality_class_d));
    }
  }

  if (!rep.circle_law_pass()) {
    bool dummy = true;
    fail(dummy, nullptr,
         fmt::format("circle count {} differs from gcd(m, k+1) = {}", rep.circle_count,
                     rep.predicted_circle_count));
  }
  return rep;
}

LemmaMargins verify_lemma_bounds(const FamilyParams& p, const std::vector<CriticalDatum>& data,
                                 const PositiveRoot& r_plus, double r0, const Tolerances& tol) {
  if (static_cast<int>(data.size()) != p.reduced_degree()) {
    throw Error(ErrorKind::Precondition,
                fmt::format("spectrum has {} entries, expected deg u = {}", data.size(),
                            p.reduced_degree()));
  }
  const double rp = r_plus.r_plus;
  const double t = conifold_value(p, r_plus);
  const double h_rp = envelope_h(p, rp);
  const double abs_tol = tol.abs_tol * t;

  LemmaMargins out;
  out.min_modulus = std::numeric_limits<double>::infinity();
  out.envelope_gap = -std::numeric_limits<double>::infinity();
  out.envelope_monotone_gap = -std::numeric_limits<double>::infinity();
  for (const auto& d : data) {
    if (d.modulus_root < rp * (1.0 - tol.lower_bound_tol)) {
      throw Error(ErrorKind::LemmaViolation,
                  fmt::format("|alpha| = {:.17g} below r+ = {:.17g}", d.modulus_root, rp))
          .with_root(d.alpha);
    }
    if (!(d.modulus_root < r0)) {
      throw Error(ErrorKind::LemmaViolation,
                  fmt::format("|alpha| = {:.17g} not below r0 = {:.17g}", d.modulus_root, r0))
          .with_root(d.alpha);
    }
    const double h_alpha = envelope_h(p, d.modulus_root);
    const double gap = d.modulus_value - h_alpha;
    const double mono = h_alpha - h_rp;
    if (gap > abs_tol) {
      throw Error(ErrorKind::LemmaViolation,
                  fmt::format("|g(alpha)| exceeds h(|alpha|) by {:.3e}", gap))
          .with_root(d.alpha);
    }
    if (mono > abs_tol) {
      throw Error(ErrorKind::LemmaViolation,
                  fmt::format("h(|alpha|) exceeds h(r+) by {:.3e}", mono))
          .with_root(d.alpha);
    }
    out.min_modulus = std::min(out.min_modulus, d.modulus_root);
    out.max_modulus = std::max(out.max_modulus, d.modulus_root);
    out.envelope_gap = std::max(out.envelope_gap, gap);
    out.envelope_monotone_gap = std::max(out.envelope_monotone_gap, mono);
  }
  out.lower = out.min_modulus - rp;
  out.upper = r0 - out.max_modulus;
  return out;
}

namespace {

// Plain bisection for an increasing function with f(lo) < 0 < f(hi).
template <class F>
double bisect_increasing(F f, double lo, double hi) {
  while (hi - lo > 1e-15 * hi) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return lo + (hi - lo) / 2;
}

}  // namespace

CaseReport verify_case_inequalities(const FamilyParams& p) {
  const double m = p.m();
  const double k = p.k();
  CaseReport rep;
  rep.case_id = applicable_case(p.m(), p.k());

  if (rep.case_id == CaseId::IV) {
    // k = 1: v(x) = x^{2m+2} - x^{m+2} - 1, r0 = (2(m+1)/m)^{1/(m+2)}
    const int mi = p.m();
    CaseIVAuxiliary aux;
    aux.v_coefficients.assign(2 * mi + 3, 0.0);
    aux.v_coefficients[0] = -1.0;
    aux.v_coefficients[mi + 2] = -1.0;
    aux.v_coefficients[2 * mi + 2] = 1.0;
    const DensePolynomial v(aux.v_coefficients);
    double hi = 2.0;
    while (v(hi) <= 0.0) hi *= 2.0;
    aux.r_minus = bisect_increasing([&](double x) { return v(x); }, 1.0, hi);
    const double r0 = radius_bound_r0(p);
    aux.v_at_r0 = v(r0);
    rep.lhs_value = aux.v_at_r0;
    rep.threshold = 0.0;
    rep.pass = aux.v_at_r0 > 0.0 && aux.r_minus < r0;
    if (mi >= 3) {
      rep.minorant = std::pow(2.0, (2.0 * m + 2.0) / (m + 2.0)) - 3.0;
      rep.pass = rep.pass && *rep.minorant > 0.0;
    }
    rep.auxiliary = std::move(aux);
    return rep;
  }

  const double a = (m + 1.0) * (k + 1.0) / (m * k);
  rep.lhs_value = a * (std::pow(a, k * m / (m + k + 1.0)) - 1.0);
  rep.threshold = 1.0;
  rep.pass = rep.lhs_value > 1.0;
  if (rep.case_id == CaseId::III && p.k() >= 6) {
    rep.minorant = 2.0 * (std::pow(2.0, k / (k + 2.0)) - 1.0);
    rep.pass = rep.pass && *rep.minorant > 1.0 && rep.lhs_value > *rep.minorant;
  }
  return rep;
}

}  // namespace conifold
