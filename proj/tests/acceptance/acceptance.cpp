// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include <fmt/format.h>

#include "conifold/errors.hpp"
#include "conifold/oracle.hpp"
#include "conifold/report.hpp"

using namespace conifold;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::pair<int, int> kOracleFamilies[] = {{2, 0}, {3, 0}, {3, 1}, {4, 1}, {4, 2}};

// The sweep is shared by criteria 1-5.
struct SweepRun {
  SweepReport report;
  double seconds = 0.0;
};

SweepRun& box_sweep() {
  static SweepRun run = [] {
    const auto t0 = Clock::now();
    SweepRun s{run_sweep({1, 10}, {1, 10}), 0.0};
    s.seconds = seconds_since(t0);
    return s;
  }();
  return run;
}

void fail(Outcome& o, std::string why) {
  if (o.pass) o.detail = std::move(why);
  o.pass = false;
}

Outcome conditions_on_box() {
  Outcome o;
  const auto& s = box_sweep();
  if (s.report.entries.size() != 100) fail(o, fmt::format("{} entries", s.report.entries.size()));
  for (const auto& f : s.report.failures) fail(o, fmt::format("m={} k={}: {}", f.m, f.k, f.message));
  for (const auto& e : s.report.entries) {
    if (!e.report || !e.report->conditions.all_pass()) fail(o, fmt::format("m={} k={} conditions", e.m, e.k));
    if (e.report) {
      const auto& t = e.report->config.tolerances;
      if (t.circle_tol != 1e-8 || t.match_tol != 1e-7 || t.slack_tol != 1e-9) fail(o, "tolerances drifted");
    }
  }
  if (s.seconds >= 30.0) fail(o, fmt::format("took {:.2f} s", s.seconds));
  if (o.pass) o.detail = fmt::format("100 families, 3/3 conditions each, {:.2f} s", s.seconds);
  return o;
}

Outcome root_count_law() {
  Outcome o;
  for (const auto& e : box_sweep().report.entries) {
    if (!e.report) continue;
    const int deg = (e.m + 1) * (e.k + 1);
    if (static_cast<int>(e.report->roots.size()) != deg) fail(o, fmt::format("m={} k={} root count", e.m, e.k));
    if (e.report->gcd_degree != 0) fail(o, fmt::format("m={} k={} gcd degree {}", e.m, e.k, e.report->gcd_degree));
  }
  if (o.pass) o.detail = "|roots| = (m+1)(k+1) and deg gcd(u, u') = 0 for all 100";
  return o;
}

Outcome modulus_bounds() {
  Outcome o;
  double worst_lower = 1e300;
  double worst_upper = 1e300;
  for (const auto& e : box_sweep().report.entries) {
    if (!e.report) continue;
    const auto& r = *e.report;
    for (const auto& row : r.roots) {
      const double mod = std::hypot(row.re, row.im);
      if (mod < r.r_plus - 1e-9 * r.r_plus) fail(o, fmt::format("m={} k={} |alpha| below r+", e.m, e.k));
      if (!(mod < r.r0)) fail(o, fmt::format("m={} k={} |alpha| >= r0", e.m, e.k));
      worst_lower = std::min(worst_lower, (mod - r.r_plus) / r.r_plus);
      worst_upper = std::min(worst_upper, r.r0 - mod);
    }
  }
  if (!(worst_upper > 0.0)) fail(o, "upper margin not positive");
  if (o.pass) {
    o.detail = fmt::format("min (|alpha|-r+)/r+ = {:.2e}, min r0-|alpha| = {:.3e}", worst_lower, worst_upper);
  }
  return o;
}

Outcome circle_law() {
  Outcome o;
  int circle_total = 0;
  for (const auto& e : box_sweep().report.entries) {
    if (!e.report) continue;
    const auto& r = *e.report;
    int count = 0;
    for (const auto& row : r.roots) {
      const std::complex<double> alpha{row.re, row.im};
      if (std::fabs(std::abs(alpha) - r.r_plus) > 1e-8 * r.r_plus) continue;
      ++count;
      if (!row.d) {
        fail(o, fmt::format("m={} k={} circle root without class", e.m, e.k));
        continue;
      }
      const int d = *row.d;
      if (((e.k + 1) * d) % e.m != 0) fail(o, fmt::format("m={} k={} d={} breaks m | (k+1)d", e.m, e.k, d));
      const auto zeta = std::polar(1.0, 2.0 * std::numbers::pi * d / e.m);
      if (std::abs(alpha - zeta * r.r_plus) > 1e-8 * r.r_plus) {
        fail(o, fmt::format("m={} k={} d={} reconstruction", e.m, e.k, d));
      }
      const std::complex<double> g{row.g_re, row.g_im};
      if (std::abs(g - zeta * r.t_con) > 1e-7 * r.t_con) {
        fail(o, fmt::format("m={} k={} d={} critical value", e.m, e.k, d));
      }
    }
    if (count != std::gcd(e.m, e.k + 1)) {
      fail(o, fmt::format("m={} k={}: {} circle roots, gcd = {}", e.m, e.k, count, std::gcd(e.m, e.k + 1)));
    }
    circle_total += count;
  }
  if (o.pass) o.detail = fmt::format("{} circle roots over 100 families, all zeta_m^d r+ with m | (k+1)d", circle_total);
  return o;
}

Outcome envelope_identity() {
  Outcome o;
  double worst = 0.0;
  for (const auto& e : box_sweep().report.entries) {
    if (!e.report) continue;
    const auto p = params_from_mk(e.m, e.k);
    const double rp = e.report->r_plus;
    const double gap = std::fabs(envelope_h(p, rp) - critical_value_g(p, rp)) / e.report->t_con;
    worst = std::max(worst, gap);
    if (gap > 1e-12) fail(o, fmt::format("m={} k={} |h-g|/T = {:.2e}", e.m, e.k, gap));
  }
  if (o.pass) o.detail = fmt::format("max |h(r+) - g(r+)| / T_con = {:.2e}", worst);
  return o;
}

Outcome case_inequalities() {
  Outcome o;
  const auto c2 = verify_case_inequalities(params_from_mk(2, 2));
  const double c2_expected = 2.25 * (std::pow(2.25, 0.8) - 1.0);
  if (c2.case_id != CaseId::II || !c2.pass || std::fabs(c2.lhs_value - c2_expected) > 1e-12 ||
      std::fabs(c2.lhs_value - 2.0546) > 5e-5) {
    fail(o, fmt::format("case II lhs {}", c2.lhs_value));
  }
  int direct = 0, minorants = 0, case_i = 0;
  for (int m = 1; m <= 10; ++m) {
    for (int k = 1; k <= 10; ++k) {
      const auto c = verify_case_inequalities(params_from_mk(m, k));
      if (!c.pass) fail(o, fmt::format("m={} k={} case {} fails", m, k, to_string(c.case_id)));
      switch (c.case_id) {
        case CaseId::III:
          if (k <= 5) {
            if (!(c.lhs_value > 1.0) || c.minorant) fail(o, fmt::format("case III k={} direct", k));
            ++direct;
          } else {
            if (!c.minorant || !(*c.minorant > 1.0)) fail(o, fmt::format("case III k={} minorant", k));
            ++minorants;
          }
          break;
        case CaseId::IV:
          if (m <= 2) {
            if (!(c.lhs_value > 0.0) || c.minorant) fail(o, fmt::format("case IV m={} direct", m));
            ++direct;
          } else {
            if (!c.minorant || !(*c.minorant > 0.0)) fail(o, fmt::format("case IV m={} minorant", m));
            ++minorants;
          }
          break;
        case CaseId::I:
          if ((m - 1) * (k - 1) < 2 || !(c.lhs_value > 1.0)) fail(o, fmt::format("case I m={} k={}", m, k));
          ++case_i;
          break;
        case CaseId::II:
          if (m != 2 || k != 2) fail(o, "case II outside (2,2)");
          break;
      }
    }
  }
  if (o.pass) {
    o.detail = fmt::format("case II lhs = {:.6f}; {} direct, {} minorant, {} case I checks", c2.lhs_value,
                           direct, minorants, case_i);
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  RunConfig cfg;
  cfg.run_oracle = true;
  cfg.oracle.num_starts = 2000;
  cfg.oracle.seed = 42;
  for (auto [n, r] : kOracleFamilies) {
    const auto rep = run_family(derive_params(n, r), cfg);
    const auto& s = *rep.oracle;
    if (s.cluster_count != s.expected_count) {
      fail(o, fmt::format("(n={}, r={}) {} clusters, expected {}", n, r, s.cluster_count, s.expected_count));
    }
    if (!s.match_pass || s.matched != s.expected_count || s.max_pair_distance > 1e-7 * (1 + rep.t_con)) {
      fail(o, fmt::format("(n={}, r={}) matching failed", n, r));
    }
    worst = std::max(worst, s.max_pair_distance);
  }
  const double secs = seconds_since(t0);
  if (secs >= 60.0) fail(o, fmt::format("took {:.2f} s", secs));
  if (o.pass) o.detail = fmt::format("5 families, perfect matchings, max distance {:.2e}, {:.2f} s", worst, secs);
  return o;
}

Outcome spot_value() {
  Outcome o;
  const auto p = derive_params(2, 0);
  const auto rep = run_family(p);
  const double rb = bisection_r_plus(p);
  const double tb = critical_value_g(p, rb);
  if (std::fabs(rep.r_plus - 0.8191725) > 1e-7) fail(o, fmt::format("r+ = {}", rep.r_plus));
  if (std::fabs(rep.t_con - 3.79961) > 1e-5) fail(o, fmt::format("T_con = {}", rep.t_con));
  if (std::fabs(rep.r_plus - rb) > 1e-6 || std::fabs(rep.t_con - tb) > 1e-6) fail(o, "bisection disagrees");
  if (o.pass) {
    o.detail = fmt::format("r+ = {:.10f}, T_con = {:.10f}; bisection {:.10f}, {:.10f}", rep.r_plus, rep.t_con, rb, tb);
  }
  return o;
}

Outcome derivative_checks() {
  Outcome o;
  const double h = 1e-6;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> mod(0.5, 2.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  double worst_grad = 0.0;
  double min_det = 1e300;
  for (auto [n, r] : kOracleFamilies) {
    const auto p = derive_params(n, r);
    const auto f = build_mirror(p);
    for (int trial = 0; trial < 100; ++trial) {
      ComplexVector x(n);
      for (auto& c : x) c = std::polar(mod(rng), ang(rng));
      const auto grad = full_gradient(p, x);
      for (int i = 0; i < n; ++i) {
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const auto fd = (f(std::span<const std::complex<double>>(xp)) -
                         f(std::span<const std::complex<double>>(xm))) / (2.0 * h);
        const double err = std::abs(fd - grad[i]) / std::max(1.0, std::abs(grad[i]));
        worst_grad = std::max(worst_grad, err);
        if (err > 1e-6) fail(o, fmt::format("(n={}, r={}) gradient error {:.2e}", n, r, err));
      }
    }
    const auto u = reduced_polynomial(p);
    const auto xcon = conifold_vector(p, find_positive_root(u, p).r_plus);
    const auto hess = full_hessian(p, ComplexVector(xcon.begin(), xcon.end()));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (hess[i][j] != hess[j][i]) fail(o, fmt::format("(n={}, r={}) Hessian not symmetric", n, r));
      }
    }
    const auto check = hessian_nondegenerate(p, xcon);
    min_det = std::min(min_det, check.determinant_magnitude);
    if (!(check.determinant_magnitude > 1e-10)) fail(o, fmt::format("(n={}, r={}) |det H| tiny", n, r));
  }
  if (o.pass) {
    o.detail = fmt::format("500 points, max relative gradient error {:.2e}; min |det H(x_con)| = {:.4f}",
                           worst_grad, min_det);
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto a = serialize(run_sweep({1, 10}, {1, 10}));
  const auto b = serialize(run_sweep({1, 10}, {1, 10}));
  if (a != b) fail(o, "sweep reports differ");
  if (serialize(load_sweep(a)) != a) fail(o, "round trip changed the bytes");
  if (o.pass) o.detail = fmt::format("two sweeps, {} identical bytes", a.size());
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"sweep conditions", conditions_on_box},
      {"root-count law", root_count_law},
      {"modulus bounds", modulus_bounds},
      {"circle-count law", circle_law},
      {"envelope identity", envelope_identity},
      {"case inequalities", case_inequalities},
      {"oracle equivalence", oracle_equivalence},
      {"spot value", spot_value},
      {"gradient/Hessian", derivative_checks},
      {"determinism", determinism},
  };
  int failed = 0;
  int idx = 0;
  for (const auto& [name, check] : criteria) {
    ++idx;
    Outcome res;
    try {
      res = check();
    } catch (const std::exception& e) {
      res = {false, fmt::format("exception: {}", e.what())};
    }
    failed += !res.pass;
    fmt::print("AC{:<2} {} {:<20} {}\n", idx, res.pass ? "PASS" : "FAIL", name, res.detail);
    std::fflush(stdout);
  }
  fmt::print("{}/{} criteria passed\n", idx - failed, idx);
  return failed == 0 ? 0 : 1;
}
