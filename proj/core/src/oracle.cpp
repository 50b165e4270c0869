#include "conifold/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "conifold/errors.hpp"
#include "parallel.hpp"

namespace conifold {

void validate(const OracleConfig& cfg, const FamilyParams& p) {
  const int min_starts = 10 * p.reduced_degree();
  if (cfg.num_starts < min_starts) {
    throw Error(ErrorKind::Config, fmt::format("oracle needs at least 10 (m+1)(k+1) = {} starts, got {}",
                                               min_starts, cfg.num_starts));
  }
  if (!(cfg.cluster_radius > cfg.newton_tol)) {
    throw Error(ErrorKind::Config, "oracle cluster_radius must exceed newton_tol");
  }
  if (cfg.max_newton_iters < 1) throw Error(ErrorKind::Config, "max_newton_iters must be positive");
  if (!(cfg.min_start_modulus > 0.0 && cfg.min_start_modulus <= cfg.max_start_modulus)) {
    throw Error(ErrorKind::Config, "start annulus must satisfy 0 < min <= max");
  }
}

namespace {

struct Monomials {
  std::complex<double> full;     // P = 1/(x_1...x_n)
  std::complex<double> partial;  // Q = 1/(x_1...x_k)
};

Monomials inverse_products(const FamilyParams& p, std::span<const std::complex<double>> x) {
  if (static_cast<int>(x.size()) != p.n()) {
    throw Error(ErrorKind::Precondition,
                fmt::format("point has {} coordinates, family has n = {}", x.size(), p.n()));
  }
  std::complex<double> prod_k = 1.0;
  std::complex<double> prod_n = 1.0;
  for (int i = 0; i < p.n(); ++i) {
    if (x[i] == 0.0) {
      throw Error(ErrorKind::Domain, fmt::format("coordinate x_{} is zero", i + 1));
    }
    prod_n *= x[i];
    if (i < p.k()) prod_k = prod_n;
  }
  return {1.0 / prod_n, 1.0 / prod_k};
}

}  // namespace

ComplexVector full_gradient(const FamilyParams& p, std::span<const std::complex<double>> x) {
  const auto [full, partial] = inverse_products(p, x);
  ComplexVector grad(p.n());
  for (int i = 0; i < p.n(); ++i) {
    std::complex<double> term = full;
    if (i < p.k()) term += partial;
    grad[i] = 1.0 - term / x[i];
  }
  return grad;
}

ComplexMatrix full_hessian(const FamilyParams& p, std::span<const std::complex<double>> x) {
  const auto [full, partial] = inverse_products(p, x);
  const int n = p.n();
  ComplexMatrix h(n, ComplexVector(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::complex<double> num = full;
      if (i < p.k() && j < p.k()) num += partial;
      if (i == j) num *= 2.0;
      h[i][j] = num / (x[i] * x[j]);
    }
  }
  return h;
}

namespace {

double max_abs(const ComplexVector& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

struct NewtonResult {
  ComplexVector x;
  bool converged = false;
};

NewtonResult newton_solve(const FamilyParams& p, ComplexVector x, const OracleConfig& cfg) {
  const int n = p.n();
  Eigen::MatrixXcd hess(n, n);
  Eigen::VectorXcd rhs(n);
  for (int it = 0; it < cfg.max_newton_iters; ++it) {
    const auto grad = full_gradient(p, x);
    if (max_abs(grad) <= cfg.newton_tol) return {std::move(x), true};
    const auto h = full_hessian(p, x);
    for (int i = 0; i < n; ++i) {
      rhs[i] = -grad[i];
      for (int j = 0; j < n; ++j) hess(i, j) = h[i][j];
    }
    Eigen::VectorXcd step = hess.partialPivLu().solve(rhs);
    if (!step.allFinite()) return {std::move(x), false};
    // damp so no coordinate moves by more than half its modulus
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(step[i]) / std::abs(x[i]));
    const double scale = worst > 0.5 ? 0.5 / worst : 1.0;
    for (int i = 0; i < n; ++i) {
      x[i] += scale * step[i];
      const double mod = std::abs(x[i]);
      if (!(mod > 1e-8 && mod < 1e8)) return {std::move(x), false};
    }
  }
  const bool ok = max_abs(full_gradient(p, x)) <= cfg.newton_tol;
  return {std::move(x), ok};
}

bool canonical_less(const ComplexVector& a, const ComplexVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

double max_norm_distance(const ComplexVector& a, const ComplexVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max({d, std::fabs(a[i].real() - b[i].real()), std::fabs(a[i].imag() - b[i].imag())});
  }
  return d;
}

}  // namespace

OracleRun multistart_critical_points(const FamilyParams& p, const OracleConfig& cfg) {
  if (p.n() > 6) {
    throw Error(ErrorKind::Config, fmt::format("oracle is limited to n <= 6 (got n = {})", p.n()));
  }
  validate(cfg, p);

  // Starts are drawn serially so the point set does not depend on threading.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> radius(cfg.min_start_modulus, cfg.max_start_modulus);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<ComplexVector> starts(cfg.num_starts, ComplexVector(p.n()));
  for (auto& s : starts) {
    for (auto& c : s) {
      const double r = radius(rng);
      c = std::polar(r, angle(rng));
    }
  }

  std::vector<NewtonResult> results(starts.size());
  detail::parallel_for(starts.size(), cfg.workers,
                       [&](std::size_t i) { results[i] = newton_solve(p, starts[i], cfg); });

  std::vector<ComplexVector> converged;
  for (auto& r : results) {
    if (r.converged) converged.push_back(std::move(r.x));
  }
  std::sort(converged.begin(), converged.end(), canonical_less);

  OracleRun run;
  run.expected_count = p.reduced_degree();
  run.converged_starts = static_cast<int>(converged.size());
  run.num_starts = cfg.num_starts;
  run.seed = cfg.seed;
  for (auto& pt : converged) {
    const bool known = std::any_of(run.points.begin(), run.points.end(), [&](const ComplexVector& rep) {
      return max_norm_distance(rep, pt) <= cfg.cluster_radius;
    });
    if (!known) run.points.push_back(std::move(pt));
  }
  return run;
}

MatchReport compare_spectra(const std::vector<ComplexVector>& oracle_points, const FamilyParams& p,
                            const std::vector<CriticalDatum>& reduced, FailurePolicy policy) {
  if (oracle_points.empty()) {
    throw Error(ErrorKind::Precondition, "oracle produced no critical points");
  }
  const CriticalDatum* conifold = nullptr;
  for (const auto& d : reduced) {
    if (d.on_circle && d.equality_class_d == 0) conifold = &d;
  }
  if (!conifold) {
    throw Error(ErrorKind::Precondition, "reduced spectrum has no conifold root");
  }
  if (oracle_points.size() < reduced.size()) {
    throw Error(ErrorKind::OracleInconclusive,
                fmt::format("oracle found {} critical points, expected {}; rerun with more starts",
                            oracle_points.size(), reduced.size()));
  }

  MatchReport rep;
  const double t_con = conifold->critical_value.real();
  rep.tolerance = 1e-7 * (1.0 + t_con);
  const MirrorPolynomial f = build_mirror(p);
  for (const auto& pt : oracle_points) rep.oracle_values.push_back(f(std::span<const std::complex<double>>(pt)));
  for (const auto& d : reduced) rep.reduced_values.push_back(d.critical_value);

  struct Edge {
    double dist;
    int i;
    int j;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < static_cast<int>(rep.oracle_values.size()); ++i) {
    for (int j = 0; j < static_cast<int>(rep.reduced_values.size()); ++j) {
      edges.push_back({std::abs(rep.oracle_values[i] - rep.reduced_values[j]), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  std::vector<char> used_o(rep.oracle_values.size(), 0);
  std::vector<char> used_r(rep.reduced_values.size(), 0);
  for (const auto& e : edges) {
    if (used_o[e.i] || used_r[e.j]) continue;
    if (e.dist > rep.tolerance) break;
    used_o[e.i] = used_r[e.j] = 1;
    rep.matched_pairs.emplace_back(e.i, e.j);
    rep.max_pair_distance = std::max(rep.max_pair_distance, e.dist);
  }
  std::sort(rep.matched_pairs.begin(), rep.matched_pairs.end());
  for (int i = 0; i < static_cast<int>(used_o.size()); ++i) {
    if (!used_o[i]) rep.unmatched_oracle.push_back(i);
  }
  for (int j = 0; j < static_cast<int>(used_r.size()); ++j) {
    if (!used_r[j]) rep.unmatched_reduced.push_back(j);
  }
  if (!rep.pass() && policy == FailurePolicy::Throw) {
    Error err(ErrorKind::OracleMismatch,
              fmt::format("{} oracle and {} reduced critical values left unmatched",
                          rep.unmatched_oracle.size(), rep.unmatched_reduced.size()));
    if (!rep.unmatched_oracle.empty()) err.with_root(rep.oracle_values[rep.unmatched_oracle.front()]);
    throw err;
  }
  return rep;
}

HessianCheck hessian_nondegenerate(const FamilyParams& p, std::span<const double> x) {
  for (double xi : x) {
    if (!(xi > 0.0)) throw Error(ErrorKind::Domain, "Hessian check needs a strictly positive point");
  }
  const ComplexVector z(x.begin(), x.end());
  const auto h = full_hessian(p, z);
  const int n = p.n();
  Eigen::MatrixXd real_h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) real_h(i, j) = h[i][j].real();
  }
  HessianCheck out;
  out.determinant_magnitude = std::fabs(real_h.determinant());
  out.nondegenerate = out.determinant_magnitude > 1e-10;
  return out;
}

double bisection_r_plus(const FamilyParams& p) {
  const int m = p.m();
  const int k = p.k();
  auto u = [&](double x) {
    const double head = std::pow(x, m + 1);
    return head * std::pow(head + x, k) - 1.0;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (u(mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

ReductionShape reduction_shape(const FamilyParams& p, std::span<const std::complex<double>> x) {
  ReductionShape s;
  const int n = p.n();
  const int k = p.k();
  for (int i = 1; i < k; ++i) s.first_spread = std::max(s.first_spread, std::abs(x[i] - x[0]));
  for (int i = k; i < n - 1; ++i) s.last_spread = std::max(s.last_spread, std::abs(x[i] - x[n - 1]));
  std::complex<double> last = x[n - 1];
  std::complex<double> power = 1.0;
  for (int i = 0; i <= p.m(); ++i) power *= last;
  s.relation_gap = std::abs(x[0] - (power + last));
  return s;
}

}  // namespace conifold
