#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "conifold/family.hpp"
#include "conifold/verifier.hpp"

namespace conifold {

/// Multistart Newton settings for the full n-variable critical system.
struct OracleConfig {
  int num_starts = 2000;
  std::uint64_t seed = 42;
  double newton_tol = 1e-10;     // converged when max |df/dx_i| <= newton_tol
  double cluster_radius = 1e-6;  // max-norm distance merging converged points
  int max_newton_iters = 100;
  double min_start_modulus = 0.3;
  double max_start_modulus = 3.0;
  unsigned workers = 0;  // 0 = hardware concurrency

  bool operator==(const OracleConfig&) const = default;
};

/// Throws Error(Config) unless num_starts >= 10 deg u and
/// cluster_radius > newton_tol.
void validate(const OracleConfig& cfg, const FamilyParams& p);

using ComplexMatrix = std::vector<ComplexVector>;  // row-major

/// df/dx_i = 1 - P/x_i - [i <= k] Q/x_i with P = 1/(x_1...x_n), Q = 1/(x_1...x_k).
/// Throws Error(Domain) on a zero coordinate.
ComplexVector full_gradient(const FamilyParams& p, std::span<const std::complex<double>> x);

/// d2f/dx_i dx_j = (1 + [i = j]) (P + [i, j <= k] Q) / (x_i x_j).
ComplexMatrix full_hessian(const FamilyParams& p, std::span<const std::complex<double>> x);

struct OracleRun {
  std::vector<ComplexVector> points;  // cluster representatives, canonical order
  int expected_count = 0;             // (m+1)(k+1)
  int converged_starts = 0;
  int num_starts = 0;
  std::uint64_t seed = 0;

  bool complete() const noexcept { return static_cast<int>(points.size()) == expected_count; }
  /// Fewer clusters than expected: statistical, rerun with more starts.
  bool inconclusive() const noexcept { return static_cast<int>(points.size()) < expected_count; }
};

/// Newton from num_starts seeded starts in the annulus
/// min_start_modulus <= |x_i| <= max_start_modulus; requires n <= 6.
OracleRun multistart_critical_points(const FamilyParams& p, const OracleConfig& cfg = {});

struct MatchReport {
  std::vector<std::complex<double>> oracle_values;
  std::vector<std::complex<double>> reduced_values;
  std::vector<std::pair<int, int>> matched_pairs;  // (oracle index, reduced index)
  double max_pair_distance = 0.0;
  double tolerance = 0.0;
  std::vector<int> unmatched_oracle;
  std::vector<int> unmatched_reduced;

  bool pass() const noexcept {
    return unmatched_oracle.empty() && unmatched_reduced.empty() && max_pair_distance <= tolerance;
  }
};

/// Greedy minimum-distance matching of f at the oracle points against g(alpha).
/// Tolerance 1e-7 (1 + T_con). Throws Error(Precondition) on an empty point
/// list, Error(OracleInconclusive) on a cluster shortfall and, under
/// FailurePolicy::Throw, Error(OracleMismatch) on an imperfect matching.
MatchReport compare_spectra(const std::vector<ComplexVector>& oracle_points, const FamilyParams& p,
                            const std::vector<CriticalDatum>& reduced,
                            FailurePolicy policy = FailurePolicy::Throw);

struct HessianCheck {
  double determinant_magnitude = 0.0;
  bool nondegenerate = false;  // |det| > 1e-10
};

/// Throws Error(Domain) unless x is strictly positive.
HessianCheck hessian_nondegenerate(const FamilyParams& p, std::span<const double> x);

/// Plain bisection for r+ on (0,1) to width 1e-12 using the factored form
/// of u. No Newton steps and no dense coefficients.
double bisection_r_plus(const FamilyParams& p);

/// Deviation of a critical point from the reduced shape
/// x_1 = ... = x_k = x^{m+1} + x, x_{k+1} = ... = x_n = x.
struct ReductionShape {
  double first_spread = 0.0;  // max |x_i - x_1| over i <= k
  double last_spread = 0.0;   // max |x_i - x_n| over i > k
  double relation_gap = 0.0;  // |x_1 - (x_n^{m+1} + x_n)|
};
ReductionShape reduction_shape(const FamilyParams& p, std::span<const std::complex<double>> x);

}  // namespace conifold
