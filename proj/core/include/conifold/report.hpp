#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conifold/family.hpp"
#include "conifold/oracle.hpp"
#include "conifold/polyroots.hpp"
#include "conifold/verifier.hpp"

namespace conifold {

inline constexpr int kReportSchemaVersion = 1;
std::string_view tool_version();

/// Everything a run depends on; serialized into every report so the report
/// can be re-run from its own header.
struct RunConfig {
  RootConfig roots;
  Tolerances tolerances;
  bool run_oracle = false;
  OracleConfig oracle;
  int max_degree = 200;  // guard on (m+1)(k+1)
  bool record_timings = false;
  unsigned workers = 0;  // sweep parallelism, 0 = hardware concurrency

  bool operator==(const RunConfig&) const = default;
};

/// One row of the root table.
struct RootRow {
  double re = 0.0;
  double im = 0.0;
  double modulus = 0.0;
  double residual = 0.0;
  double error_radius = 0.0;
  double g_re = 0.0;
  double g_im = 0.0;
  bool on_circle = false;
  std::optional<int> d;

  bool operator==(const RootRow&) const = default;
};

struct OracleSummary {
  int num_starts = 0;
  std::uint64_t seed = 0;
  int expected_count = 0;
  int cluster_count = 0;
  int converged_starts = 0;
  bool inconclusive = false;
  bool match_pass = false;
  int matched = 0;
  double max_pair_distance = 0.0;
  double match_tolerance = 0.0;
  int unmatched_oracle = 0;
  int unmatched_reduced = 0;
  double max_reduction_gap = 0.0;  // worst ReductionShape entry over clusters
  double gradient_norm_at_conifold = 0.0;
  double hessian_det_at_conifold = 0.0;
  bool hessian_nondegenerate = false;

  bool pass() const noexcept { return !inconclusive && match_pass && hessian_nondegenerate; }
  bool operator==(const OracleSummary&) const = default;
};

struct VerificationReport {
  explicit VerificationReport(FamilyParams p) : params(p) {}

  FamilyParams params;
  std::string tool_version;
  RunConfig config;

  double r_plus = 0.0;
  double r_plus_lo = 0.0;
  double r_plus_hi = 0.0;
  double t_con = 0.0;
  double r0 = 0.0;

  std::string root_method;
  int root_iterations = 0;
  double method_disagreement = -1.0;
  int gcd_degree = 0;  // deg gcd(u, u')
  std::uint64_t square_free_prime = 0;

  std::vector<RootRow> roots;
  ConditionReport conditions;
  LemmaMargins lemma;
  CaseReport case_report;
  std::optional<OracleSummary> oracle;
  std::map<std::string, double> timings_ms;

  /// Conditions, circle law, lemma bounds (enforced by throwing), case
  /// inequality, square-freeness, and the oracle when it ran.
  bool pass() const noexcept;
  bool operator==(const VerificationReport&) const = default;
};

/// family -> polyroots -> verifier (-> oracle). Stage errors propagate with
/// the stage name attached. Under FailurePolicy::Throw a failed condition or
/// oracle check raises instead of being recorded.
VerificationReport run_family(const FamilyParams& p, const RunConfig& cfg = {},
                              FailurePolicy policy = FailurePolicy::Report);

struct IntRange {
  int lo = 1;
  int hi = 1;

  bool operator==(const IntRange&) const = default;
};

struct SweepFailure {
  int m = 0;
  int k = 0;
  std::string stage;
  std::string kind;
  std::string message;

  bool operator==(const SweepFailure&) const = default;
};

struct SweepEntry {
  int m = 0;
  int k = 0;
  bool pass = false;
  std::optional<VerificationReport> report;  // absent when a stage raised

  bool operator==(const SweepEntry&) const = default;
};

struct SweepReport {
  std::string tool_version;
  IntRange m_range;
  IntRange k_range;
  RunConfig config;
  std::vector<SweepEntry> entries;  // (m, k) lexicographic
  std::vector<SweepFailure> failures;
  int passed = 0;
  int failed = 0;

  bool operator==(const SweepReport&) const = default;
};

/// One entry per (m, k) in the rectangle; failures are collected, not
/// short-circuited. Throws Error(Config) for an empty range or when the
/// largest family exceeds cfg.max_degree.
SweepReport run_sweep(IntRange m_range, IntRange k_range, const RunConfig& cfg = {});

/// Throws Error(Config) when (m+1)(k+1) > cfg.max_degree.
void check_degree_guard(const FamilyParams& p, const RunConfig& cfg);

/// Structured UTF-8 JSON document. Throws Error(Numerical) if any numeric
/// field is not finite.
std::string serialize(const VerificationReport& report);
std::string serialize(const SweepReport& report);

/// Throws Error(Parse) on malformed input and Error(SchemaVersion) when the
/// document was written by another schema version.
VerificationReport load_report(std::string_view text);
SweepReport load_sweep(std::string_view text);

/// Root table: header re,im,modulus,residual,g_re,g_im,on_circle,d with LF
/// line endings; d is empty for off-circle roots.
std::string roots_csv(const VerificationReport& report);
inline constexpr std::string_view kRootsCsvHeader = "re,im,modulus,residual,g_re,g_im,on_circle,d";

}  // namespace conifold
