#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "conifold/family.hpp"
#include "conifold/polyroots.hpp"

namespace conifold {

/// Tolerance ladder for spectrum classification and condition checks.
struct Tolerances {
  double circle_tol = 1e-8;       // | |alpha| - r+ | <= circle_tol * r+
  double match_tol = 1e-7;        // critical-value matching, relative to T_con
  double slack_tol = 1e-9;        // |g(alpha)| <= T_con (1 + slack_tol)
  double abs_tol = 1e-9;          // envelope chain slack, relative to T_con
  double recon_tol = 1e-8;        // |alpha - zeta_m^d r+| <= recon_tol * r+
  double lower_bound_tol = 1e-9;  // |alpha| >= r+ (1 - lower_bound_tol)

  bool operator==(const Tolerances&) const = default;
};

/// One root of u with its critical value and circle classification.
struct CriticalDatum {
  std::complex<double> alpha;
  std::complex<double> critical_value;
  double modulus_value = 0.0;
  double modulus_root = 0.0;
  bool on_circle = false;
  /// Present exactly for on-circle roots: alpha = zeta_m^d r+.
  std::optional<int> equality_class_d;

  bool operator==(const CriticalDatum&) const = default;
};

enum class FailurePolicy {
  Report,  // record the failure in the returned report
  Throw,   // raise Error(VerificationFailure) at the first failure
};

struct ConditionReport {
  double t_con = 0.0;
  bool cond1_pass = false;
  /// T_con minus the largest |g| over the other roots; 0 when another root
  /// reaches the circle.
  double cond1_margin = 0.0;
  bool cond2_pass = false;
  bool cond3_pass = false;
  int circle_count = 0;
  int predicted_circle_count = 0;
  std::vector<std::string> diagnostics;

  bool circle_law_pass() const noexcept { return circle_count == predicted_circle_count; }
  bool all_pass() const noexcept {
    return cond1_pass && cond2_pass && cond3_pass && circle_law_pass();
  }
  int passed_count() const noexcept {
    return int{cond1_pass} + int{cond2_pass} + int{cond3_pass};
  }
  bool operator==(const ConditionReport&) const = default;
};

struct LemmaMargins {
  double min_modulus = 0.0;
  double max_modulus = 0.0;
  double lower = 0.0;  // min |alpha| - r+
  double upper = 0.0;  // r0 - max |alpha|
  /// Largest |g(alpha)| - h(|alpha|) and h(|alpha|) - h(r+) over the roots;
  /// both are <= 0 up to rounding when the envelope chain holds.
  double envelope_gap = 0.0;
  double envelope_monotone_gap = 0.0;

  bool operator==(const LemmaMargins&) const = default;
};

enum class CaseId { I, II, III, IV };

std::string to_string(CaseId id);

struct CaseIVAuxiliary {
  std::vector<double> v_coefficients;  // x^{2m+2} - x^{m+2} - 1, constant first
  double r_minus = 0.0;                // unique root of v on (1, inf)
  double v_at_r0 = 0.0;

  bool operator==(const CaseIVAuxiliary&) const = default;
};

struct CaseReport {
  CaseId case_id = CaseId::I;
  /// Cases I-III: A (A^{km/(m+k+1)} - 1) with A = (m+1)(k+1)/(mk).
  /// Case IV: v(r0).
  double lhs_value = 0.0;
  double threshold = 0.0;
  /// Case III for k >= 6: 2(2^{k/(k+2)} - 1) (threshold 1).
  /// Case IV for m >= 3: 2^{(2m+2)/(m+2)} - 3 (threshold 0).
  std::optional<double> minorant;
  std::optional<CaseIVAuxiliary> auxiliary;
  bool pass = false;

  bool operator==(const CaseReport&) const = default;
};

/// Case selection; the four predicates partition {m, k >= 1}.
CaseId applicable_case(int m, int k);

/// Attach g(alpha) and the circle classification to every root. On-circle
/// roots must reconstruct as zeta_m^d r+ with m | (k+1)d and map to
/// zeta_m^d T_con; anything else raises Error(TheoremViolation).
std::vector<CriticalDatum> classify_spectrum(const FamilyParams& p, const RootSet& roots,
                                             const PositiveRoot& r_plus,
                                             const Tolerances& tol = {});

/// Conifold conditions (1)-(3) and the circle-count law.
ConditionReport check_conditions(const FamilyParams& p, const std::vector<CriticalDatum>& data,
                                 const PositiveRoot& r_plus, const Tolerances& tol = {},
                                 FailurePolicy policy = FailurePolicy::Report);

/// r+ <= |alpha| < r0 for every root, plus the two-step envelope chain
/// |g(alpha)| <= h(|alpha|) <= h(r+). Raises Error(LemmaViolation).
LemmaMargins verify_lemma_bounds(const FamilyParams& p, const std::vector<CriticalDatum>& data,
                                 const PositiveRoot& r_plus, double r0,
                                 const Tolerances& tol = {});

CaseReport verify_case_inequalities(const FamilyParams& p);

/// {d in [0, m) : m | (k+1)d}; its size is gcd(m, k+1).
std::vector<int> equality_classes(const FamilyParams& p);

}  // namespace conifold
