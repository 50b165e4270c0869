#include <gtest/gtest.h>

#include <numeric>

#include "conifold/errors.hpp"
#include "conifold/verifier.hpp"
#include "reference_values.hpp"

using namespace conifold;

namespace {

struct Spectrum {
  FamilyParams p;
  PositiveRoot pr;
  RootSet roots;
  std::vector<CriticalDatum> data;
};

Spectrum spectrum(int m, int k) {
  const auto p = params_from_mk(m, k);
  const auto u = reduced_polynomial(p);
  Spectrum s{p, find_positive_root(u, p), all_roots(u), {}};
  s.data = classify_spectrum(p, s.roots, s.pr);
  return s;
}

}  // namespace

TEST(EqualityClasses, Examples) {
  EXPECT_EQ(equality_classes(params_from_mk(2, 3)), (std::vector<int>{0, 1}));
  EXPECT_EQ(equality_classes(params_from_mk(2, 2)), (std::vector<int>{0}));
  EXPECT_EQ(equality_classes(params_from_mk(6, 3)), (std::vector<int>{0, 3}));
  for (int m = 1; m <= 12; ++m) {
    for (int k = 1; k <= 12; ++k) {
      EXPECT_EQ(static_cast<int>(equality_classes(params_from_mk(m, k)).size()), std::gcd(m, k + 1));
    }
  }
}

TEST(ApplicableCase, Partition) {
  EXPECT_EQ(applicable_case(1, 1), CaseId::IV);
  EXPECT_EQ(applicable_case(7, 1), CaseId::IV);
  EXPECT_EQ(applicable_case(1, 2), CaseId::III);
  EXPECT_EQ(applicable_case(1, 9), CaseId::III);
  EXPECT_EQ(applicable_case(2, 2), CaseId::II);
  EXPECT_EQ(applicable_case(2, 3), CaseId::I);
  EXPECT_EQ(applicable_case(3, 2), CaseId::I);
  EXPECT_EQ(to_string(CaseId::III), "III");
}

TEST(CaseInequalities, CaseII) {
  const auto c = verify_case_inequalities(params_from_mk(2, 2));
  EXPECT_EQ(c.case_id, CaseId::II);
  EXPECT_NEAR(c.lhs_value, ref::kCaseIILhs, 1e-14);
  EXPECT_NEAR(c.lhs_value, 2.25 * (std::pow(2.25, 0.8) - 1.0), 1e-14);
  EXPECT_TRUE(c.pass);
}

TEST(CaseInequalities, CaseIII) {
  for (int k = 2; k <= 10; ++k) {
    const auto c = verify_case_inequalities(params_from_mk(1, k));
    EXPECT_EQ(c.case_id, CaseId::III);
    EXPECT_NEAR(c.lhs_value, ref::kCaseIIILhs[k - 2], 1e-5) << k;
    EXPECT_TRUE(c.pass);
    if (k >= 6) {
      ASSERT_TRUE(c.minorant);
      EXPECT_NEAR(*c.minorant, ref::kCaseIIIMinorant[k - 6], 1e-5);
      EXPECT_GT(*c.minorant, 1.0);
    } else {
      EXPECT_FALSE(c.minorant);
    }
  }
}

TEST(CaseInequalities, CaseIV) {
  for (const auto& row : ref::kCaseIV) {
    const auto p = params_from_mk(row.m, 1);
    const auto c = verify_case_inequalities(p);
    EXPECT_EQ(c.case_id, CaseId::IV);
    EXPECT_NEAR(radius_bound_r0(p), row.r0, 1e-14);
    EXPECT_NEAR(c.lhs_value, row.v_at_r0, 1e-12);
    ASSERT_TRUE(c.auxiliary);
    EXPECT_NEAR(c.auxiliary->r_minus, row.r_minus, 1e-12);
    EXPECT_LT(c.auxiliary->r_minus, row.r0);
    if (row.m >= 3) {
      ASSERT_TRUE(c.minorant);
      EXPECT_NEAR(*c.minorant, row.minorant, 1e-12);
    } else {
      EXPECT_FALSE(c.minorant);
    }
    EXPECT_TRUE(c.pass);
  }
}

TEST(CaseInequalities, CaseIHoldsOnBox) {
  for (int m = 2; m <= 10; ++m) {
    for (int k = 2; k <= 10; ++k) {
      if (m == 2 && k == 2) continue;
      const auto c = verify_case_inequalities(params_from_mk(m, k));
      EXPECT_EQ(c.case_id, CaseId::I);
      EXPECT_GT(c.lhs_value, 1.0);
      EXPECT_TRUE(c.pass);
    }
  }
}

TEST(ClassifySpectrum, CircleRootsReconstruct) {
  const auto s = spectrum(2, 3);
  int circle = 0;
  for (const auto& d : s.data) {
    if (!d.on_circle) {
      EXPECT_FALSE(d.equality_class_d);
      continue;
    }
    ++circle;
    ASSERT_TRUE(d.equality_class_d);
    if (*d.equality_class_d == 1) {
      EXPECT_NEAR(d.alpha.real(), -ref::kRPlus23, 1e-14);
      EXPECT_NEAR(d.critical_value.real(), -ref::kTCon23, 1e-12);
    } else {
      EXPECT_NEAR(d.alpha.real(), ref::kRPlus23, 1e-14);
      EXPECT_NEAR(d.critical_value.real(), ref::kTCon23, 1e-12);
    }
  }
  EXPECT_EQ(circle, 2);
}

TEST(ClassifySpectrum, ForeignCircleRootIsTheoremViolation) {
  auto s = spectrum(1, 1);
  // put a root on |z| = r+ that is not zeta_1^d r+
  for (auto& r : s.roots.roots) {
    if (r.value.imag() > 0) r.value = std::complex<double>(0.0, s.pr.r_plus);
  }
  try {
    classify_spectrum(s.p, s.roots, s.pr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TheoremViolation);
    EXPECT_TRUE(e.offending_root());
  }
}

TEST(CheckConditions, AllPassOnSmallFamilies) {
  for (auto [m, k] : {std::pair{1, 1}, {2, 2}, {2, 3}, {6, 3}, {4, 7}}) {
    const auto s = spectrum(m, k);
    const auto rep = check_conditions(s.p, s.data, s.pr);
    EXPECT_TRUE(rep.all_pass()) << m << "," << k;
    EXPECT_EQ(rep.passed_count(), 3);
    EXPECT_EQ(rep.circle_count, std::gcd(m, k + 1));
    EXPECT_TRUE(rep.diagnostics.empty());
  }
}

TEST(CheckConditions, SpotValue) {
  const auto s = spectrum(1, 1);
  const auto rep = check_conditions(s.p, s.data, s.pr);
  EXPECT_NEAR(rep.t_con, ref::kTCon11, 1e-12);
  EXPECT_GT(rep.cond1_margin, 0.0);
}

TEST(CheckConditions, MissingRootsArePrecondition) {
  auto s = spectrum(2, 2);
  s.data.pop_back();
  try {
    check_conditions(s.p, s.data, s.pr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(CheckConditions, FailurePolicies) {
  auto s = spectrum(2, 2);
  for (auto& d : s.data) {
    if (!d.on_circle) {
      d.modulus_value = 2.0 * ref::kTCon11 * 10;
      break;
    }
  }
  const auto rep = check_conditions(s.p, s.data, s.pr, {}, FailurePolicy::Report);
  EXPECT_FALSE(rep.cond1_pass);
  EXPECT_FALSE(rep.all_pass());
  ASSERT_FALSE(rep.diagnostics.empty());
  EXPECT_NE(rep.diagnostics.front().find("cond1"), std::string::npos);

  try {
    check_conditions(s.p, s.data, s.pr, {}, FailurePolicy::Throw);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VerificationFailure);
    EXPECT_TRUE(e.offending_root());
  }
}

TEST(LemmaBounds, MarginsOnBox) {
  for (int m = 1; m <= 10; m += 2) {
    for (int k = 1; k <= 10; k += 2) {
      const auto s = spectrum(m, k);
      const double r0 = radius_bound_r0(s.p);
      const auto lm = verify_lemma_bounds(s.p, s.data, s.pr, r0);
      EXPECT_GE(lm.lower, -1e-9 * s.pr.r_plus);
      EXPECT_GT(lm.upper, 0.0);
      EXPECT_LE(lm.envelope_gap, 1e-9 * ref::kTCon11 * 10);
    }
  }
}

TEST(LemmaBounds, EscapedRootIsLemmaViolation) {
  auto s = spectrum(1, 1);
  const double r0 = radius_bound_r0(s.p);
  for (auto& d : s.data) {
    if (!d.on_circle) {
      d.alpha = {1.1 * r0, 0.0};
      d.modulus_root = 1.1 * r0;
      break;
    }
  }
  try {
    verify_lemma_bounds(s.p, s.data, s.pr, r0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LemmaViolation);
    ASSERT_TRUE(e.offending_root());
    EXPECT_NEAR(e.offending_root()->real(), 1.1 * r0, 1e-15);
  }
}
