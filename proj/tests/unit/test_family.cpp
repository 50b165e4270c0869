#include <gtest/gtest.h>

#include <numeric>

#include "conifold/errors.hpp"
#include "conifold/family.hpp"
#include "reference_values.hpp"

using namespace conifold;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception thrown";
  return ErrorKind::InternalConsistency;
}

}  // namespace

TEST(DeriveParams, Examples) {
  const auto a = derive_params(4, 1);
  EXPECT_EQ(a.m(), 2);
  EXPECT_EQ(a.k(), 2);
  EXPECT_EQ(a.rho(), 1);

  const auto b = derive_params(2, 0);
  EXPECT_EQ(b.m(), 1);
  EXPECT_EQ(b.k(), 1);
  EXPECT_EQ(b.rho(), 1);
  EXPECT_EQ(b.reduced_degree(), 4);

  const auto c = derive_params(5, 2);
  EXPECT_EQ(c.m(), 2);
  EXPECT_EQ(c.k(), 3);
  EXPECT_EQ(c.rho(), 2);
}

TEST(DeriveParams, RejectsOutOfRange) {
  EXPECT_EQ(kind_of([] { derive_params(2, 1); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { derive_params(1, 0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { derive_params(5, -1); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { params_from_mk(0, 3); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { params_from_mk(3, 0); }), ErrorKind::Domain);
}

TEST(DeriveParams, MkRoundTrip) {
  for (int m = 1; m <= 12; ++m) {
    for (int k = 1; k <= 12; ++k) {
      const auto p = params_from_mk(m, k);
      EXPECT_EQ(p, derive_params(p.n(), p.r()));
      EXPECT_EQ(p.rho(), std::gcd(m, k + 1));
    }
  }
}

TEST(DeriveParams, OrderedByMk) {
  EXPECT_LT(params_from_mk(1, 9), params_from_mk(2, 1));
  EXPECT_LT(params_from_mk(2, 1), params_from_mk(2, 2));
}

TEST(FanGenerators, SmallCases) {
  EXPECT_EQ(fan_generators(derive_params(2, 0)),
            (std::vector<IntVector>{{1, 0}, {0, 1}, {-1, -1}, {-1, 0}}));
  EXPECT_EQ(fan_generators(derive_params(3, 1)),
            (std::vector<IntVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {-1, -1, 0}}));
}

TEST(FanGenerators, FirstNPlusOneSumToZero) {
  for (int n = 2; n <= 8; ++n) {
    for (int r = 0; r <= n - 2; ++r) {
      const auto gens = fan_generators(derive_params(n, r));
      ASSERT_EQ(static_cast<int>(gens.size()), n + 2);
      IntVector sum(n, 0);
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < n; ++j) sum[j] += gens[i][j];
      }
      EXPECT_EQ(sum, IntVector(n, 0));
    }
  }
}

TEST(Mirror, EvaluatesSpecialisedForms) {
  const auto f2 = build_mirror(derive_params(2, 0));
  const std::vector<double> x{2.0, 0.5};
  EXPECT_DOUBLE_EQ(f2(std::span<const double>(x)), 2.0 + 0.5 + 1.0 + 0.5);

  const auto f3 = build_mirror(derive_params(3, 1));
  const std::vector<std::complex<double>> z{{1, 1}, {2, 0}, {0, -1}};
  const auto expected = z[0] + z[1] + z[2] + 1.0 / (z[0] * z[1] * z[2]) + 1.0 / (z[0] * z[1]);
  EXPECT_NEAR(std::abs(f3(std::span<const std::complex<double>>(z)) - expected), 0.0, 1e-15);
}

TEST(ReducedPolynomial, Coefficients) {
  EXPECT_EQ(reduced_polynomial(params_from_mk(1, 1)).integer_coefficients(),
            (std::vector<std::int64_t>{-1, 0, 0, 1, 1}));
  EXPECT_EQ(reduced_polynomial(params_from_mk(1, 2)).integer_coefficients(),
            (std::vector<std::int64_t>{-1, 0, 0, 0, 1, 2, 1}));
  const auto u22 = reduced_polynomial(params_from_mk(2, 2));
  EXPECT_EQ(u22.degree(), 9);
  EXPECT_EQ(u22(0.0), -1.0);
  EXPECT_EQ(u22(1.0), 3.0);
}

TEST(ReducedPolynomial, MatchesFactoredForm) {
  for (int m = 1; m <= 6; ++m) {
    for (int k = 1; k <= 6; ++k) {
      const auto p = params_from_mk(m, k);
      const auto u = reduced_polynomial(p);
      ASSERT_EQ(u.degree(), p.reduced_degree());
      const std::complex<double> z{0.7, -0.4};
      const auto head = std::pow(z, m + 1);
      const auto factored = head * std::pow(head + z, k) - 1.0;
      EXPECT_NEAR(std::abs(u(z) - factored), 0.0, 1e-12);
    }
  }
}

TEST(ReducedPolynomial, RejectsHugeK) {
  EXPECT_EQ(kind_of([] { reduced_polynomial(params_from_mk(1, 80)); }), ErrorKind::Config);
}

TEST(CriticalValue, Examples) {
  const auto p = params_from_mk(1, 1);
  EXPECT_EQ(critical_value_g(p, 0.0), 0.0);
  EXPECT_EQ(critical_value_g(p, 1.0), 5.0);
  const auto q = params_from_mk(2, 3);
  for (double x : {0.3, 0.786, 1.7}) EXPECT_DOUBLE_EQ(critical_value_g(q, -x), -critical_value_g(q, x));
  const std::complex<double> z{0.3, 0.2};
  EXPECT_NEAR(std::abs(critical_value_g(q, z) - (4.0 * std::pow(z, 3) + 6.0 * z)), 0.0, 1e-15);
}

TEST(Envelope, Examples) {
  const auto p = params_from_mk(1, 1);
  EXPECT_DOUBLE_EQ(envelope_h(p, 1.0), 3.0);
  EXPECT_NEAR(envelope_h(p, ref::kRPlus11), ref::kTCon11, 1e-12);
  EXPECT_NEAR(critical_value_g(p, ref::kRPlus11), ref::kTCon11, 1e-12);
  EXPECT_EQ(kind_of([&] { envelope_h(p, 0.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([&] { envelope_h(p, -1.0); }), ErrorKind::Domain);
}

TEST(Envelope, DecreasingBelowR0) {
  for (int m = 1; m <= 5; ++m) {
    for (int k = 1; k <= 5; ++k) {
      const auto p = params_from_mk(m, k);
      const double r0 = radius_bound_r0(p);
      double prev = envelope_h(p, 0.05 * r0);
      for (int i = 2; i <= 20; ++i) {
        const double h = envelope_h(p, 0.05 * i * r0);
        EXPECT_LT(h, prev);
        prev = h;
      }
    }
  }
}

TEST(RadiusBound, Examples) {
  EXPECT_NEAR(radius_bound_r0(params_from_mk(1, 1)), ref::kR0_11, 1e-15);
  EXPECT_NEAR(radius_bound_r0(params_from_mk(2, 2)), ref::kR0_22, 1e-15);
  EXPECT_NEAR(radius_bound_r0(params_from_mk(2, 2)), std::pow(9.0 / 4.0, 0.4), 1e-15);
  EXPECT_GT(radius_bound_r0(params_from_mk(1, 1)), 1.0);
}

TEST(ConifoldVector, ShapeAndValue) {
  const auto p = params_from_mk(1, 1);
  const auto x = conifold_vector(p, ref::kRPlus11);
  ASSERT_EQ(x.size(), 2u);
  EXPECT_NEAR(x[0], ref::kXCon11First, 1e-12);
  EXPECT_NEAR(x[1], ref::kRPlus11, 1e-15);
  EXPECT_NEAR(build_mirror(p)(std::span<const double>(x)), ref::kTCon11, 1e-12);

  const auto q = params_from_mk(2, 3);
  const auto y = conifold_vector(q, ref::kRPlus23);
  ASSERT_EQ(y.size(), 5u);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(y[i], y[0]);
  for (int i = 3; i < 5; ++i) EXPECT_DOUBLE_EQ(y[i], ref::kRPlus23);
  EXPECT_EQ(kind_of([&] { conifold_vector(q, 0.0); }), ErrorKind::Domain);
}
