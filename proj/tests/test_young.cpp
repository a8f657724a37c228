#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hyperorlicz/young.hpp"

using namespace hyperorlicz;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST(YoungEval, Examples) {
  EXPECT_EQ(eval(YoungFunction::power(2), 3.0), 9.0);
  EXPECT_EQ(eval(make_phi_p_gamma(3, 1), 0.0), 0.0);
  // mpmath: ln 2
  EXPECT_NEAR(eval(make_phi_p_gamma(2, 1), 1.0), 0.69314718055994531, 1e-16);
}

TEST(YoungEval, EvenAndRejectsNonFinite) {
  const auto phi = make_phi_p_gamma(2.5, 0.5);
  for (double x : {0.1, 1.0, 7.5, 1e3}) EXPECT_EQ(phi(x), phi(-x));
  EXPECT_EQ(code_of([&] { phi(std::nan("")); }), ErrorCode::non_finite);
  EXPECT_EQ(code_of([&] { phi(INFINITY); }), ErrorCode::non_finite);
}

TEST(YoungFamily, OmegaMembership) {
  EXPECT_TRUE(make_phi_p_gamma(3, 0).omega_member());
  EXPECT_FALSE(make_phi_p_gamma(1, 0).omega_member());
  EXPECT_TRUE(make_phi_p_gamma(2, 1).omega_member());
  EXPECT_FALSE(make_phi_p_gamma(2, 0).omega_member());  // p + gamma = 2
  EXPECT_FALSE(YoungFunction::custom("abs(x)^3").omega_member());
}

TEST(YoungFamily, CertificateRecordsSamples) {
  const auto& c = make_phi_p_gamma(2, 1).certificate();
  EXPECT_TRUE(c.passed);
  EXPECT_GT(c.samples, 500u);
  EXPECT_GE(c.worst_second_difference, -1e-12);
}

TEST(YoungFamily, RejectsBadParameters) {
  EXPECT_EQ(code_of([] { make_phi_p_gamma(0.5, 0); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { make_phi_p_gamma(2, -1); }), ErrorCode::invalid_argument);
}

TEST(YoungFamily, RejectsNonConvexWithPoint) {
  try {
    YoungFunction::custom("abs(x)^0.5");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::convexity_violation);
    EXPECT_NE(std::string(e.what()).find("x="), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { YoungFunction::custom("x^2 + 1"); }),
            ErrorCode::convexity_violation);  // Φ(0) != 0
  EXPECT_EQ(code_of([] { YoungFunction::custom("x^3"); }),
            ErrorCode::convexity_violation);  // odd
  EXPECT_EQ(code_of([] { YoungFunction::custom("0*x"); }),
            ErrorCode::convexity_violation);  // no growth
}

TEST(Complementary, Examples) {
  EXPECT_NEAR(complementary(YoungFunction::power(2), 2.0), 1.0, 1e-10);
  EXPECT_EQ(complementary(YoungFunction::power(2), 0.0), 0.0);
  EXPECT_EQ(complementary(make_phi_p_gamma(2, 1), 0.0), 0.0);
  // mpmath: 2/(3 sqrt 3)
  EXPECT_NEAR(complementary(YoungFunction::power(3), 1.0), 0.38490017945975051, 1e-10);
  EXPECT_NEAR(complementary(YoungFunction::power(3), -1.0), 0.38490017945975051, 1e-10);
}

TEST(Complementary, UnboundedOnRange) {
  // Ψ for Φ = |x| is +inf beyond 1
  EXPECT_EQ(code_of([] { complementary(YoungFunction::power(1), 2.0); }),
            ErrorCode::unbounded_on_range);
  EXPECT_NEAR(complementary(YoungFunction::power(1), 0.5), 0.0, 1e-10);
}

TEST(Complementary, OrderReversing) {
  // |x|^2 <= |x|^2 + |x|^3 pointwise
  const auto a = YoungFunction::power(2);
  const auto b = YoungFunction::custom("x^2 + abs(x)^3");
  for (double x : log_grid(1e-2, 50.0, 40)) {
    EXPECT_GE(complementary(a, x) + 1e-10, complementary(b, x)) << x;
  }
}

TEST(Complementary, YoungInequalityGrid) {
  for (const auto& phi : {YoungFunction::power(2), YoungFunction::power(3),
                          make_phi_p_gamma(2, 1), make_phi_p_gamma(1.5, 1)}) {
    const auto grid = log_grid(1e-2, 20.0, 32);
    for (double y : grid) {
      const double psi = complementary(phi, y);
      for (double x : grid) EXPECT_GE(phi(x) + psi - x * y, -1e-9) << x << " " << y;
    }
  }
}

TEST(Complementary, BiConjugationPowers) {
  for (double p : {2.0, 3.0, 4.0}) {
    const auto phi = YoungFunction::power(p);
    const Complementary psi(phi);
    for (double x : log_grid(0.1, 10.0, 16)) {
      const double back = conjugate_value([&](double y) { return psi.at_nonneg(y); }, x);
      EXPECT_NEAR(back, phi(x), 1e-6 * phi(x)) << "p=" << p << " x=" << x;
    }
  }
}

TEST(Delta2, PowerLogSymbolic) {
  const auto r = is_delta2(make_phi_p_gamma(3, 0));
  EXPECT_TRUE(r.holds());
  ASSERT_TRUE(r.asymptotic_ratio);
  EXPECT_EQ(*r.asymptotic_ratio, 8.0);
  EXPECT_NEAR(r.k_estimate, 8.0, 1e-12);

  const auto s = is_delta2(make_phi_p_gamma(2, 1));
  EXPECT_TRUE(s.holds());
  EXPECT_EQ(*s.asymptotic_ratio, 4.0);
  EXPECT_GT(s.trend.back().second, 4.0);
  EXPECT_LT(s.trend.back().second, 4.4);
}

TEST(Delta2, NumericCertificateForCustomPower) {
  const auto r = is_delta2(YoungFunction::custom("abs(x)^3 + x^2"));
  EXPECT_TRUE(r.holds());
  EXPECT_FALSE(r.symbolic);
  EXPECT_LE(r.k_estimate, 8.0 + 1e-9);
}

TEST(Delta2, ExponentialRefuted) {
  const auto r = is_delta2(YoungFunction::custom("exp(abs(x)) - 1"));
  EXPECT_FALSE(r.holds());
  EXPECT_GT(r.trend.back().second, 1e6);
}

TEST(Delta2, DegenerateFunction) {
  // zero on [0, 1]
  const auto phi = YoungFunction::custom("(abs(x) - 1 + abs(abs(x) - 1)) / 2");
  EXPECT_EQ(code_of([&] { is_delta2(phi); }), ErrorCode::degenerate_function);
  EXPECT_TRUE(is_delta2(phi, 2.0).holds());
}

TEST(SmallSlope, Examples) {
  const auto pos = small_x_slope(YoungFunction::custom("abs(x) + x^2"));
  EXPECT_EQ(pos.kind, SlopeKind::positive);
  EXPECT_NEAR(pos.infimum_estimate, 1.0, 1e-11);
  EXPECT_EQ(small_x_slope(YoungFunction::power(2)).kind, SlopeKind::zero);
  EXPECT_EQ(small_x_slope(make_phi_p_gamma(3, 1)).kind, SlopeKind::zero);
  EXPECT_EQ(small_x_slope(YoungFunction::power(1.5)).kind, SlopeKind::zero);
}

TEST(SmallSlope, RatiosMonotoneForConvex) {
  const auto s = small_x_slope(make_phi_p_gamma(1.2, 0.3));
  for (std::size_t i = 1; i < s.ratios.size(); ++i) {
    EXPECT_LE(s.ratios[i].second, s.ratios[i - 1].second);
  }
}

TEST(SmallSlope, GridValidation) {
  EXPECT_EQ(code_of([] { small_x_slope(YoungFunction::power(2), {0.1}); }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { small_x_slope(YoungFunction::power(2), {0.1, 0.2}); }),
            ErrorCode::invalid_argument);
}
