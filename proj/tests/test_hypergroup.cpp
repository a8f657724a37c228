#include <gtest/gtest.h>

#include <vector>

#include "hyperorlicz/hypergroup.hpp"
#include "hyperorlicz/hypergroup_analysis.hpp"

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

FiniteMeasure m(std::initializer_list<FiniteMeasure::Entry> e) { return FiniteMeasure(e); }

// {0, 1} with δ1 ∗ δ1 = q δ0 + (1-q) δ1, Haar h(1) = 1/q
TableSpec two_point(double q) {
  TableSpec s;
  s.points = {0, 1};
  s.involution = {0, 1};
  s.identity = 0;
  s.haar = {1.0, 1.0 / q};
  s.table = {{0, 0, {0}, {1.0}},
             {0, 1, {1}, {1.0}},
             {1, 0, {1}, {1.0}},
             {1, 1, {0, 1}, {q, 1.0 - q}}};
  return s;
}

}  // namespace

TEST(Builtins, Integers) {
  const auto Z = DiscreteHypergroup::integers();
  EXPECT_EQ(Z.conv(2, 3), FiniteMeasure::point(5));
  EXPECT_EQ(Z.inv(7), -7);
  EXPECT_EQ(Z.haar(-4), 1.0);
  EXPECT_TRUE(Z.is_group());
  EXPECT_FALSE(Z.is_finite());
}

TEST(Builtins, Chebyshev) {
  const auto C = DiscreteHypergroup::chebyshev();
  EXPECT_EQ(C.conv(1, 1), m({{0, 0.5}, {2, 0.5}}));
  EXPECT_EQ(C.conv(0, 4), FiniteMeasure::point(4));
  EXPECT_EQ(C.conv(5, 2), m({{3, 0.5}, {7, 0.5}}));
  EXPECT_EQ(C.haar(0), 1.0);
  EXPECT_EQ(C.haar(3), 2.0);
  EXPECT_EQ(C.inv(9), 9);
  EXPECT_EQ(code_of([&] { C.conv(-1, 2); }), ErrorCode::invalid_argument);
}

TEST(Builtins, Cyclic) {
  const auto Z3 = DiscreteHypergroup::cyclic(3);
  EXPECT_EQ(Z3.conv(1, 2), FiniteMeasure::point(0));
  EXPECT_EQ(Z3.inv(1), 2);
  EXPECT_EQ(Z3.inv(0), 0);
  EXPECT_EQ(Z3.carrier_points(), (std::vector<Point>{0, 1, 2}));
  EXPECT_EQ(code_of([&] { Z3.conv(3, 0); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { DiscreteHypergroup::cyclic(0); }), ErrorCode::invalid_argument);
}

TEST(Builtins, DyadicConstantsSumExactly) {
  const auto C = DiscreteHypergroup::chebyshev();
  for (Point x = 0; x <= 20; ++x) {
    for (Point y = 0; y <= 20; ++y) EXPECT_EQ(C.conv(x, y).total_mass(), 1.0);
  }
}

TEST(Halo, OverflowIsAnError) {
  const auto Z = DiscreteHypergroup::integers().with_halo({-10, 10});
  EXPECT_EQ(Z.conv(5, 5), FiniteMeasure::point(10));
  EXPECT_EQ(code_of([&] { Z.conv(6, 5); }), ErrorCode::boundary_overflow);
  EXPECT_EQ(code_of([&] { Z.inv(11); }), ErrorCode::boundary_overflow);
  const auto C = DiscreteHypergroup::chebyshev().with_halo({0, 20});
  EXPECT_EQ(code_of([&] { validate_axioms(C, {0, 20}); }), ErrorCode::boundary_overflow);
}

TEST(Table, BuildsAndValidates) {
  const auto H = DiscreteHypergroup::from_table(two_point(0.25));
  EXPECT_EQ(H.conv(1, 1), m({{0, 0.25}, {1, 0.75}}));
  EXPECT_EQ(H.haar(1), 4.0);
  const auto rep = validate_axioms(H, {0, 1});
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(center(H, {0, 1}).points, (std::vector<Point>{0}));
}

TEST(Table, Errors) {
  auto s = two_point(0.5);
  s.table[3].weights = {0.5, 0.6};
  EXPECT_EQ(code_of([&] { DiscreteHypergroup::from_table(s); }), ErrorCode::invalid_table);
  s = two_point(0.5);
  s.involution = {0, 0};
  EXPECT_EQ(code_of([&] { DiscreteHypergroup::from_table(s); }), ErrorCode::invalid_table);
  s = two_point(0.5);
  s.identity = 5;
  EXPECT_EQ(code_of([&] { DiscreteHypergroup::from_table(s); }), ErrorCode::invalid_table);
  s = two_point(0.5);
  s.haar = {1.0, -1.0};
  EXPECT_EQ(code_of([&] { DiscreteHypergroup::from_table(s); }), ErrorCode::invalid_table);
  s = two_point(0.5);
  s.table[3].support = {0, 9};
  EXPECT_EQ(code_of([&] { DiscreteHypergroup::from_table(s); }), ErrorCode::invalid_table);
  s = two_point(0.5);
  s.table.pop_back();
  const auto H = DiscreteHypergroup::from_table(s);
  EXPECT_EQ(code_of([&] { H.conv(1, 1); }), ErrorCode::boundary_overflow);
}

TEST(Validate, BuiltinsPass) {
  EXPECT_TRUE(validate_axioms(DiscreteHypergroup::integers(), {-10, 10}).passed());
  const auto rep = validate_axioms(DiscreteHypergroup::chebyshev(), {0, 20});
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.checks.size(), 6u);
  EXPECT_TRUE(rep.commutative);
  for (Point m_ = 1; m_ <= 12; ++m_) {
    EXPECT_TRUE(validate_axioms(DiscreteHypergroup::cyclic(m_), {0, m_ - 1}).passed()) << m_;
  }
}

TEST(Validate, CorruptedChebyshevFailsWithWitness) {
  const auto bad = DiscreteHypergroup::chebyshev().with_entry(1, 1, m({{0, 0.6}, {2, 0.4}}));
  const auto rep = validate_axioms(bad, {0, 20});
  EXPECT_FALSE(rep.passed());
  const auto& assoc = rep.check("associativity");
  EXPECT_FALSE(assoc.passed);
  EXPECT_EQ(assoc.witness_points.size(), 3u);
  EXPECT_FALSE(rep.check("haar_invariance").passed);
  EXPECT_FALSE(rep.check("haar_invariance").witness_points.empty());
  EXPECT_TRUE(rep.check("probability").passed);
}

TEST(Validate, BrokenIdentityAndSupport) {
  const auto Z = DiscreteHypergroup::integers();
  const auto bad = Z.with_entry(0, 3, FiniteMeasure::point(4));
  const auto rep = validate_axioms(bad, {-5, 5});
  EXPECT_FALSE(rep.check("identity").passed);
  const auto bad2 = Z.with_entry(2, 3, m({{5, 0.5}, {0, 0.5}}));
  EXPECT_FALSE(validate_axioms(bad2, {-5, 5}).check("identity_support").passed);
  const auto bad3 = Z.with_entry(2, 3, m({{5, 0.5}, {6, 0.6}}));
  EXPECT_FALSE(validate_axioms(bad3, {-5, 5}).check("probability").passed);
}

TEST(Properties, AssociativityBruteForce) {
  const auto C = DiscreteHypergroup::chebyshev();
  for (Point x = 0; x < 6; ++x) {
    for (Point y = 0; y < 6; ++y) {
      for (Point z = 0; z < 6; ++z) {
        const auto lhs = convolve_measures(C, C.conv(x, y), FiniteMeasure::point(z));
        const auto rhs = convolve_measures(C, FiniteMeasure::point(x), C.conv(y, z));
        EXPECT_LE((lhs - rhs).max_abs(), 1e-15);
      }
    }
  }
}

TEST(Properties, Commutative) {
  for (const auto& H : {DiscreteHypergroup::integers(), DiscreteHypergroup::chebyshev(),
                        DiscreteHypergroup::cyclic(7)}) {
    for (Point x : H.points_in({-6, 6})) {
      for (Point y : H.points_in({-6, 6})) EXPECT_EQ(H.conv(x, y), H.conv(y, x));
    }
  }
}

TEST(Properties, ChebyshevHaarAtPointMasses) {
  const auto C = DiscreteHypergroup::chebyshev();
  for (Point z = 0; z <= 8; ++z) {
    for (Point t = 0; t <= 8; ++t) {
      double s = 0.0;
      for (Point x = 0; x <= 30; ++x) s += C.haar(x) * C.conv(z, x)(t);
      EXPECT_DOUBLE_EQ(s, C.haar(t));
    }
  }
}

TEST(Convolution, Measures) {
  const auto Z = DiscreteHypergroup::integers();
  EXPECT_EQ(convolve_measures(Z, FiniteMeasure::point(1), FiniteMeasure::point(2)),
            FiniteMeasure::point(3));
  const auto C = DiscreteHypergroup::chebyshev();
  EXPECT_EQ(convolve_measures(C, m({{0, 0.5}, {1, 0.5}}), FiniteMeasure::point(1)),
            m({{0, 0.25}, {1, 0.5}, {2, 0.25}}));
  const auto mu = m({{2, 0.3}, {5, -1.5}});
  EXPECT_EQ(convolve_measures(C, FiniteMeasure::point(0), mu), mu);
  // probability measures stay probability measures
  const auto p = convolve_measures(C, m({{1, 0.5}, {3, 0.5}}), m({{2, 0.25}, {4, 0.75}}));
  EXPECT_TRUE(p.is_probability());
}

TEST(Convolution, ComplexMeasuresBilinear) {
  const auto C = DiscreteHypergroup::chebyshev();
  using cd = std::complex<double>;
  const ComplexMeasure a({{1, cd(1, 2)}, {2, cd(0, -1)}});
  const ComplexMeasure b({{3, cd(2, 0)}});
  const auto ab = convolve_measures(C, a, b);
  EXPECT_EQ(ab.total_mass(), a.total_mass() * b.total_mass());
  const auto two = convolve_measures(C, a * cd(2, 0), b);
  EXPECT_LE((two - ab * cd(2, 0)).max_abs(), 1e-15);
}

TEST(Center, Examples) {
  const auto zc = center(DiscreteHypergroup::integers(), {-5, 5});
  EXPECT_EQ(zc.points.size(), 11u);
  EXPECT_TRUE(zc.truncation_relative);
  EXPECT_EQ(center(DiscreteHypergroup::chebyshev(), {0, 20}).points, (std::vector<Point>{0}));
  EXPECT_EQ(center(DiscreteHypergroup::cyclic(3), {0, 2}).points, (std::vector<Point>{0, 1, 2}));
}

TEST(SetTranslates, Examples) {
  const auto Z = DiscreteHypergroup::integers();
  EXPECT_EQ(translate_set(Z, 3, std::vector<Point>{0, 1}), (std::vector<Point>{3, 4}));
  const auto C = DiscreteHypergroup::chebyshev();
  EXPECT_EQ(translate_set(C, 1, std::vector<Point>{1}), (std::vector<Point>{0, 2}));
  const std::vector<Point> E{2, 5, 9};
  EXPECT_EQ(translate_set(C, 0, E), E);
  EXPECT_EQ(set_star(C, std::vector<Point>{0, 1}, std::vector<Point>{0, 1}),
            (std::vector<Point>{0, 1, 2}));
}

TEST(Aperiodic, Examples) {
  const auto Z = DiscreteHypergroup::integers();
  const std::vector<Point> E{-3, -2, -1, 0, 1, 2, 3};
  auto r = is_aperiodic(Z, 1, E, 64, {-10, 10});
  EXPECT_EQ(r.status, AperiodicityResult::Status::found);
  EXPECT_EQ(r.n, 7);
  r = is_aperiodic(Z, 2, std::vector<Point>{0, 1}, 64, {-10, 10});
  EXPECT_EQ(r.n, 1);
  r = is_aperiodic(DiscreteHypergroup::cyclic(5), 1, std::vector<Point>{0, 2}, 64, {0, 4});
  EXPECT_EQ(r.status, AperiodicityResult::Status::periodic);
  EXPECT_EQ(r.n, 5);
  EXPECT_EQ(code_of([] {
              is_aperiodic(DiscreteHypergroup::chebyshev(), 1, std::vector<Point>{0}, 8, {0, 20});
            }),
            ErrorCode::not_central);
}

TEST(Aperiodic, MatchesDiameterOnIntegers) {
  const auto Z = DiscreteHypergroup::integers();
  for (Point lo = -4; lo <= 0; ++lo) {
    for (Point hi = lo; hi <= 4; ++hi) {
      std::vector<Point> E;
      for (Point x = lo; x <= hi; x += 2) E.push_back(x);
      E.push_back(hi);
      const auto r = is_aperiodic(Z, 1, E, 64, {-10, 10});
      EXPECT_EQ(r.n, hi - lo + 1);
    }
  }
}

TEST(Invariance, CenterPreservesHaarMass) {
  const std::vector<Point> E{0, 1, 2};
  auto r = center_invariance_check(DiscreteHypergroup::integers(), 5, E, {-10, 10});
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.translated_mass, 3.0);
  EXPECT_TRUE(center_invariance_check(DiscreteHypergroup::chebyshev(), 0, E, {0, 20}).equal);
  EXPECT_TRUE(center_invariance_check(DiscreteHypergroup::cyclic(6), 2,
                                      std::vector<Point>{0, 1}, {0, 5}).equal);
}

TEST(Sparse, NormalizesAndMeasures) {
  const FiniteMeasure a({{3, 1.0}, {1, 2.0}, {3, -1.0}, {2, 0.0}});
  EXPECT_EQ(a.support(), (std::vector<Point>{1}));
  EXPECT_EQ(a(1), 2.0);
  EXPECT_EQ(a(7), 0.0);
  const FiniteMeasure b({{1, -0.5}, {4, 0.25}});
  EXPECT_EQ(b.total_variation(), 0.75);
  EXPECT_EQ(b.weighted_total_variation([](Point x) { return double(x); }), 1.5);
  EXPECT_FALSE(b.is_probability());
  EXPECT_TRUE(FiniteMeasure::point(4).is_probability());
  const auto ind = OrliczFunction<double>::indicator(std::vector<Point>{3, 1, 3});
  EXPECT_EQ(ind.size(), 2u);
}
