#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qorbit/orbits.hpp"
#include "qorbit/scalars/parse.hpp"

using namespace qorbit;

namespace {

RF P(std::string_view s) { return parse_expression(s); }

OrbitData orbit(std::vector<long> ev, std::vector<unsigned> mult) {
  std::vector<RF> e;
  for (long x : ev) e.emplace_back(x);
  return make_orbit(e, mult);
}

OrbitData symbolic_orbit(const std::string& prefix, std::size_t l, std::vector<unsigned> mult) {
  std::vector<RF> e;
  for (std::size_t i = 1; i <= l; ++i) e.push_back(RF::variable(prefix + std::to_string(i)));
  return make_orbit(e, mult);
}

}  // namespace

TEST(MakeOrbit, Validation) {
  EXPECT_EQ(orbit({0, 1, 2}, {1, 1, 1}).n(), 3u);
  EXPECT_THROW(orbit({0, 0}, {1, 1}), DomainError);
  EXPECT_THROW(orbit({0, 1}, {1, 0}), DomainError);
  EXPECT_THROW(orbit({0, 1}, {1}), DomainError);
  EXPECT_THROW(orbit({}, {}), DomainError);
}

TEST(MakeOrbit, SymbolicRecordsAssumption) {
  OrbitData o = symbolic_orbit("l", 2, {2, 3});
  EXPECT_EQ(o.n(), 5u);
  ASSERT_EQ(o.assumptions.size(), 1u);
  EXPECT_EQ(o.assumptions[0], "l1 - l2 != 0");
}

TEST(Interpolation, WorkedExample) {
  RFPoly p = interpolation_poly(orbit({0, 1, 2}, {1, 1, 1}), orbit({0, 5}, {1, 2}), 0, 0);
  // 5 - 5/2 (x-1)(x-2) = -5/2 x^2 + 15/2 x
  EXPECT_EQ(p, RFPoly({RF(0), RF(Rational(15, 2)), RF(Rational(-5, 2))}));
  EXPECT_EQ(p(RF(0)), RF(0));
  EXPECT_EQ(p(RF(1)), RF(5));
  EXPECT_EQ(p(RF(2)), RF(5));
}

TEST(Interpolation, TwoNodesIsAffine) {
  OrbitData s = symbolic_orbit("l", 2, {1, 1}), t = symbolic_orbit("m", 2, {1, 1});
  RFPoly p = interpolation_poly(s, t, 0, 0);
  RFPoly expected = RFPoly({P("(m1 - m2)*(-l2)/(l1 - l2) + m2"), P("(m1 - m2)/(l1 - l2)")});
  EXPECT_EQ(p, expected);
  RFPoly id = interpolation_poly(s, s, 0, 0);
  EXPECT_EQ(id, RFPoly::x());
}

TEST(Interpolation, NonSymmetricTargetIsAnError) {
  EXPECT_THROW(interpolation_poly(orbit({0, 1, 2}, {1, 1, 1}), orbit({0, 1, 2}, {1, 1, 1}), 0, 0), DomainError);
}

TEST(Classify, WorkedExample) {
  BundleVerdict v = classify_poisson_bundle(orbit({0, 1, 2}, {1, 1, 1}), orbit({0, 5}, {1, 2}));
  ASSERT_TRUE(v.is_poisson);
  // each eigenvalue of multiplicity 1 may be the one sent to 0
  ASSERT_EQ(v.configurations.size(), 3u);
  const auto& c = v.configurations[0];
  EXPECT_EQ(c.p, RFPoly({RF(0), RF(Rational(15, 2)), RF(Rational(-5, 2))}));
  EXPECT_EQ(c.a_source, RF(0));
  BracketCoefficients coeffs{{RF(0), RF(1), RF(2)}, c.a_source};
  EXPECT_EQ(coeffs(0, 1), RF(-1));
  EXPECT_EQ(coeffs(0, 2), RF(-1));
  ASSERT_TRUE(c.solved.a);
  EXPECT_EQ(*c.solved.a, RF(0));
}

TEST(Classify, NonSymmetricTargetRejected) {
  BundleVerdict v = classify_poisson_bundle(orbit({1, 2, 3, 4}, {1, 1, 1, 1}), orbit({7, 8, 9}, {2, 1, 1}));
  EXPECT_FALSE(v.is_poisson);
  EXPECT_EQ(v.failure_reason.value_or(""), "target not symmetric");
  EXPECT_FALSE(v.witnesses.empty());
}

TEST(Classify, DistinguishedNeedNotBeFirst) {
  BundleVerdict v = classify_poisson_bundle(orbit({0, 1, 2}, {2, 1, 1}), orbit({0, 5}, {1, 3}));
  ASSERT_TRUE(v.is_poisson);
  ASSERT_EQ(v.configurations.size(), 2u);
  EXPECT_EQ(v.configurations[0].source_index, 1u);
  EXPECT_EQ(v.configurations[0].a_source, RF(-2));
  EXPECT_EQ(v.configurations[1].source_index, 2u);
  EXPECT_EQ(v.configurations[1].a_source, RF(-4));
}

TEST(Classify, PointSourceIsNotAnInstance) {
  BundleVerdict v = classify_poisson_bundle(orbit({3}, {2}), orbit({0, 5}, {1, 1}));
  EXPECT_FALSE(v.is_poisson);
  EXPECT_NE(v.failure_reason.value_or("").find("not a bundle instance"), std::string::npos);
}

TEST(Classify, IdentityOnTwoEigenvaluesHasBothMatchings) {
  OrbitData o = orbit({1, 4}, {2, 2});
  BundleVerdict v = classify_poisson_bundle(o, o);
  ASSERT_TRUE(v.is_poisson);
  // (distinguished source, distinguished target) ranges over all four pairs
  ASSERT_EQ(v.configurations.size(), 4u);
  for (const auto& c : v.configurations) EXPECT_TRUE(c.passes());
  EXPECT_NE(v.configurations[0].a_source, v.configurations[2].a_source);
  EXPECT_EQ(v.configurations[0].p, RFPoly::x());
}

TEST(Projectability, TwoComponentsWithDistinguishedValue) {
  BundleGraph g{{0, 1, 1}, 2};
  BracketCoefficients c{{P("l1"), P("l2"), P("l3")}, P("-2*l1")};
  EXPECT_TRUE(check_coefficient_projectability(g, c).projectable);
}

TEST(Projectability, ThreeComponentsInconsistentSymbolically) {
  // i | i+1, j | j+1 as in the three-block picture: components {0}, {1,2}, {3}
  BundleGraph g{{0, 1, 1, 2}, 3};
  std::vector<RF> lam{P("l1"), P("l2"), P("l3"), P("l4")};
  BracketSolution s = solve_bracket_parameter(g, lam);
  EXPECT_FALSE(s.consistent);
  ASSERT_EQ(s.witness.size(), 2u);
  EXPECT_NE(*s.witness[0].solution, *s.witness[1].solution);
  BracketCoefficients c{lam, P("a")};
  auto r = check_coefficient_projectability(g, c);
  EXPECT_FALSE(r.projectable);
  EXPECT_TRUE(r.witness.has_value());
}

TEST(Projectability, TwoSingleEdgesVacuous) {
  BundleGraph g{{0, 1}, 2};
  BracketCoefficients c{{P("l1"), P("l2")}, P("a")};
  EXPECT_TRUE(check_coefficient_projectability(g, c).projectable);
  EXPECT_FALSE(solve_bracket_parameter(g, c.lambda).a.has_value());
}

TEST(Projectability, TwoLargeComponentsInconsistent) {
  BundleGraph g{{0, 0, 1, 1}, 2};
  BracketSolution s = solve_bracket_parameter(g, {P("l1"), P("l2"), P("l3"), P("l4")});
  EXPECT_FALSE(s.consistent);
}

TEST(Properties, InterpolationReproducesTargets) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int it = 0; it < 20; ++it) {
    std::vector<long> ev;
    while (ev.size() < 4) {
      long x = d(rng);
      if (std::find(ev.begin(), ev.end(), x) == ev.end()) ev.push_back(x);
    }
    OrbitData s = orbit(ev, {1, 1, 1, 1});
    long m1 = d(rng), m2 = m1 + 1 + (d(rng) & 7);
    OrbitData t = orbit({m1, m2}, {1, 3});
    for (std::size_t ds = 0; ds < 4; ++ds) {
      RFPoly p = interpolation_poly(s, t, ds, 0);
      for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(p(RF(ev[i])), RF(i == ds ? m1 : m2));
    }
  }
}

TEST(Properties, VerdictInvariantUnderPermutation) {
  OrbitData s = orbit({0, 1, 2}, {2, 1, 1}), t = orbit({0, 5}, {1, 3});
  std::vector<std::size_t> perm{0, 1, 2};
  bool base = classify_poisson_bundle(s, t).is_poisson;
  do {
    std::vector<RF> ev;
    std::vector<unsigned> mult;
    for (std::size_t i : perm) {
      ev.push_back(s.eigenvalues[i]);
      mult.push_back(s.multiplicities[i]);
    }
    OrbitData sp = make_orbit(ev, mult);
    OrbitData tp = orbit({5, 0}, {3, 1});
    EXPECT_EQ(classify_poisson_bundle(sp, t).is_poisson, base);
    EXPECT_EQ(classify_poisson_bundle(sp, tp).is_poisson, base);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Properties, SymbolicConfigurationsForceDistinguishedA) {
  for (std::size_t l = 2; l <= 5; ++l) {
    OrbitData s = symbolic_orbit("l", l, std::vector<unsigned>(l, 1));
    OrbitData t = make_orbit({P("m1"), P("m2")}, {1, static_cast<unsigned>(l - 1)});
    BundleVerdict v = classify_poisson_bundle(s, t);
    ASSERT_TRUE(v.is_poisson) << l;
    for (const auto& c : v.configurations) {
      EXPECT_EQ(c.a_source, RF(-2) * s.eigenvalues[c.source_index]);
      EXPECT_TRUE(c.distinguished_coefficients_minus_one);
      if (l > 2) {
        ASSERT_TRUE(c.solved.a);
        EXPECT_EQ(*c.solved.a, c.a_source);
      }
    }
  }
}
