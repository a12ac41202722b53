#include <gtest/gtest.h>

#include <random>

#include "qorbit/scalars/parse.hpp"
#include "qorbit/scalars/rational_function.hpp"

using namespace qorbit;

namespace {

RF P(std::string_view s) { return parse_expression(s); }

// Random rational function in x, y, z with small integer coefficients.
RF random_rf(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
  auto poly = [&] {
    Polynomial p;
    for (int k = 0; k < 3; ++k) {
      Monomial m = Monomial::of(var("x"), deg(rng)) * Monomial::of(var("y"), deg(rng)) * Monomial::of(var("z"), deg(rng) / 2);
      p += Polynomial::monomial(m, coef(rng));
    }
    return p;
  };
  Polynomial d;
  while (d.is_zero()) d = poly();
  return RF(poly(), d);
}

}  // namespace

TEST(Rational, AddsExactly) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
  EXPECT_THROW(parse_rational("1/0"), DivisionByZero);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Polynomial, GcdCancelsCommonFactor) {
  RF f(P("x^2 - 1").numerator(), P("x - 1").numerator());
  EXPECT_EQ(f, P("x + 1"));
  EXPECT_TRUE(f.is_polynomial());
}

TEST(Polynomial, MultivariateGcd) {
  Polynomial a = P("(x + y)*(x - 2*z)*(y^2 + z)").numerator();
  Polynomial b = P("(x + y)^2*(y^2 + z)*(x + 1)").numerator();
  EXPECT_EQ(gcd(a, b), P("(x + y)*(y^2 + z)").numerator().monic());
  EXPECT_EQ(gcd(P("x^3*y").numerator(), P("x*y^2 + x^2").numerator()), P("x").numerator());
  EXPECT_TRUE(gcd(P("x + y").numerator(), P("x - y").numerator()).is_constant());
}

TEST(RationalFunction, OmegaCancellation) {
  // (1 - (1 - w*nu1))/w = nu1
  EXPECT_EQ(P("(1 - (1 - w*nu1))/w"), P("nu1"));
}

TEST(RationalFunction, DivisionByZeroThrows) {
  EXPECT_THROW(P("x") / RF(0), DivisionByZero);
  EXPECT_THROW(RF(Polynomial(1), Polynomial()), DivisionByZero);
  EXPECT_THROW(P("1/(x - x)"), DivisionByZero);
}

TEST(RationalFunction, CanonicalDenominator) {
  RF f = P("(2*x)/(4*x^2 - 6*y)");
  EXPECT_EQ(f.denominator().leading_coeff(), Rational(2));  // 2x^2 - 3y
  EXPECT_EQ(f, P("x/(2*x^2 - 3*y)"));
  EXPECT_EQ(P("0/(x+1)").denominator(), Polynomial(1));
  EXPECT_EQ(P("-1/(-x)"), P("1/x"));
}

TEST(RationalFunction, PrintParseRoundTrip) {
  for (const char* s : {"(q^2 - 1)/q", "3/2*l1 + a", "-x/(x*y + 2)", "1/q^2", "-5/2*x^2 + 15/2*x", "0"}) {
    RF f = P(s);
    EXPECT_EQ(P(f.to_string()), f) << s;
  }
  EXPECT_EQ(P("(q^2 - 1)/q").to_string(), "(q^2 - 1)/q");
  EXPECT_EQ(P("q^-2"), P("1/q^2"));
}

TEST(Specialize, BracketCoefficientAtDistinguishedValue) {
  RF c = P("(l1 + l2 + a)/(l1 - l2)");
  EXPECT_EQ(specialize(c, {{"a", P("-2*l1")}}), RF(-1));
}

TEST(Specialize, OmegaToZero) { EXPECT_EQ(specialize(P("w"), {{"w", RF(0)}}), RF(0)); }

TEST(Specialize, QIntegerClassicalLimit) {
  RF two_hat = P("(1 - q^-4)/(1 - q^-2)");
  EXPECT_EQ(two_hat, P("1 + q^-2"));
  EXPECT_EQ(specialize(two_hat, {{"q", RF(1)}}), RF(2));
}

TEST(Specialize, PartialAndRationalBindings) {
  RF f = P("(x + y)/(x - z)");
  EXPECT_EQ(specialize(f, {{"x", P("1/y")}}), P("(1 + y^2)/(1 - y*z)"));
  EXPECT_EQ(specialize(f, {{"z", RF(0)}}), P("1 + y/x"));
}

TEST(Specialize, VanishingDenominatorIsIllegal) {
  RF f = P("1/(l1 - l2)");
  EXPECT_THROW(specialize(f, {{"l1", P("l2")}}), IllegalSpecialization);
}

TEST(IsPolynomialIn, Examples) {
  EXPECT_TRUE(is_polynomial_in(P("nu1*w + 3"), {var("w")}));
  EXPECT_FALSE(is_polynomial_in(P("1/(l1 - l2)"), {var("l1")}));
  EXPECT_TRUE(is_polynomial_in(P("w/(l1 - l2)"), {var("w")}));
}

TEST(Properties, CanonicalFormIsUnique) {
  std::mt19937 rng(7);
  for (int it = 0; it < 60; ++it) {
    RF a = random_rf(rng), b = random_rf(rng), c = random_rf(rng);
    // (a + b) c built two ways
    RF lhs = (a + b) * c, rhs = a * c + b * c;
    EXPECT_EQ(lhs, rhs);
    EXPECT_TRUE((lhs - rhs).is_zero());
    EXPECT_EQ((a + b) - b, a);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
}

TEST(Properties, SpecializeCommutesWithArithmetic) {
  std::mt19937 rng(11);
  std::map<VarId, RF> bind{{var("x"), P("y + 2")}, {var("z"), RF(Rational(3, 7))}};
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    RF a = random_rf(rng), b = random_rf(rng);
    try {
      RF sa = specialize(a, bind), sb = specialize(b, bind);
      EXPECT_EQ(specialize(a * b, bind), sa * sb);
      EXPECT_EQ(specialize(a + b, bind), sa + sb);
      ++checked;
    } catch (const IllegalSpecialization&) {
    }
  }
  EXPECT_GT(checked, 30);
}
