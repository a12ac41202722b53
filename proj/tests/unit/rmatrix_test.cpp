#include <gtest/gtest.h>

#include "qorbit/rmatrix.hpp"
#include "qorbit/scalars/parse.hpp"

using namespace qorbit;

namespace {
RF P(std::string_view s) { return parse_expression(s); }
}  // namespace

TEST(StandardR, RankOne) {
  RMatrix r = standard_r_matrix(1);
  ASSERT_EQ(r.entries.rows(), 1u);
  EXPECT_EQ(r.entries(0, 0), P("q"));
}

TEST(StandardR, RankZeroIsAnError) { EXPECT_THROW(standard_r_matrix(0), DomainError); }

TEST(StandardR, RankTwoEntries) {
  RMatrix r = standard_r_matrix(2);
  RFMatrix expected(4, 4);
  expected(0, 0) = P("q");
  expected(1, 1) = RF(1);
  expected(2, 2) = RF(1);
  expected(3, 3) = P("q");
  expected(1, 2) = P("q - 1/q");  // E_12 ⊗ E_21 sits at ((1,2),(2,1))
  EXPECT_EQ(r.entries, expected);
}

TEST(StandardR, ClassicalLimitIsIdentity) {
  for (std::size_t n : {2u, 3u}) {
    RFMatrix lim = standard_r_matrix(n).entries.map([](const RF& x) { return specialize(x, {{"q", RF(1)}}); });
    EXPECT_EQ(lim, RFMatrix::identity(n * n, RF(1)));
  }
}

TEST(Axioms, StandardPasses) {
  for (std::size_t n : {1u, 2u, 3u}) {
    AxiomReport rep = verify_rmatrix_axioms(standard_r_matrix(n));
    EXPECT_TRUE(rep.ybe) << n << " " << rep.ybe_first_nonzero.value_or("");
    EXPECT_TRUE(rep.hecke) << n << " " << rep.hecke_first_nonzero.value_or("");
  }
}

TEST(Axioms, IdentityFailsHecke) {
  RMatrix id{2, RFMatrix::identity(4, RF(1))};
  AxiomReport rep = verify_rmatrix_axioms(id);
  EXPECT_TRUE(rep.ybe);
  EXPECT_FALSE(rep.hecke);
  EXPECT_TRUE(rep.hecke_first_nonzero.has_value());
}

TEST(Axioms, HeckeFactoredForm) {
  for (std::size_t n : {2u, 3u}) {
    RFMatrix s = quantum_permutation(standard_r_matrix(n));
    RFMatrix id = RFMatrix::identity(n * n, RF(1));
    RFMatrix a = s - id.map([](const RF& x) { return x * P("q"); });
    RFMatrix b = s + id.map([](const RF& x) { return x * P("1/q"); });
    EXPECT_TRUE((a * b).is_zero());
  }
}

TEST(DMatrix, RankOne) {
  DMatrix d = compute_d_matrix(standard_r_matrix(1));
  EXPECT_EQ(d.entries(0, 0), RF(1));
}

// Reference values computed independently (sympy) and frozen.
TEST(DMatrix, RankTwo) {
  DMatrix d = compute_d_matrix(standard_r_matrix(2));
  EXPECT_TRUE(d.entries.is_diagonal());
  EXPECT_EQ(d.entries(0, 0), P("q^-2"));
  EXPECT_EQ(d.entries(1, 1), RF(1));
  EXPECT_EQ(d.trace(), P("1 + q^-2"));
  EXPECT_EQ(d.nu, P("q"));
}

TEST(DMatrix, RankThree) {
  DMatrix d = compute_d_matrix(standard_r_matrix(3));
  EXPECT_TRUE(d.entries.is_diagonal());
  EXPECT_EQ(d.entries(0, 0), P("q^-4"));
  EXPECT_EQ(d.entries(1, 1), P("q^-2"));
  EXPECT_EQ(d.entries(2, 2), RF(1));
  EXPECT_EQ(d.trace(), P("1 + q^-2 + q^-4"));
}

TEST(DMatrix, ClassicalLimitHasTraceN) {
  for (std::size_t n : {2u, 3u, 4u}) {
    DMatrix d = compute_d_matrix(standard_r_matrix(n));
    RFMatrix lim = d.entries.map([](const RF& x) { return specialize(x, {{"q", RF(1)}}); });
    EXPECT_EQ(lim, RFMatrix::identity(n, RF(1)));
  }
}

TEST(DMatrix, SingularPartialTransposeIsAnError) {
  RFMatrix m(4, 4);
  m(0, 0) = RF(1);
  EXPECT_THROW(compute_d_matrix(RMatrix{2, m}), DomainError);
}

TEST(QInteger, Values) {
  EXPECT_EQ(q_integer(1), RF(1));
  EXPECT_EQ(q_integer(3), P("(1 - q^-6)/(1 - q^-2)"));
}
