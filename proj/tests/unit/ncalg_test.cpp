#include <gtest/gtest.h>

#include <chrono>

#include "qorbit/ncalg/ideal.hpp"
#include "qorbit/quantorbit.hpp"
#include "qorbit/scalars/parse.hpp"

using namespace qorbit;

namespace {

RF P(std::string_view s) { return parse_expression(s); }

struct HeckeAlgebra {
  AlphabetPtr alpha = make_alphabet({"S", "L"});
  NCPoly s = NCPoly::generator(alpha, "S");
  NCPoly l = NCPoly::generator(alpha, "L");
  NCPoly one = NCPoly::constant(alpha, RF(1));
};

// Rank of the span of the degree-d parts.
std::size_t homogeneous_rank(const std::vector<NCPoly>& rels, std::size_t d) {
  LinearSpan span;
  for (const auto& r : rels) span.insert(r.homogeneous_part(d));
  return span.rank();
}

}  // namespace

TEST(NCPoly, Commutators) {
  auto alpha = make_alphabet({"x", "y"});
  NCPoly x = NCPoly::generator(alpha, "x"), y = NCPoly::generator(alpha, "y");
  EXPECT_TRUE(commutator(x, x).is_zero());
  NCPoly c = commutator(x, y);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.coefficient({0, 1}), RF(1));
  EXPECT_EQ(c.coefficient({1, 0}), RF(-1));
  EXPECT_EQ(c.to_string(), "-y*x + x*y");
}

TEST(NCPoly, DifferentAlphabetsAreRejected) {
  NCPoly x = NCPoly::generator(make_alphabet({"x"}), "x");
  NCPoly z = NCPoly::generator(make_alphabet({"z"}), "z");
  EXPECT_THROW(x + z, DomainError);
}

TEST(NCMatrix, SecondLegEntries) {
  auto alpha = matrix_alphabet(2);
  NCMatrix l2 = second_leg(generator_matrix(alpha, 2));
  ASSERT_EQ(l2.rows(), 4u);
  EXPECT_EQ(l2(0, 0), NCPoly::generator(alpha, "L11"));
  EXPECT_EQ(l2(0, 1), NCPoly::generator(alpha, "L12"));
  EXPECT_EQ(l2(3, 2), NCPoly::generator(alpha, "L21"));
  EXPECT_TRUE(l2(0, 2).is_zero());
}

TEST(NCMatrix, ShapeMismatchThrows) {
  NCMatrix a(2, 2), b(3, 3);
  EXPECT_THROW(a + b, DomainError);
  EXPECT_THROW(a * b, DomainError);
}

TEST(RelationEntries, EqualSidesGiveNothing) {
  auto alpha = matrix_alphabet(2);
  NCMatrix l = generator_matrix(alpha, 2);
  EXPECT_TRUE(matrix_relation_entries(l, l).empty());
}

TEST(RelationEntries, DeduplicatesScalarMultiples) {
  auto alpha = make_alphabet({"x", "y"});
  NCPoly x = NCPoly::generator(alpha, "x"), y = NCPoly::generator(alpha, "y");
  NCMatrix lhs(1, 3), rhs(1, 3);
  lhs(0, 0) = x * y;
  lhs(0, 1) = P("q") * (x * y);
  lhs(0, 2) = y;
  EXPECT_EQ(matrix_relation_entries(lhs, rhs).size(), 2u);
}

TEST(MRE, RankOneHasNoRelations) { EXPECT_TRUE(mre_relations(1, P("t")).relations.empty()); }

TEST(MRE, RankTwoQuadraticSpan) {
  auto alg = mre_relations(2, P("t"));
  EXPECT_LE(alg.relations.size(), 12u);  // 12 nonzero entries before removing multiples
  EXPECT_EQ(homogeneous_rank(alg.relations, 2), 6u);
}

TEST(MRE, ZeroTIsQuadratic) {
  auto alg = mre_relations(2, RF(0));
  ASSERT_FALSE(alg.relations.empty());
  for (const auto& r : alg.relations) EXPECT_EQ(r.homogeneous_part(2), r);
}

TEST(QuotientDimension, FreeAlgebra) {
  EXPECT_EQ(quotient_dimension(matrix_alphabet(2), {}, 2), 21u);
}

TEST(QuotientDimension, MonotoneInGenerators) {
  auto alg = mre_relations(2, P("t"));
  std::vector<NCPoly> some(alg.relations.begin(), alg.relations.begin() + 3);
  std::size_t d_some = quotient_dimension(alg.alphabet, some, 2);
  EXPECT_LE(quotient_dimension(alg.alphabet, alg.relations, 2), d_some);
  EXPECT_LE(d_some, 21u);
}

TEST(QuotientDimension, MRERankTwoMatchesCommutative) {
  auto alg = mre_relations(2, P("t"));
  EXPECT_EQ(quotient_dimension(alg.alphabet, alg.relations, 2), 15u);
  EXPECT_EQ(quotient_dimension(alg.alphabet, alg.relations, 3), 35u);
}

TEST(Membership, GeneratorIsTrivialMember) {
  HeckeAlgebra h;
  std::vector<NCPoly> gens{commutator(h.s * h.l * h.s, h.l), h.s * h.s - P("alpha") * h.s - h.one,
                           h.l * h.l - P("beta") * h.l};
  auto res = ideal_membership(gens, gens[0], 4);
  ASSERT_TRUE(res.certificate);
  ASSERT_EQ(res.certificate->combination.size(), 1u);
  EXPECT_TRUE(res.certificate->combination[0].left.empty());
  EXPECT_EQ(res.certificate->combination[0].coefficient, RF(1));
  EXPECT_TRUE(verify_certificate(gens, *res.certificate));
}

TEST(Membership, BoundBelowTargetDegreeIsAnError) {
  HeckeAlgebra h;
  EXPECT_THROW(ideal_membership({h.s}, h.s * h.s * h.s, 2), DomainError);
}

TEST(Membership, NonMemberIsInconclusive) {
  HeckeAlgebra h;
  auto res = ideal_membership({h.s * h.s}, h.l, 4);
  EXPECT_FALSE(res.certificate);
  EXPECT_EQ(res.degree_bound, 4u);
}

TEST(Membership, HeckeQuadratic) {
  HeckeAlgebra h;
  NCPoly l2 = h.l * h.l;
  std::vector<NCPoly> gens{commutator(h.s * h.l * h.s, h.l), h.s * h.s - P("alpha") * h.s - h.one,
                           h.l * l2 - P("beta") * h.l};
  NCPoly target = commutator(h.s * l2 * h.s, l2);
  auto start = std::chrono::steady_clock::now();
  auto res = ideal_membership(gens, target, 8);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_TRUE(res.certificate);
  EXPECT_TRUE(verify_certificate(gens, *res.certificate));
  std::cerr << "certificate terms " << res.certificate->combination.size() << ", spanning " << res.spanning_elements
            << ", " << secs << " s\n";
}
