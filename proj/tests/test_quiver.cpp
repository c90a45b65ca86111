#include <gtest/gtest.h>

#include <functional>

#include <mapscat/quiver.hpp>

using namespace mapscat;

namespace {

// Oracle: number of paths (including trivial ones) in an acyclic quiver, by depth-first search.
std::size_t count_paths(const Quiver& q) {
  std::function<std::size_t(int)> from = [&](int v) {
    std::size_t n = 1;
    for (const Arrow& a : q.arrows)
      if (a.source == v) n += from(a.target);
    return n;
  };
  std::size_t total = 0;
  for (int v = 0; v < q.vertex_count; ++v) total += from(v);
  return total;
}

const Field kF(101);

}  // namespace

TEST(Algebra, PathAlgebraDimensionMatchesPathCount) {
  std::vector<Quiver> quivers = {
      {2, {{"a", 0, 1}}},
      {3, {{"alpha", 0, 1}, {"beta", 1, 2}}},
      {3, {{"alpha", 0, 1}, {"beta", 2, 1}}},
      {2, {{"x", 0, 1}, {"y", 0, 1}}},
      {4, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 3}}},
  };
  for (const Quiver& q : quivers) EXPECT_EQ(Algebra::create(kF, q, {})->dimension(), count_paths(q));
}

TEST(Algebra, ZeroRelationRemovesOnePath) {
  Quiver q{3, {{"alpha", 0, 1}, {"beta", 1, 2}}};
  AlgebraPtr a = Algebra::create(kF, q, {Relation{{Term{1, {0, 1}}}}});
  EXPECT_EQ(a->dimension(), 5u);
  std::vector<Scalar> nf = a->normal_form({0, 1});
  for (Scalar c : nf) EXPECT_EQ(c, 0u);
}

TEST(Algebra, CommutativeSquareIdentifiesTwoPaths) {
  Quiver q{4, {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}}};
  AlgebraPtr a = Algebra::create(kF, q, {Relation{{Term{1, {0, 1}}, Term{kF.neg(1), {2, 3}}}}});
  EXPECT_EQ(a->dimension(), count_paths(q) - 1);
  EXPECT_EQ(a->normal_form({0, 1}), a->normal_form({2, 3}));
}

TEST(Algebra, PathsBetweenPartitionTheBasis) {
  Quiver q{3, {{"alpha", 0, 1}, {"beta", 2, 1}}};
  AlgebraPtr a = Algebra::create(kF, q, {});
  std::size_t total = 0;
  for (int v = 0; v < 3; ++v)
    for (int w = 0; w < 3; ++w) total += a->paths_between(v, w).size();
  EXPECT_EQ(total, a->dimension());
  EXPECT_EQ(a->paths_between(0, 1).size(), 1u);
  EXPECT_EQ(a->paths_between(1, 0).size(), 0u);
}

TEST(Algebra, LoopNeedsANilpotentRelation) {
  Quiver q{1, {{"x", 0, 0}}};
  EXPECT_THROW(Algebra::create(kF, q, {}), AdmissibilityError);
  AlgebraPtr dual_numbers = Algebra::create(kF, q, {Relation{{Term{1, {0, 0}}}}});
  EXPECT_EQ(dual_numbers->dimension(), 2u);
}

TEST(Algebra, RejectsMalformedInput) {
  EXPECT_THROW(Algebra::create(kF, Quiver{2, {{"a", 0, 2}}}, {}), std::invalid_argument);
  EXPECT_THROW(Algebra::create(kF, Quiver{2, {{"a", 0, 1}, {"a", 1, 0}}}, {}), std::invalid_argument);
  // length-one relation is not admissible
  EXPECT_THROW(Algebra::create(kF, Quiver{2, {{"a", 0, 1}}}, {Relation{{Term{1, {0}}}}}), AdmissibilityError);
  // a.a is not a path for a: 1 -> 2
  EXPECT_THROW(Algebra::create(kF, Quiver{2, {{"a", 0, 1}}}, {Relation{{Term{1, {0, 0}}}}}), std::invalid_argument);
}

TEST(Algebra, OppositeIsAnInvolutionOnPointers) {
  AlgebraPtr a = Algebra::create(kF, Quiver{3, {{"alpha", 0, 1}, {"beta", 1, 2}}}, {Relation{{Term{1, {0, 1}}}}});
  AlgebraPtr op = opposite_algebra(a);
  EXPECT_EQ(op->dimension(), a->dimension());
  EXPECT_EQ(op->arrow(0).source, 1);
  EXPECT_EQ(opposite_algebra(op).get(), a.get());
}

TEST(Triangular, DimensionIsThreeTimesLambda) {
  // Γ = [[Λ,0],[Λ,Λ]] has dimension 3 dim Λ.
  std::vector<AlgebraPtr> lambdas = {
      Algebra::create(kF, Quiver{2, {{"a", 0, 1}}}, {}),
      Algebra::create(kF, Quiver{3, {{"alpha", 0, 1}, {"beta", 1, 2}}}, {}),
      Algebra::create(kF, Quiver{3, {{"alpha", 0, 1}, {"beta", 1, 2}}}, {Relation{{Term{1, {0, 1}}}}}),
      Algebra::create(kF, Quiver{3, {{"alpha", 0, 1}, {"beta", 2, 1}}}, {}),
  };
  for (const AlgebraPtr& l : lambdas) {
    TriangularAlgebra t = triangular_matrix_algebra(l);
    EXPECT_EQ(t.gamma->dimension(), 3 * l->dimension());
    EXPECT_EQ(t.gamma->vertex_count(), 2 * l->vertex_count());
    EXPECT_EQ(t.gamma->arrow_count(), 2 * l->arrow_count() + static_cast<std::size_t>(l->vertex_count()));
  }
}

TEST(Triangular, ArrowNamingAndConnectors) {
  AlgebraPtr l = Algebra::create(kF, Quiver{2, {{"a", 0, 1}}}, {});
  TriangularAlgebra t = triangular_matrix_algebra(l);
  EXPECT_EQ(t.gamma->arrow(t.second_copy_arrow(0)).name, "a'");
  EXPECT_EQ(t.gamma->arrow(t.connector(0)).name, "c1");
  EXPECT_EQ(t.gamma->arrow(t.connector(1)).source, 1);
  EXPECT_EQ(t.gamma->arrow(t.connector(1)).target, 3);
}
