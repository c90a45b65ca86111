#include <gtest/gtest.h>

#include <random>

#include <mapscat/decompose.hpp>
#include <mapscat/module.hpp>

using namespace mapscat;

namespace {

AlgebraPtr linear_a3(Field f) { return Algebra::create(f, Quiver{3, {{"alpha", 0, 1}, {"beta", 1, 2}}}, {}); }
AlgebraPtr alternating_a3(Field f) { return Algebra::create(f, Quiver{3, {{"alpha", 0, 1}, {"beta", 2, 1}}}, {}); }
AlgebraPtr a3_with_zero_relation(Field f) {
  return Algebra::create(f, Quiver{3, {{"alpha", 0, 1}, {"beta", 1, 2}}}, {Relation{{Term{1, {0, 1}}}}});
}

// Indecomposables of a Dynkin quiver with all arrows between consecutive vertices: the thin modules
// supported on intervals [lo, hi], every arrow inside the support acting by 1.
Module interval(const AlgebraPtr& alg, int lo, int hi) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(alg->vertex_count()), 0);
  for (int v = lo; v <= hi; ++v) dims[static_cast<std::size_t>(v)] = 1;
  std::vector<Mat> maps;
  for (std::size_t a = 0; a < alg->arrow_count(); ++a) {
    const Arrow& ar = alg->arrow(static_cast<int>(a));
    Mat m(dims[static_cast<std::size_t>(ar.target)], dims[static_cast<std::size_t>(ar.source)], alg->field());
    if (m.rows() && m.cols()) m.set(0, 0, 1);
    maps.push_back(m);
  }
  return Module(alg, dims, maps);
}

std::vector<Module> intervals(const AlgebraPtr& alg) {
  std::vector<Module> out;
  for (int lo = 0; lo < alg->vertex_count(); ++lo)
    for (int hi = lo; hi < alg->vertex_count(); ++hi) out.push_back(interval(alg, lo, hi));
  return out;
}

// Oracle: dim Hom(M, N) by enumerating every tuple of vertex maps over a small field.
std::size_t brute_force_hom_dim(const Module& m, const Module& n) {
  const Field& f = m.field();
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  std::size_t unknowns = 0;
  for (int v = 0; v < m.vertex_count(); ++v) {
    shapes.push_back({n.dim(v), m.dim(v)});
    unknowns += n.dim(v) * m.dim(v);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < unknowns; ++i) total *= f.p();
  std::size_t count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    std::vector<Mat> x;
    for (auto [r, k] : shapes) {
      Mat mat(r, k, f);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < k; ++j, c /= f.p()) mat.set(i, j, static_cast<Scalar>(c % f.p()));
      x.push_back(mat);
    }
    bool commutes = true;
    for (std::size_t a = 0; a < m.algebra()->arrow_count() && commutes; ++a) {
      const Arrow& ar = m.algebra()->arrow(static_cast<int>(a));
      commutes = n.arrow_map(static_cast<int>(a)) * x[static_cast<std::size_t>(ar.source)] ==
                 x[static_cast<std::size_t>(ar.target)] * m.arrow_map(static_cast<int>(a));
    }
    if (commutes) ++count;
  }
  std::size_t d = 0;
  while (count > 1) {
    count /= f.p();
    ++d;
  }
  return d;
}

// Oracle for hereditary algebras: dim Hom - dim Ext^1 = Σ_v m_v n_v - Σ_arrows m_s n_t.
long euler_form(const Module& m, const Module& n) {
  long e = 0;
  for (int v = 0; v < m.vertex_count(); ++v) e += static_cast<long>(m.dim(v) * n.dim(v));
  for (std::size_t a = 0; a < m.algebra()->arrow_count(); ++a) {
    const Arrow& ar = m.algebra()->arrow(static_cast<int>(a));
    e -= static_cast<long>(m.dim(ar.source) * n.dim(ar.target));
  }
  return e;
}

Module conjugate(const Module& m, std::mt19937_64& rng) {
  const Field& f = m.field();
  std::vector<Mat> g;
  for (int v = 0; v < m.vertex_count(); ++v) {
    while (true) {
      Mat x(m.dim(v), m.dim(v), f);
      std::uniform_int_distribution<Scalar> d(0, f.p() - 1);
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) x.set(i, j, d(rng));
      if (inverse(x)) {
        g.push_back(x);
        break;
      }
    }
  }
  std::vector<Mat> arrows;
  for (std::size_t a = 0; a < m.algebra()->arrow_count(); ++a) {
    const Arrow& ar = m.algebra()->arrow(static_cast<int>(a));
    arrows.push_back(g[static_cast<std::size_t>(ar.target)] * m.arrow_map(static_cast<int>(a)) *
                     *inverse(g[static_cast<std::size_t>(ar.source)]));
  }
  return Module(m.algebra(), m.dims(), arrows);
}

}  // namespace

TEST(Module, RejectsBadShapesAndRelationViolations) {
  Field f(101);
  AlgebraPtr a = a3_with_zero_relation(f);
  Mat one = Mat::from_rows({{1}}, f);
  EXPECT_THROW(Module(a, {1, 1, 1}, {one, one}), std::invalid_argument);  // beta∘alpha ≠ 0
  EXPECT_THROW(Module(a, {1, 1}, {one, one}), std::invalid_argument);
  EXPECT_THROW(Module(a, {1, 1, 1}, {Mat(2, 1, f), one}), std::invalid_argument);
  EXPECT_NO_THROW(Module(a, {1, 1, 1}, {one, Mat(1, 1, f)}));
}

TEST(HomSpace, DimensionMatchesBruteForceOverF3) {
  Field f(3);
  for (AlgebraPtr a : {linear_a3(f), alternating_a3(f)}) {
    std::vector<Module> ms = intervals(a);
    ms.push_back(direct_sum_module({ms[0], ms[3]}, a));
    for (const Module& m : ms)
      for (const Module& n : ms) {
        if (m.total_dim() * n.total_dim() > 8) continue;
        EXPECT_EQ(hom_dim(m, n), brute_force_hom_dim(m, n)) << m.dim_vector() << " " << n.dim_vector();
      }
  }
}

TEST(HomSpace, CoordinatesRoundTrip) {
  Field f(101);
  AlgebraPtr a = linear_a3(f);
  Module p1 = indecomposable_projective(a, 0);
  Module m = direct_sum_module({p1, interval(a, 1, 2)}, a);
  HomSpace hs(m, m);
  for (std::size_t k = 0; k < hs.dim(); ++k) {
    Mat c = hs.coordinates(hs.basis()[k]);
    EXPECT_EQ(hs.combination(c), hs.basis()[k]);
  }
}

TEST(Projectives, IndecomposableProjectivesAreThePathModules) {
  Field f(101);
  AlgebraPtr a = linear_a3(f);
  EXPECT_EQ(indecomposable_projective(a, 0).dims(), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(indecomposable_projective(a, 2).dims(), (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_EQ(indecomposable_injective(a, 2).dims(), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(indecomposable_injective(a, 0).dims(), (std::vector<std::size_t>{1, 0, 0}));
  AlgebraPtr r = a3_with_zero_relation(f);
  EXPECT_EQ(indecomposable_projective(r, 0).dims(), (std::vector<std::size_t>{1, 1, 0}));
}

TEST(Projectives, CoverAndEnvelopeAreMinimal) {
  Field f(101);
  AlgebraPtr a = alternating_a3(f);
  for (const Module& m : intervals(a)) {
    ProjectiveCover pc = projective_cover(m);
    EXPECT_TRUE(pc.epi.is_epi());
    EXPECT_EQ(pc.cover.vertices.size(), top(m).module.total_dim());
    ModuleHom env = injective_envelope(m);
    EXPECT_TRUE(env.is_mono());
    EXPECT_TRUE(is_injective(env.target()));
    EXPECT_EQ(indecomposable_summands(env.target()).size(), socle(m).module.total_dim());
  }
}

TEST(Ext, EulerFormOnHereditaryAlgebras) {
  Field f(101);
  for (AlgebraPtr a : {linear_a3(f), alternating_a3(f)})
    for (const Module& m : intervals(a))
      for (const Module& n : intervals(a)) {
        long ext1 = static_cast<long>(ext_dim(m, n, 1));
        EXPECT_EQ(static_cast<long>(hom_dim(m, n)) - ext1, euler_form(m, n));
        EXPECT_EQ(ext_dim(m, n, 2), 0u);
      }
}

TEST(Ext, ProjectiveDimensionWithZeroRelation) {
  // 0 -> P3 -> P2 -> P1 -> S1 -> 0 over 1 -> 2 -> 3 with the composite zero
  Field f(101);
  AlgebraPtr a = a3_with_zero_relation(f);
  EXPECT_EQ(projective_dimension(simple_module(a, 0)), 2u);
  EXPECT_EQ(projective_dimension(simple_module(a, 1)), 1u);
  EXPECT_EQ(projective_dimension(simple_module(a, 2)), 0u);
  EXPECT_EQ(ext_dim(simple_module(a, 0), simple_module(a, 2), 2), 1u);
}

TEST(Translate, AuslanderReitenFormulaOnHereditaryAlgebras) {
  // Ext^1(M, N) ≅ D Hom(N, τM) when Λ is hereditary.
  Field f(101);
  for (AlgebraPtr a : {linear_a3(f), alternating_a3(f)}) {
    for (const Module& m : intervals(a)) {
      if (is_projective(m)) {
        EXPECT_THROW(tau(m), PreconditionError);
        continue;
      }
      Module t = tau(m);
      EXPECT_TRUE(is_indecomposable(t));
      EXPECT_TRUE(is_isomorphic(tau_inverse(t), m));
      for (const Module& n : intervals(a)) EXPECT_EQ(ext_dim(m, n, 1), hom_dim(n, t));
    }
  }
}

TEST(Translate, LinearA3Values) {
  Field f(101);
  AlgebraPtr a = linear_a3(f);
  EXPECT_TRUE(is_isomorphic(tau(interval(a, 1, 1)), interval(a, 2, 2)));
  EXPECT_TRUE(is_isomorphic(tau(interval(a, 0, 1)), interval(a, 1, 2)));
  EXPECT_TRUE(is_isomorphic(tau(interval(a, 0, 0)), interval(a, 1, 1)));
}

TEST(Decompose, SplitsDirectSumsIntoIsomorphismClasses) {
  Field f(101);
  AlgebraPtr a = linear_a3(f);
  std::vector<Module> ind = intervals(a);
  Module m = direct_sum_module({ind[0], ind[1], ind[0], ind[5]}, a);
  std::mt19937_64 rng(1);
  Module scrambled = conjugate(m, rng);
  Decomposition d = decompose(scrambled);
  EXPECT_EQ(d.parts.size(), 4u);
  EXPECT_EQ(d.classes.size(), 3u);
  for (const Summand& s : d.parts) {
    EXPECT_TRUE((s.projection * s.inclusion).is_iso());
    EXPECT_TRUE(find_isomorphic(ind, s.module).has_value());
  }
  EXPECT_TRUE(is_isomorphic(scrambled, m));
  EXPECT_FALSE(is_isomorphic(m, direct_sum_module({ind[0], ind[1], ind[1], ind[5]}, a)));
}

TEST(Decompose, IndecomposablesArePairwiseNonIsomorphic) {
  Field f(101);
  for (AlgebraPtr a : {linear_a3(f), alternating_a3(f)}) {
    std::vector<Module> ind = intervals(a);
    std::mt19937_64 rng(2);
    for (std::size_t i = 0; i < ind.size(); ++i) {
      EXPECT_TRUE(is_indecomposable(ind[i]));
      EXPECT_TRUE(is_isomorphic(conjugate(ind[i], rng), ind[i]));
      for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(is_isomorphic(ind[i], ind[j]));
    }
  }
}

TEST(Decompose, RadicalOfLocalEndomorphismRing) {
  Field f(101);
  AlgebraPtr a = Algebra::create(f, Quiver{2, {{"a", 0, 1}}}, {});
  Module p1 = indecomposable_projective(a, 0);
  EXPECT_EQ(end_radical(p1).dim_radical(), 0u);
  Module m = direct_sum_module({p1, simple_module(a, 0)}, a);
  // End(P1 ⊕ S1): 3-dimensional with the map P1 -> S1 spanning the radical
  EndRadical r = end_radical(m);
  EXPECT_EQ(r.dim_end(), 3u);
  EXPECT_EQ(r.dim_radical(), 1u);
}

TEST(Duality, DualOfDualIsTheOriginalRepresentation) {
  Field f(101);
  AlgebraPtr a = alternating_a3(f);
  for (const Module& m : intervals(a)) {
    Module dd = dual_module(dual_module(m));
    EXPECT_EQ(dd.algebra().get(), a.get());
    EXPECT_TRUE(same_representation(dd, m));
  }
}
