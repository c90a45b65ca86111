#pragma once

#include <vector>

#include "ar.hpp"
#include "maps.hpp"

namespace mapscat {

// A finitely presented functor Coker((−, M1) -> (−, M2)), stored with a minimal presentation.
class FpFunctor {
 public:
  FpFunctor(const MapsCategory& cat, const MapObject& presentation) {
    MinimizedPresentation m = minimize_presentation(cat, presentation);
    presentation_ = std::move(m.object);
    discarded_ = std::move(m.discarded);
  }

  const MapObject& presentation() const { return presentation_; }
  const std::vector<MapObject>& discarded() const { return discarded_; }
  bool is_zero() const { return presentation_.m2.is_zero(); }
  bool is_representable() const { return presentation_.m1.is_zero(); }

 private:
  MapObject presentation_;
  std::vector<MapObject> discarded_;
};

inline FpFunctor phi(const MapsCategory& cat, const MapObject& x) { return FpFunctor(cat, x); }

// dim Coker(Hom(X, M1) -> Hom(X, M2)).
inline std::size_t evaluate(const MapObject& presentation, const Module& x) {
  HomSpace h1(x, presentation.m1), h2(x, presentation.m2);
  return h2.dim() - rank(postcompose_matrix(h1, h2, presentation.f));
}
inline std::size_t evaluate(const FpFunctor& f, const Module& x) { return evaluate(f.presentation(), x); }

// Φ^op(x)(X) = Coker(Hom(M2, X) -> Hom(M1, X)).
inline std::size_t evaluate_op(const MapObject& presentation, const Module& x) {
  HomSpace h2(presentation.m2, x), h1(presentation.m1, x);
  return h1.dim() - rank(precompose_matrix(h2, h1, presentation.f));
}

inline bool vanishes_everywhere(const MapObject& presentation, const std::vector<Module>& test_set) {
  for (const Module& x : test_set)
    if (evaluate(presentation, x) != 0) return false;
  return true;
}

// 0 for representables, 1 for a mono minimal presentation, 2 otherwise.
inline std::size_t pdim(const FpFunctor& f) {
  if (f.is_representable()) return 0;
  if (f.presentation().f.is_mono()) return 1;
  return 2;
}

// t_H(F) = Ker(F -> Φ(Im f -> M2)) = Φ(M1 -> Im f).
inline FpFunctor torsion_radical(const MapsCategory& cat, const FpFunctor& f) {
  ImageData im = image(f.presentation().f);
  return FpFunctor(cat, MapObject(im.corestriction));
}

// Torsion-free when t_H(F) evaluates to zero on every test module.
inline bool is_torsion_free(const MapsCategory& cat, const FpFunctor& f, const std::vector<Module>& test_set) {
  return vanishes_everywhere(torsion_radical(cat, f).presentation(), test_set);
}

inline bool vanishes_on_projectives(const FpFunctor& f) {
  const AlgebraPtr& alg = f.presentation().algebra();
  if (!alg) return true;
  for (int v = 0; v < alg->vertex_count(); ++v)
    if (evaluate(f, indecomposable_projective(alg, v)) != 0) return false;
  return true;
}

// S_M = Φ(sink map into M).
inline MapObject simple_functor_presentation(const Module& m) { return MapObject(sink_map(m)); }
inline FpFunctor simple_functor(const MapsCategory& cat, const Module& m) {
  return FpFunctor(cat, simple_functor_presentation(m));
}

// Θ(P.) = Φ of the degree-one truncation.
inline FpFunctor theta(const MapsCategory& cat, const ProjComplex& p) { return FpFunctor(cat, truncation(p)); }

}  // namespace mapscat
