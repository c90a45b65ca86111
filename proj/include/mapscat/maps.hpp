#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ar.hpp"
#include "decompose.hpp"
#include "module.hpp"

namespace mapscat {

// An object f: M1 -> M2 of maps(mod Λ).
struct MapObject {
  Module m1;
  Module m2;
  ModuleHom f;

  MapObject() = default;
  explicit MapObject(ModuleHom map) : m1(map.source()), m2(map.target()), f(std::move(map)) {}

  const AlgebraPtr& algebra() const { return m1.algebra(); }
  std::size_t total_dim() const { return m1.total_dim() + m2.total_dim(); }
  bool is_zero() const { return total_dim() == 0; }
  std::string label() const { return "(" + m1.dim_vector() + "->" + m2.dim_vector() + ")"; }
};

inline MapObject identity_object(const Module& m) { return MapObject(ModuleHom::identity(m)); }
inline MapObject zero_source_object(const Module& m) { return MapObject(ModuleHom::zero(Module::zero(m.algebra()), m)); }
inline MapObject zero_target_object(const Module& m) { return MapObject(ModuleHom::zero(m, Module::zero(m.algebra()))); }

// A commuting square: target.f ∘ h1 = h2 ∘ source.f.
class MapMorphism {
 public:
  MapMorphism() = default;
  MapMorphism(MapObject source, MapObject target, ModuleHom h1, ModuleHom h2)
      : source_(std::move(source)), target_(std::move(target)), h1_(std::move(h1)), h2_(std::move(h2)) {
    if (!(target_.f * h1_ == h2_ * source_.f)) throw std::invalid_argument("map morphism square does not commute");
  }
  static MapMorphism identity(const MapObject& x) {
    return {x, x, ModuleHom::identity(x.m1), ModuleHom::identity(x.m2)};
  }
  static MapMorphism zero(const MapObject& x, const MapObject& y) {
    return {x, y, ModuleHom::zero(x.m1, y.m1), ModuleHom::zero(x.m2, y.m2)};
  }

  const MapObject& source() const { return source_; }
  const MapObject& target() const { return target_; }
  const ModuleHom& h1() const { return h1_; }
  const ModuleHom& h2() const { return h2_; }
  bool is_zero() const { return h1_.is_zero() && h2_.is_zero(); }

  friend MapMorphism operator*(const MapMorphism& g, const MapMorphism& f) {
    return {f.source_, g.target_, g.h1_ * f.h1_, g.h2_ * f.h2_};
  }
  friend MapMorphism operator+(const MapMorphism& a, const MapMorphism& b) {
    return {a.source_, a.target_, a.h1_ + b.h1_, a.h2_ + b.h2_};
  }
  friend MapMorphism operator-(const MapMorphism& a, const MapMorphism& b) {
    return {a.source_, a.target_, a.h1_ - b.h1_, a.h2_ - b.h2_};
  }
  MapMorphism scaled(Scalar c) const { return {source_, target_, h1_.scaled(c), h2_.scaled(c)}; }

 private:
  MapObject source_;
  MapObject target_;
  ModuleHom h1_;
  ModuleHom h2_;
};

struct MapShortExactSeq {
  MapObject left;
  MapObject middle;
  MapObject right;
  MapMorphism inj;
  MapMorphism surj;
};

// maps(mod Λ) ≅ mod Γ: copy-1 vertices carry M1, copy-2 vertices M2, connectors carry f.
class MapsCategory {
 public:
  explicit MapsCategory(AlgebraPtr lambda) : tri_(triangular_matrix_algebra(lambda)) {}

  const AlgebraPtr& lambda() const { return tri_.lambda; }
  const AlgebraPtr& gamma() const { return tri_.gamma; }
  const TriangularAlgebra& triangular() const { return tri_; }
  int n() const { return tri_.n; }

  Module to_gamma(const MapObject& x) const {
    std::vector<std::size_t> dims = x.m1.dims();
    dims.insert(dims.end(), x.m2.dims().begin(), x.m2.dims().end());
    std::vector<Mat> arrows(tri_.gamma->arrow_count());
    for (std::size_t a = 0; a < tri_.lambda_arrows; ++a) {
      arrows[static_cast<std::size_t>(tri_.first_copy_arrow(a))] = x.m1.arrow_map(static_cast<int>(a));
      arrows[static_cast<std::size_t>(tri_.second_copy_arrow(a))] = x.m2.arrow_map(static_cast<int>(a));
    }
    for (int v = 0; v < n(); ++v) arrows[static_cast<std::size_t>(tri_.connector(v))] = x.f.at(v);
    return Module(tri_.gamma, dims, arrows);
  }

  MapObject from_gamma(const Module& g) const {
    std::vector<std::size_t> d1(g.dims().begin(), g.dims().begin() + n()), d2(g.dims().begin() + n(), g.dims().end());
    std::vector<Mat> a1, a2, fv;
    for (std::size_t a = 0; a < tri_.lambda_arrows; ++a) {
      a1.push_back(g.arrow_map(tri_.first_copy_arrow(a)));
      a2.push_back(g.arrow_map(tri_.second_copy_arrow(a)));
    }
    for (int v = 0; v < n(); ++v) fv.push_back(g.arrow_map(tri_.connector(v)));
    Module m1(tri_.lambda, d1, a1), m2(tri_.lambda, d2, a2);
    return MapObject(ModuleHom(m1, m2, fv));
  }

  ModuleHom to_gamma(const MapMorphism& h) const {
    std::vector<Mat> maps = h.h1().maps();
    maps.insert(maps.end(), h.h2().maps().begin(), h.h2().maps().end());
    return ModuleHom(to_gamma(h.source()), to_gamma(h.target()), maps);
  }

  MapMorphism from_gamma(const ModuleHom& h) const {
    MapObject s = from_gamma(h.source()), t = from_gamma(h.target());
    std::vector<Mat> h1(h.maps().begin(), h.maps().begin() + n()), h2(h.maps().begin() + n(), h.maps().end());
    return {s, t, ModuleHom(s.m1, t.m1, h1), ModuleHom(s.m2, t.m2, h2)};
  }

  ShortExactSeq to_gamma(const MapShortExactSeq& s) const {
    return {to_gamma(s.left), to_gamma(s.middle), to_gamma(s.right), to_gamma(s.inj), to_gamma(s.surj)};
  }
  MapShortExactSeq from_gamma(const ShortExactSeq& s) const {
    return {from_gamma(s.left), from_gamma(s.middle), from_gamma(s.right), from_gamma(s.inj), from_gamma(s.surj)};
  }

 private:
  TriangularAlgebra tri_;
};

// Hom in maps(mod Λ) solved directly as pairs (h1, h2) with g h1 = h2 f; no Γ involved.
inline std::vector<MapMorphism> hom_maps(const MapObject& x, const MapObject& y) {
  HomSpace s1(x.m1, y.m1), s2(x.m2, y.m2), sq(x.m1, y.m2);
  std::vector<Mat> cols;
  for (const ModuleHom& b : s1.basis()) cols.push_back(sq.flatten(y.f * b));
  for (const ModuleHom& b : s2.basis()) cols.push_back(sq.flatten(b * x.f).scaled(x.m1.field().neg(1)));
  Mat sys = hstack(cols, sq.ambient_dim(), x.m1.field());
  Mat ker = kernel_basis(sys);
  std::vector<MapMorphism> out;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    Mat col = ker.column(c);
    out.emplace_back(x, y, s1.combination(col.block(0, 0, s1.dim(), 1)), s2.combination(col.block(s1.dim(), 0, s2.dim(), 1)));
  }
  return out;
}

// Hom modulo homotopy: (h1, h2) ~ 0 when h2 = g s for some s: M2 -> N1, h1 unconstrained.
struct HomotopyQuotient {
  std::vector<MapMorphism> homs;
  std::size_t null_homotopic_rank = 0;
  std::size_t dim() const { return homs.size() - null_homotopic_rank; }
};

// Every g s is the second component of the morphism (s f, g s), so the quotient is the image of
// the h2-components modulo g Hom(M2, N1).
inline HomotopyQuotient homotopy_quotient(const MapObject& x, const MapObject& y) {
  HomotopyQuotient q{hom_maps(x, y), 0};
  const Field& f = x.m1.field();
  HomSpace s2(x.m2, y.m2);
  std::vector<Mat> homotopies, seconds;
  for (const ModuleHom& s : hom_basis(x.m2, y.m1)) homotopies.push_back(s2.coordinates(y.f * s));
  for (const MapMorphism& h : q.homs) seconds.push_back(s2.coordinates(h.h2()));
  std::size_t g_rank = rank(hstack(homotopies, s2.dim(), f));
  homotopies.insert(homotopies.end(), seconds.begin(), seconds.end());
  std::size_t quotient = rank(hstack(homotopies, s2.dim(), f)) - g_rank;
  q.null_homotopic_rank = q.homs.size() - quotient;
  return q;
}

// ---- the exact structure S -----------------------------------------------------------------

struct SExactness {
  bool rows_exact = false;
  std::array<bool, 3> columns_split{false, false, false};  // kernel column, M1 column, M2 column
  bool in_S() const { return rows_exact && columns_split[0] && columns_split[1] && columns_split[2]; }
  std::string failure;
};

// Restriction of h to kernels: Ker(source.f) -> Ker(target.f).
inline ModuleHom restrict_to_kernels(const MapMorphism& h, const SubmoduleData& ks, const SubmoduleData& kt) {
  auto r = lift_through(kt.inclusion, h.h1() * ks.inclusion);
  if (!r) throw std::logic_error("restrict_to_kernels: square does not preserve kernels");
  return *r;
}

inline bool is_split_short_exact(const ModuleHom& inj, const ModuleHom& surj) {
  ShortExactSeq s{inj.source(), inj.target(), surj.target(), inj, surj};
  return is_short_exact(s) && is_split_epi(surj);
}

inline SExactness is_S_exact(const MapsCategory& cat, const MapShortExactSeq& s) {
  SExactness r;
  r.rows_exact = is_short_exact(cat.to_gamma(s));
  if (!r.rows_exact) {
    r.failure = "rows are not exact";
    return r;
  }
  SubmoduleData kn = kernel(s.left.f), ke = kernel(s.middle.f), km = kernel(s.right.f);
  ModuleHom a0 = restrict_to_kernels(s.inj, kn, ke), b0 = restrict_to_kernels(s.surj, ke, km);
  r.columns_split[0] = is_split_short_exact(a0, b0);
  r.columns_split[1] = is_split_epi(s.surj.h1());
  r.columns_split[2] = is_split_epi(s.surj.h2());
  if (!r.in_S()) {
    const char* names[] = {"kernel", "first", "second"};
    for (int c = 0; c < 3; ++c)
      if (!r.columns_split[static_cast<std::size_t>(c)]) {
        r.failure = std::string(names[c]) + " column does not split";
        break;
      }
  }
  return r;
}

// ---- F-projectives and relative Ext ------------------------------------------------------

inline bool is_contractible_type(const MapObject& x) { return x.f.is_iso() || x.m2.is_zero(); }

// F-projectives are sums of (M,M,1) and (0,M,0).
inline bool is_F_projective(const MapsCategory& cat, const MapObject& x) {
  for (const Module& s : indecomposable_summands(cat.to_gamma(x))) {
    MapObject y = cat.from_gamma(s);
    if (!y.f.is_iso() && !y.m1.is_zero()) return false;
  }
  return true;
}

inline bool is_F_injective(const MapsCategory& cat, const MapObject& x) {
  for (const Module& s : indecomposable_summands(cat.to_gamma(x))) {
    MapObject y = cat.from_gamma(s);
    if (!y.f.is_iso() && !y.m2.is_zero()) return false;
  }
  return true;
}

struct FProjectiveCover {
  MapObject cover;  // (M1 ⊕ M0, M1 ⊕ M2, diag(1, 0))
  MapMorphism epi;  // h1 = (1 f0), h2 = (f 1)
  std::vector<MapObject> summands;  // (M1,M1,1), (0,M2,0), (M0,0,0)
};

// The (M0,0,0) summand, M0 = Ker f, keeps the kernel column exact; without it the cover of a
// non-mono f is not S-admissible.
inline FProjectiveCover f_projective_cover(const MapObject& x) {
  const AlgebraPtr& alg = x.algebra();
  SubmoduleData k = kernel(x.f);
  DirectSum c1 = direct_sum({x.m1, k.module}, alg);
  DirectSum c2 = direct_sum({x.m1, x.m2}, alg);
  ModuleHom c = hom_from_blocks(c1, c2, {{ModuleHom::identity(x.m1), ModuleHom::zero(k.module, x.m1)},
                                         {ModuleHom::zero(x.m1, x.m2), ModuleHom::zero(k.module, x.m2)}});
  MapObject cover(c);
  ModuleHom h1 = c1.projections[0] + k.inclusion * c1.projections[1];
  ModuleHom h2 = x.f * c2.projections[0] + c2.projections[1];
  FProjectiveCover out{cover, MapMorphism(cover, x, h1, h2),
                       {identity_object(x.m1), zero_source_object(x.m2), zero_target_object(k.module)}};
  return out;
}

// Kernel of a morphism of maps, computed vertexwise on the Λ side.
struct MapKernel {
  MapObject object;
  MapMorphism inclusion;
};

inline MapKernel kernel(const MapMorphism& h) {
  SubmoduleData k1 = kernel(h.h1()), k2 = kernel(h.h2());
  auto kf = lift_through(k2.inclusion, h.source().f * k1.inclusion);
  if (!kf) throw std::logic_error("kernel of map morphism: structure map leaves the kernel");
  MapObject obj(*kf);
  return {obj, MapMorphism(obj, h.source(), k1.inclusion, k2.inclusion)};
}

// F-projective resolution F_0 <- F_1 <- F_2 <- ...; d[i]: F_{i+1} -> F_i.
struct FResolution {
  std::vector<MapObject> terms;
  std::vector<MapMorphism> differentials;
  MapMorphism augmentation;
  bool complete = false;
};

inline FResolution f_projective_resolution(const MapObject& x, std::size_t max_terms = 4) {
  FResolution r;
  FProjectiveCover c = f_projective_cover(x);
  r.terms.push_back(c.cover);
  r.augmentation = c.epi;
  MapMorphism prev = c.epi;
  while (r.terms.size() < max_terms) {
    MapKernel k = kernel(prev);
    if (k.object.is_zero()) {
      r.complete = true;
      return r;
    }
    FProjectiveCover ck = f_projective_cover(k.object);
    MapMorphism d = k.inclusion * ck.epi;
    r.terms.push_back(ck.cover);
    r.differentials.push_back(d);
    prev = d;
  }
  r.complete = kernel(prev).object.is_zero();
  return r;
}

// dim Ext_F^k(x, y) = H^k Hom(F., y).
inline std::size_t relative_ext_dim(const MapsCategory& cat, const MapObject& x, const MapObject& y, std::size_t k) {
  if (k < 1 || k > 2) throw std::invalid_argument("relative_ext: degree must be 1 or 2");
  FResolution r = f_projective_resolution(x, k + 3);
  if (!r.complete) throw std::runtime_error("relative_ext: F-resolution did not terminate");
  if (k >= r.terms.size()) return 0;
  Module gy = cat.to_gamma(y);
  auto hom_from = [&](std::size_t i) { return HomSpace(cat.to_gamma(r.terms[i]), gy); };
  HomSpace hk = hom_from(k);
  std::size_t cocycles = hk.dim();
  if (k + 1 < r.terms.size()) cocycles -= rank(precompose_matrix(hk, hom_from(k + 1), cat.to_gamma(r.differentials[k])));
  std::size_t boundaries = rank(precompose_matrix(hom_from(k - 1), hk, cat.to_gamma(r.differentials[k - 1])));
  return cocycles - boundaries;
}

// ---- presentations of functors -----------------------------------------------------------

struct MinimizedPresentation {
  MapObject object;
  std::vector<MapObject> discarded;  // summands of the forms (M,M,1) and (M,0,0)
};

inline MinimizedPresentation minimize_presentation(const MapsCategory& cat, const MapObject& x) {
  MinimizedPresentation out;
  std::vector<Module> kept;
  for (const Module& s : indecomposable_summands(cat.to_gamma(x))) {
    MapObject y = cat.from_gamma(s);
    if (is_contractible_type(y))
      out.discarded.push_back(y);
    else
      kept.push_back(s);
  }
  out.object = cat.from_gamma(direct_sum_module(kept, cat.gamma()));
  return out;
}

// A complex A_n -> ... -> A_0 of Λ-modules standing for (−,A_n) -> ... -> (−,A_0).
struct ProjComplex {
  std::vector<Module> terms;         // terms[k] = A_k
  std::vector<ModuleHom> differentials;  // differentials[k]: A_{k+1} -> A_k
  std::size_t length() const { return differentials.size(); }
};

// (−,A_n) -> ... -> (−,A_0) is exact away from degree 0, evaluated at every test module.
inline bool satisfies_complex_invariant(const ProjComplex& p, const std::vector<Module>& test_set) {
  if (p.terms.size() != p.differentials.size() + 1) return false;
  for (std::size_t k = 0; k + 1 < p.differentials.size(); ++k)
    if (!(p.differentials[k] * p.differentials[k + 1]).is_zero()) return false;
  for (const Module& x : test_set) {
    for (std::size_t k = 1; k <= p.differentials.size(); ++k) {
      // exactness at (−,A_k): kernel of (−,d_{k-1}) equals image of (−,d_k)
      HomSpace hk(x, p.terms[k]), hprev(x, p.terms[k - 1]);
      std::size_t ker = hk.dim() - rank(postcompose_matrix(hk, hprev, p.differentials[k - 1]));
      std::size_t img = 0;
      if (k < p.differentials.size()) {
        HomSpace hnext(x, p.terms[k + 1]);
        img = rank(postcompose_matrix(hnext, hk, p.differentials[k]));
      }
      if (ker != img) return false;
    }
  }
  return true;
}

// Ω^i(P.) = A_n -> ... -> A_i with A_i in degree 0.
inline ProjComplex relative_syzygy(const ProjComplex& p, std::size_t i) {
  ProjComplex out;
  if (i >= p.terms.size()) return out;
  out.terms.assign(p.terms.begin() + static_cast<std::ptrdiff_t>(i), p.terms.end());
  out.differentials.assign(p.differentials.begin() + static_cast<std::ptrdiff_t>(i), p.differentials.end());
  return out;
}

// Degree-1 truncation (Ψ): the map A_1 -> A_0.
inline MapObject truncation(const ProjComplex& p) {
  if (p.terms.empty()) throw std::invalid_argument("truncation of an empty complex");
  if (p.differentials.empty()) return zero_source_object(p.terms[0]);
  return MapObject(p.differentials[0]);
}

// Least k with Ω^k(P.) relatively projective, read off the maps side: the minimized truncation of
// Ω^k(P.) has zero source.
inline std::size_t rpdim(const MapsCategory& cat, const ProjComplex& p) {
  for (std::size_t k = 0; k < p.terms.size(); ++k) {
    ProjComplex omega = relative_syzygy(p, k);
    if (minimize_presentation(cat, truncation(omega)).object.m1.is_zero()) return k;
  }
  return p.length();
}

}  // namespace mapscat
