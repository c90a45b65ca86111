#pragma once

#include <optional>
#include <string>
#include <vector>

#include "auslander.hpp"
#include "decompose.hpp"
#include "maps.hpp"

namespace mapscat {

// For a right approximation a: Z -> X, each basis hom T -> X equals a∘y; `factorizations` holds the
// coordinates of those y in Hom(T, Z), one column per basis hom. Left approximations are dual.
struct TestFactorization {
  std::string test;
  std::size_t homs_checked = 0;
  Mat factorizations;
};

struct ApproxCertificate {
  bool certified = true;
  std::vector<TestFactorization> tests;
  std::string failure;
};

struct LabelledModule {
  std::string label;
  Module module;
};

inline ApproxCertificate certify_right_approximation(const ModuleHom& approx, const std::vector<LabelledModule>& tests) {
  ApproxCertificate cert;
  for (const LabelledModule& t : tests) {
    HomSpace to_z(t.module, approx.source()), to_x(t.module, approx.target());
    Mat post = postcompose_matrix(to_z, to_x, approx);
    std::optional<Mat> y = solve(post, Mat::identity(to_x.dim(), approx.source().field()));
    if (!y) {
      cert.certified = false;
      cert.failure = "a hom from " + t.label + " does not factor through the approximation";
      return cert;
    }
    cert.tests.push_back({t.label, to_x.dim(), std::move(*y)});
  }
  return cert;
}

inline ApproxCertificate certify_left_approximation(const ModuleHom& approx, const std::vector<LabelledModule>& tests) {
  ApproxCertificate cert;
  for (const LabelledModule& t : tests) {
    HomSpace from_z(approx.target(), t.module), from_x(approx.source(), t.module);
    Mat pre = precompose_matrix(from_z, from_x, approx);
    std::optional<Mat> y = solve(pre, Mat::identity(from_x.dim(), approx.source().field()));
    if (!y) {
      cert.certified = false;
      cert.failure = "a hom into " + t.label + " does not factor through the approximation";
      return cert;
    }
    cert.tests.push_back({t.label, from_x.dim(), std::move(*y)});
  }
  return cert;
}

struct MapApproximation {
  MapMorphism approximation;
  ApproxCertificate certificate;
};

inline std::vector<LabelledModule> gamma_tests(const MapsCategory& cat, const std::vector<MapObject>& corpus) {
  std::vector<LabelledModule> out;
  for (const MapObject& c : corpus) out.push_back({c.label(), cat.to_gamma(c)});
  return out;
}

inline MapApproximation certified_right(const MapsCategory& cat, MapMorphism a, const std::vector<MapObject>& corpus) {
  ApproxCertificate cert = certify_right_approximation(cat.to_gamma(a), gamma_tests(cat, corpus));
  return {std::move(a), std::move(cert)};
}

inline MapApproximation certified_left(const MapsCategory& cat, MapMorphism a, const std::vector<MapObject>& corpus) {
  ApproxCertificate cert = certify_left_approximation(cat.to_gamma(a), gamma_tests(cat, corpus));
  return {std::move(a), std::move(cert)};
}

inline bool is_epimap(const MapObject& x) { return x.f.is_epi(); }
inline bool is_monomap(const MapObject& x) { return x.f.is_mono(); }

// (M1, Im f, f') -> (M1, M2, f) via (1, ι).
inline MapApproximation right_approx_epimaps(const MapsCategory& cat, const MapObject& x,
                                             const std::vector<MapObject>& corpus) {
  if (is_epimap(x)) return certified_right(cat, MapMorphism::identity(x), corpus);
  ImageData im = image(x.f);
  MapObject z(im.corestriction);
  return certified_right(cat, MapMorphism(z, x, ModuleHom::identity(x.m1), im.inclusion), corpus);
}

// (M1, M2, f) -> (M1 ⊕ P, M2, [f p]) via ((1;0), 1), P -> M2 a projective cover.
inline MapApproximation left_approx_epimaps(const MapsCategory& cat, const MapObject& x,
                                            const std::vector<MapObject>& corpus) {
  if (is_epimap(x)) return certified_left(cat, MapMorphism::identity(x), corpus);
  ProjectiveCover pc = projective_cover(x.m2);
  DirectSum src = direct_sum({x.m1, pc.module()}, x.algebra());
  MapObject z(x.f * src.projections[0] + pc.epi * src.projections[1]);
  return certified_left(cat, MapMorphism(x, z, src.inclusions[0], ModuleHom::identity(x.m2)), corpus);
}

// (M1, M2, f) -> (Im f, M2, ι) via (f', 1).
inline MapApproximation left_approx_monomaps(const MapsCategory& cat, const MapObject& x,
                                             const std::vector<MapObject>& corpus) {
  if (is_monomap(x)) return certified_left(cat, MapMorphism::identity(x), corpus);
  ImageData im = image(x.f);
  MapObject z(im.inclusion);
  return certified_left(cat, MapMorphism(x, z, im.corestriction, ModuleHom::identity(x.m2)), corpus);
}

// (M1, M2 ⊕ I, (f; i)) -> (M1, M2, f) via (1, (1 0)), M1 ↪ I an injective envelope.
inline MapApproximation right_approx_monomaps(const MapsCategory& cat, const MapObject& x,
                                              const std::vector<MapObject>& corpus) {
  if (is_monomap(x)) return certified_right(cat, MapMorphism::identity(x), corpus);
  ModuleHom env = injective_envelope(x.m1);
  DirectSum tgt = direct_sum({x.m2, env.target()}, x.algebra());
  MapObject z(tgt.inclusions[0] * x.f + tgt.inclusions[1] * env);
  return certified_right(cat, MapMorphism(z, x, ModuleHom::identity(x.m1), tgt.projections[0]), corpus);
}

// Generic approximations by an explicit finite list: ⊕_c c^{dim Hom(c, x)} -> x summing a basis of
// every Hom(c, x), and dually x -> ⊕_c c^{dim Hom(x, c)}.
inline MapApproximation right_approx_from_list(const MapsCategory& cat, const MapObject& x,
                                               const std::vector<MapObject>& corpus) {
  Module gx = cat.to_gamma(x);
  std::vector<Module> parts;
  std::vector<ModuleHom> comps;
  for (const MapObject& c : corpus)
    for (const ModuleHom& h : hom_basis(cat.to_gamma(c), gx)) {
      parts.push_back(h.source());
      comps.push_back(h);
    }
  DirectSum ds = direct_sum(parts, cat.gamma());
  ModuleHom total = ModuleHom::zero(ds.module, gx);
  for (std::size_t i = 0; i < parts.size(); ++i) total = total + comps[i] * ds.projections[i];
  return certified_right(cat, cat.from_gamma(total), corpus);
}

inline MapApproximation left_approx_from_list(const MapsCategory& cat, const MapObject& x,
                                              const std::vector<MapObject>& corpus) {
  Module gx = cat.to_gamma(x);
  std::vector<Module> parts;
  std::vector<ModuleHom> comps;
  for (const MapObject& c : corpus)
    for (const ModuleHom& h : hom_basis(gx, cat.to_gamma(c))) {
      parts.push_back(h.target());
      comps.push_back(h);
    }
  DirectSum ds = direct_sum(parts, cat.gamma());
  ModuleHom total = ModuleHom::zero(gx, ds.module);
  for (std::size_t i = 0; i < parts.size(); ++i) total = total + ds.inclusions[i] * comps[i];
  return certified_left(cat, cat.from_gamma(total), corpus);
}

// A right approximation of Φ(target) inside the realized functor category.
struct FunctorApproximation {
  MapObject source_presentation;
  MapObject target_presentation;
  ModuleHom map;  // Φ(source) -> Φ(target)
  ApproxCertificate certificate;
};

inline std::vector<LabelledModule> functor_tests(const AuslanderRealization& aus, const std::vector<MapObject>& corpus) {
  std::vector<LabelledModule> out;
  for (const MapObject& c : corpus) out.push_back({"Φ" + c.label(), aus.functor_module(c)});
  return out;
}

// Φ(z) -> Φ(x), certified against Φ(corpus).
inline FunctorApproximation transport_approx_via_phi(const AuslanderRealization& aus, const MapMorphism& approx,
                                                     const std::vector<MapObject>& corpus) {
  ModuleHom image = aus.functor_hom(approx);
  ApproxCertificate cert = certify_right_approximation(image, functor_tests(aus, corpus));
  return {approx.source(), approx.target(), std::move(image), std::move(cert)};
}

// Some maps morphism z -> m whose Φ-image is φ (Φ is full).
inline std::optional<MapMorphism> lift_functor_hom(const AuslanderRealization& aus, const MapObject& z,
                                                   const MapObject& m, const ModuleHom& phi_hom) {
  std::vector<MapMorphism> basis = hom_maps(z, m);
  HomSpace hs(phi_hom.source(), phi_hom.target());
  const Field& f = aus.lambda()->field();
  std::vector<Mat> cols;
  for (const MapMorphism& b : basis) cols.push_back(hs.coordinates(aus.functor_hom(b)));
  std::optional<Mat> c = solve(hstack(cols, hs.dim(), f), hs.coordinates(phi_hom));
  if (!c) return std::nullopt;
  MapMorphism acc = MapMorphism::zero(z, m);
  for (std::size_t k = 0; k < basis.size(); ++k) acc = acc + basis[k].scaled((*c)(k, 0));
  return acc;
}

inline bool contains_object(const MapsCategory& cat, const std::vector<MapObject>& corpus, const MapObject& x) {
  Module gx = cat.to_gamma(x);
  for (const MapObject& c : corpus)
    if (is_isomorphic(cat.to_gamma(c), gx)) return true;
  return false;
}

// From a right Φ(corpus)-approximation Φ(z) -> Φ(m) lifted to (r1, r2): z -> m, the object
// w = z ⊕ (M0, 0, 0) ⊕ (M1, M1, 1) with M0 = Ker f and n1 = (r1 f0 1), n2 = (r2 f) is a right
// corpus-approximation of m: the lift is correct up to a null-homotopic map, and those factor
// through the last two summands. Requires (X,0,0) and (X,X,1) in the corpus for every
// indecomposable summand X of M0 and M1.
inline MapApproximation reconstruct_maps_approx_from_phi(const MapsCategory& cat, const AuslanderRealization& aus,
                                                         const FunctorApproximation& given,
                                                         const std::vector<MapObject>& corpus) {
  const MapObject& m = given.target_presentation;
  const MapObject& z = given.source_presentation;
  SubmoduleData ker = kernel(m.f);
  for (const Module& x : indecomposable_summands(ker.module))
    if (!contains_object(cat, corpus, zero_target_object(x)))
      throw PreconditionError("reconstruct_maps_approx_from_phi: corpus lacks (X,0,0) for X = " + x.dim_vector());
  for (const Module& x : indecomposable_summands(m.m1)) {
    if (!contains_object(cat, corpus, zero_target_object(x)))
      throw PreconditionError("reconstruct_maps_approx_from_phi: corpus lacks (X,0,0) for X = " + x.dim_vector());
    if (!contains_object(cat, corpus, identity_object(x)))
      throw PreconditionError("reconstruct_maps_approx_from_phi: corpus lacks (X,X,1) for X = " + x.dim_vector());
  }
  std::optional<MapMorphism> r = lift_functor_hom(aus, z, m, given.map);
  if (!r) throw std::logic_error("reconstruct_maps_approx_from_phi: functor map does not lift");
  const AlgebraPtr& alg = m.algebra();
  DirectSum w1 = direct_sum({z.m1, ker.module, m.m1}, alg);
  DirectSum w2 = direct_sum({z.m2, m.m1}, alg);
  MapObject w(w2.inclusions[0] * z.f * w1.projections[0] + w2.inclusions[1] * w1.projections[2]);
  ModuleHom n1 = r->h1() * w1.projections[0] + ker.inclusion * w1.projections[1] + w1.projections[2];
  ModuleHom n2 = r->h2() * w2.projections[0] + m.f * w2.projections[1];
  return certified_right(cat, MapMorphism(w, m, n1, n2), corpus);
}

}  // namespace mapscat
