#pragma once

#include <string>

#include "ar.hpp"
#include "auslander.hpp"
#include "maps.hpp"

namespace mapscat {

// 0 -> (τM,0,0) -> (E,M,π) -> (M,M,1) -> 0
inline MapShortExactSeq special_seq_identity_target(const Module& m) {
  ShortExactSeq ar = almost_split_ending_at(m);
  MapObject left = zero_target_object(ar.left), mid(ar.surj), right = identity_object(m);
  return {left, mid, right, MapMorphism(left, mid, ar.inj, ModuleHom::zero(left.m2, mid.m2)),
          MapMorphism(mid, right, ar.surj, ModuleHom::identity(m))};
}

// 0 -> (τM,τM,1) -> (τM,E,j) -> (0,M,0) -> 0
inline MapShortExactSeq special_seq_zero_source(const Module& m) {
  ShortExactSeq ar = almost_split_ending_at(m);
  MapObject left = identity_object(ar.left), mid(ar.inj), right = zero_source_object(m);
  return {left, mid, right, MapMorphism(left, mid, ModuleHom::identity(ar.left), ar.inj),
          MapMorphism(mid, right, ModuleHom::zero(mid.m1, right.m1), ar.surj)};
}

// Ending at (M,0,0): left (D(P1*), D(P0*), D(p1*)), middle (D(P1*) ⊕ M, D(P0*), (D(p1*) t)),
// with t induced from an extension t̄: E -> D(P1*) of u: τM -> D(P1*) along j.
inline MapShortExactSeq special_seq_M_zero(const Module& m) {
  if (is_projective(m)) throw PreconditionError("special_seq_M_zero: module is projective");
  TransposeData td = transpose_data(m);
  ModuleHom dp1 = dual_hom(td.d_star);  // D(P1*) -> D(P0*)
  ModuleHom u = dual_hom(td.projection);  // τM -> D(P1*)
  ShortExactSeq ar = almost_split_ending_at(m);
  ModuleHom u_on_left(ar.left, u.target(), u.maps());
  auto tbar = extend_along(ar.inj, u_on_left);
  if (!tbar) throw std::logic_error("special_seq_M_zero: u does not extend along j");
  ModuleHom t = factor_through_epi(ar.surj, dp1 * *tbar);
  const AlgebraPtr& alg = m.algebra();
  const Module& dP1 = dp1.source();
  const Module& dP0 = dp1.target();
  DirectSum e1 = direct_sum({dP1, m}, alg);
  ModuleHom h = dp1 * e1.projections[0] + t * e1.projections[1];
  MapObject left(dp1), mid(h), right = zero_target_object(m);
  MapMorphism inj(left, mid, e1.inclusions[0], ModuleHom::identity(dP0));
  MapMorphism surj(mid, right, e1.projections[1].scaled(m.field().neg(1)), ModuleHom::zero(dP0, right.m2));
  return {left, mid, right, inj, surj};
}

// 0 -> (N,N,1) -> (N,E,j) -> (0,τ⁻¹N,0) -> 0
inline MapShortExactSeq special_seq_identity_source(const Module& n) {
  ShortExactSeq ar = almost_split_starting_at(n);
  MapObject left = identity_object(ar.left), mid(ar.inj), right = zero_source_object(ar.right);
  return {left, mid, right, MapMorphism(left, mid, ModuleHom::identity(ar.left), ar.inj),
          MapMorphism(mid, right, ModuleHom::zero(mid.m1, right.m1), ar.surj)};
}

// 0 -> (N,0,0) -> (E,τ⁻¹N,π) -> (τ⁻¹N,τ⁻¹N,1) -> 0
inline MapShortExactSeq special_seq_zero_target(const Module& n) {
  ShortExactSeq ar = almost_split_starting_at(n);
  MapObject left = zero_target_object(ar.left), mid(ar.surj), right = identity_object(ar.right);
  return {left, mid, right, MapMorphism(left, mid, ar.inj, ModuleHom::zero(left.m2, mid.m2)),
          MapMorphism(mid, right, ar.surj, ModuleHom::identity(ar.right))};
}

// Starting at (0,N,0), from the minimal injective copresentation 0 -> N -> I0 -> I1, i.e. the
// dual of a minimal projective presentation of DN: the right term is (D(I0)*, D(I1)*, D(q1)*) and
// the middle (D(I0)*, D(I1)* ⊕ N, (D(q1)*; v)).
inline MapShortExactSeq special_seq_dual_zero_source(const Module& n) {
  if (is_injective(n)) throw PreconditionError("special_seq_dual_zero_source: module is injective");
  TransposeData td = transpose_data(dual_module(n));
  const ModuleHom& dq = td.d_star;  // D(I0)* -> D(I1)*
  ShortExactSeq ar = almost_split_starting_at(n);
  ModuleHom proj(td.projection.source(), ar.right, td.projection.maps());
  auto vbar = lift_through(ar.surj, proj);
  if (!vbar) throw std::logic_error("special_seq_dual_zero_source: projection does not lift");
  auto v = lift_through(ar.inj, *vbar * dq);
  if (!v) throw std::logic_error("special_seq_dual_zero_source: v̄ d* does not land in N");
  const AlgebraPtr& alg = n.algebra();
  const Module& i0 = dq.source();
  const Module& i1 = dq.target();
  DirectSum e2 = direct_sum({i1, ar.left}, alg);
  ModuleHom h = e2.inclusions[0] * dq + e2.inclusions[1] * *v;
  MapObject left = zero_source_object(ar.left), mid(h), right(dq);
  MapMorphism inj(left, mid, ModuleHom::zero(left.m1, i0), e2.inclusions[1]);
  MapMorphism surj(mid, right, ModuleHom::identity(i0), e2.projections[0]);
  return {left, mid, right, inj, surj};
}

enum class DualFamily { identity_source, zero_target, zero_source };

inline MapShortExactSeq special_seq_duals(const Module& n, DualFamily family) {
  if (is_injective(n)) throw PreconditionError("special_seq_duals: module is injective");
  switch (family) {
    case DualFamily::identity_source: return special_seq_identity_source(n);
    case DualFamily::zero_target: return special_seq_zero_target(n);
    case DualFamily::zero_source: return special_seq_dual_zero_source(n);
  }
  throw std::invalid_argument("special_seq_duals: unknown family");
}

struct ArInSCheck {
  bool hypothesis = false;  // both end structure maps neither split epi nor split mono
  SExactness exactness;
};

inline bool is_split_epi_or_mono(const ModuleHom& f) { return is_split_epi(f) || is_split_mono(f); }

inline ArInSCheck check_ar_in_S(const MapsCategory& cat, const MapShortExactSeq& s) {
  ArInSCheck c;
  c.hypothesis = !is_split_epi_or_mono(s.left.f) && !is_split_epi_or_mono(s.right.f);
  c.exactness = is_S_exact(cat, s);
  return c;
}

// 0 -> Φ(N) -> Φ(E) -> Φ(M) -> 0 in the realized mod(mod Λ).
inline ShortExactSeq phi_image_of_ar(const AuslanderRealization& aus, const MapShortExactSeq& s) {
  if (is_split_epi_or_mono(s.left.f))
    throw PreconditionError("phi_image_of_ar: left structure map is split epi or split mono");
  if (is_split_epi_or_mono(s.right.f))
    throw PreconditionError("phi_image_of_ar: right structure map is split epi or split mono");
  return aus.functor_sequence(s);
}

}  // namespace mapscat
