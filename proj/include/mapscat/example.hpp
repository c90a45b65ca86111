#pragma once

#include <string>
#include <vector>

#include "ar.hpp"
#include "auslander.hpp"
#include "functors.hpp"
#include "maps.hpp"

namespace mapscat {

// The maps category over K[1 -> 2]: three Λ-indecomposables, eleven maps, five nonzero functors.

struct ExampleItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExampleReport {
  std::vector<ExampleItem> items;
  std::size_t lambda_indecomposables = 0;
  std::size_t gamma_indecomposables = 0;
  std::size_t gamma_projectives = 0;
  std::size_t nonzero_functors = 0;
  bool passed() const {
    for (const ExampleItem& i : items)
      if (!i.passed) return false;
    return !items.empty();
  }
};

// The named objects of K[1 -> 2]: P1 = (1,1), S1 = (1,0), S2 = (0,1) = rad P1, f: S2 ↪ P1, g: P1 ↠ S1.
struct A2Objects {
  Module s1, s2, p1;
  ModuleHom f, g;

  explicit A2Objects(const AlgebraPtr& alg)
      : s1(simple_module(alg, 0)), s2(simple_module(alg, 1)), p1(indecomposable_projective(alg, 0)) {
    f = ModuleHom(s2, p1, radical_module(p1).inclusion.maps());
    g = ModuleHom(p1, s1, top(p1).projection.maps());
  }
};

namespace detail {

inline ModuleHom column_of(const DirectSum& target, const std::vector<ModuleHom>& parts) {
  ModuleHom acc = ModuleHom::zero(parts.front().source(), target.module);
  for (std::size_t i = 0; i < parts.size(); ++i) acc = acc + target.inclusions[i] * parts[i];
  return acc;
}

inline ModuleHom row_of(const DirectSum& source, const std::vector<ModuleHom>& parts) {
  ModuleHom acc = ModuleHom::zero(source.module, parts.front().target());
  for (std::size_t i = 0; i < parts.size(); ++i) acc = acc + parts[i] * source.projections[i];
  return acc;
}

inline ExampleItem item(std::string name, bool ok, std::string detail) { return {std::move(name), ok, std::move(detail)}; }

}  // namespace detail

// The three almost split sequences of the example, written out term by term.
inline std::vector<MapShortExactSeq> worked_example_sequences(const AlgebraPtr& alg) {
  using detail::column_of;
  using detail::row_of;
  A2Objects o(alg);
  const Field& fld = alg->field();
  const Scalar minus_one = fld.neg(1);
  Module zero = Module::zero(alg);
  std::vector<MapShortExactSeq> out;
  {
    // (0,S2,0) -> (S2, S2⊕P1, (1;0)) -> (S2,P1,f)
    DirectSum e2 = direct_sum({o.s2, o.p1}, alg);
    MapObject n = zero_source_object(o.s2);
    MapObject e(column_of(e2, {ModuleHom::identity(o.s2), ModuleHom::zero(o.s2, o.p1)}));
    MapObject m(o.f);
    MapMorphism j(n, e, ModuleHom::zero(zero, o.s2), column_of(e2, {ModuleHom::identity(o.s2), o.f}));
    MapMorphism p(e, m, ModuleHom::identity(o.s2), row_of(e2, {o.f, ModuleHom::identity(o.p1).scaled(minus_one)}));
    out.push_back({n, e, m, j, p});
  }
  {
    // (S2,P1,f) -> (P1⊕S2, P1⊕S1, diag(1,0)) -> (P1,S1,g)
    DirectSum e1 = direct_sum({o.p1, o.s2}, alg);
    DirectSum e2 = direct_sum({o.p1, o.s1}, alg);
    MapObject n(o.f);
    MapObject e(e2.inclusions[0] * e1.projections[0]);
    MapObject m(o.g);
    MapMorphism j(n, e, column_of(e1, {o.f, ModuleHom::identity(o.s2)}), column_of(e2, {ModuleHom::identity(o.p1), o.g}));
    MapMorphism p(e, m, row_of(e1, {ModuleHom::identity(o.p1).scaled(minus_one), o.f}),
                  row_of(e2, {o.g.scaled(minus_one), ModuleHom::identity(o.s1)}));
    out.push_back({n, e, m, j, p});
  }
  {
    // (P1,S1,g) -> (S1⊕P1, S1, (1 0)) -> (S1,0,0)
    DirectSum e1 = direct_sum({o.s1, o.p1}, alg);
    MapObject n(o.g);
    MapObject e(e1.projections[0]);
    MapObject m = zero_target_object(o.s1);
    MapMorphism j(n, e, column_of(e1, {o.g, ModuleHom::identity(o.p1)}), ModuleHom::identity(o.s1));
    MapMorphism p(e, m, row_of(e1, {ModuleHom::identity(o.s1).scaled(minus_one), o.g}), ModuleHom::zero(o.s1, zero));
    out.push_back({n, e, m, j, p});
  }
  return out;
}

inline bool all_isomorphic_to_some(const std::vector<Module>& found, const std::vector<Module>& expected) {
  if (found.size() != expected.size()) return false;
  std::vector<bool> used(expected.size(), false);
  for (const Module& m : found) {
    bool matched = false;
    for (std::size_t i = 0; i < expected.size() && !matched; ++i)
      if (!used[i] && is_isomorphic(m, expected[i])) used[i] = matched = true;
    if (!matched) return false;
  }
  return true;
}

inline ExampleReport verify_worked_example(const AlgebraPtr& alg) {
  using detail::item;
  ExampleReport r;
  const Quiver& q = alg->quiver();
  bool shape = q.vertex_count == 2 && q.arrows.size() == 1 && q.arrows[0].source == 0 && q.arrows[0].target == 1 &&
               alg->relations().empty();
  r.items.push_back(item("algebra is K[1->2]", shape, "dim " + std::to_string(alg->dimension())));
  if (!shape) return r;

  A2Objects o(alg);
  MapsCategory cat(alg);

  ArQuiver ql = knit_ar_quiver(alg, 40);
  r.lambda_indecomposables = ql.vertices.size();
  bool lambda_ok = ql.complete && all_isomorphic_to_some(ql.modules(), {o.s2, o.p1, o.s1});
  if (lambda_ok) {
    ShortExactSeq s = almost_split_ending_at(o.s1);
    lambda_ok = is_isomorphic(s.left, o.s2) && is_isomorphic(s.middle, o.p1);
  }
  r.items.push_back(item("mod Λ: {S2, P1, S1} with 0 -> S2 -> P1 -> S1 -> 0", lambda_ok,
                         std::to_string(ql.vertices.size()) + " indecomposables"));

  ArQuiver qg = knit_ar_quiver(cat.gamma(), 80);
  std::vector<Module> gcorpus = qg.modules();
  r.gamma_indecomposables = qg.vertices.size();
  r.gamma_projectives = qg.projective_count();
  r.items.push_back(item("maps(mod Λ): 11 indecomposables", qg.complete && qg.vertices.size() == 11,
                         std::to_string(qg.vertices.size()) + " indecomposables, all sequences verified: " +
                             (std::all_of(qg.vertices.begin(), qg.vertices.end(),
                                          [](const ArVertex& v) { return v.projective || v.verified; })
                                  ? "yes"
                                  : "no")));
  std::vector<Module> projectives;
  for (const ArVertex& v : qg.vertices)
    if (v.projective) projectives.push_back(v.module);
  std::vector<Module> listed = {cat.to_gamma(zero_source_object(o.s2)), cat.to_gamma(zero_source_object(o.p1)),
                                cat.to_gamma(identity_object(o.p1)), cat.to_gamma(identity_object(o.s2))};
  r.items.push_back(item("projectives (0,S2), (0,P1), (P1,P1,1), (S2,S2,1)", all_isomorphic_to_some(projectives, listed),
                         std::to_string(projectives.size()) + " projectives"));

  const char* names[] = {"sequence (a)", "sequence (b)", "sequence (c)"};
  std::vector<MapShortExactSeq> seqs = worked_example_sequences(alg);
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    ShortExactSeq gs = cat.to_gamma(seqs[k]);
    bool exact = is_short_exact(gs);
    AlmostSplitCertificate cert = is_almost_split(gs, gcorpus);
    ShortExactSeq knitted = almost_split_ending_at(gs.right);
    bool terms = is_isomorphic(knitted.left, gs.left) && is_isomorphic(knitted.middle, gs.middle);
    r.items.push_back(item(names[k], exact && cert.almost_split && terms,
                           seqs[k].left.label() + " -> " + seqs[k].middle.label() + " -> " + seqs[k].right.label() +
                               (cert.almost_split ? "" : "; " + cert.failure)));
  }

  AuslanderRealization aus(alg, ql.modules());
  std::vector<Module> functor_classes;
  for (const Module& g : gcorpus) {
    Module phi_g = aus.functor_module(cat.from_gamma(g));
    if (!phi_g.is_zero() && !find_isomorphic(functor_classes, phi_g)) functor_classes.push_back(phi_g);
  }
  r.nonzero_functors = functor_classes.size();

  // (−,S2) -> (−,P1) -> rad(−,S1) -> (−,S1) -> S_{S1}
  Module zero = Module::zero(alg);
  std::vector<MapObject> chain = {zero_source_object(o.s2), zero_source_object(o.p1), MapObject(o.f),
                                  zero_source_object(o.s1), MapObject(o.g)};
  std::vector<MapMorphism> links = {
      MapMorphism(chain[0], chain[1], ModuleHom::zero(zero, zero), o.f),
      MapMorphism(chain[1], chain[2], ModuleHom::zero(zero, o.s2), ModuleHom::identity(o.p1)),
      MapMorphism(chain[2], chain[3], ModuleHom::zero(o.s2, zero), o.g),
      MapMorphism(chain[3], chain[4], ModuleHom::zero(zero, o.p1), ModuleHom::identity(o.s1))};
  std::vector<Module> fs;
  std::vector<ModuleHom> fh;
  for (const MapObject& c : chain) fs.push_back(aus.functor_module(c));
  for (const MapMorphism& l : links) fh.push_back(aus.functor_hom(l));
  bool distinct = true;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    distinct = distinct && is_indecomposable(fs[i]);
    for (std::size_t j = 0; j < i; ++j) distinct = distinct && !is_isomorphic(fs[i], fs[j]);
  }
  bool exact = is_short_exact({fs[0], fs[1], fs[2], fh[0], fh[1]}) && is_short_exact({fs[2], fs[3], fs[4], fh[2], fh[3]});
  ArQuiver qa = knit_ar_quiver(aus.algebra(), 40);
  bool irreducible = qa.complete && qa.vertices.size() == 5;
  for (std::size_t i = 0; i + 1 < fs.size() && irreducible; ++i) {
    auto from = qa.index_of(fs[i]), to = qa.index_of(fs[i + 1]);
    irreducible = from && to && std::any_of(qa.arrows.begin(), qa.arrows.end(), [&](const ArArrow& a) {
                    return a.from == *from && a.to == *to;
                  });
  }
  r.items.push_back(item("Φ chain 0 -> (−,S2) -> (−,P1) -> rad(−,S1) -> (−,S1) -> S_S1 -> 0",
                         distinct && exact && irreducible && functor_classes.size() == 5,
                         std::to_string(functor_classes.size()) + " nonzero indecomposable functors; pairwise distinct: " +
                             (distinct ? "yes" : "no") + "; exact: " + (exact ? "yes" : "no") +
                             "; consecutive maps irreducible: " + (irreducible ? "yes" : "no")));

  const Algebra& a = *aus.algebra();
  bool chain_quiver = a.vertex_count() == 3 && a.arrow_count() == 2;
  if (chain_quiver) {
    const Arrow& x = a.arrow(0);
    const Arrow& y = a.arrow(1);
    bool xy = x.target == y.source, yx = y.target == x.source;
    const Arrow& first = xy ? x : y;
    const Arrow& second = xy ? y : x;
    chain_quiver = (xy != yx) && first.source != second.target && first.source != first.target &&
                   second.source != second.target;
  }
  bool zero_relation = chain_quiver && a.dimension() == 5;
  r.items.push_back(item("Auslander algebra is 1 -> 2 -> 3 with the composite zero", zero_relation,
                         "dim " + std::to_string(a.dimension()) + ", " + std::to_string(a.arrow_count()) + " arrows, " +
                             std::to_string(a.relations().size()) + " relations"));
  return r;
}

}  // namespace mapscat
