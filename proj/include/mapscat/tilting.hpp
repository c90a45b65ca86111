#pragma once

#include <optional>
#include <string>
#include <vector>

#include "auslander.hpp"
#include "decompose.hpp"
#include "maps.hpp"

namespace mapscat {

enum class Verdict { holds, fails, not_found_within_bound };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::not_found_within_bound: return "not_found_within_bound";
  }
  return "?";
}

struct AxiomCheck {
  std::string axiom;
  Verdict verdict = Verdict::holds;
  std::vector<std::string> witnesses;
};

struct TiltingReport {
  std::vector<AxiomCheck> checks;
  bool tilting() const {
    for (const AxiomCheck& c : checks)
      if (c.verdict != Verdict::holds) return false;
    return !checks.empty();
  }
};

// Left add(T)-approximation X -> ⊕_t t^{dim Hom(X,t)} built from all basis homs, on modules.
struct LeftApproximation {
  Module target;
  ModuleHom map;
};

inline LeftApproximation left_add_approximation(const Module& x, const std::vector<Module>& ts) {
  std::vector<Module> parts;
  std::vector<ModuleHom> comps;
  for (const Module& t : ts)
    for (const ModuleHom& h : hom_basis(x, t)) {
      parts.push_back(t);
      comps.push_back(h);
    }
  DirectSum ds = direct_sum(parts, x.algebra());
  ModuleHom total = ModuleHom::zero(x, ds.module);
  for (std::size_t i = 0; i < parts.size(); ++i) total = total + ds.inclusions[i] * comps[i];
  return {ds.module, total};
}

inline bool in_add(const Module& x, const std::vector<Module>& ts) {
  for (const Module& s : indecomposable_summands(x))
    if (!find_isomorphic(ts, s)) return false;
  return true;
}

// Searches 0 -> X -> T^0 -> ... -> T^k -> 0 (k <= max_length) by iterated left approximations;
// `admissible` decides whether 0 -> X_i -> T^i -> X_{i+1} -> 0 is allowed. A failure at the first
// step disproves existence, later failures only bound the search.
template <class Admissible>
Verdict coresolve(const Module& x, const std::vector<Module>& ts, std::size_t max_length, Admissible admissible,
                  std::string& witness) {
  Module current = x;
  for (std::size_t step = 0;; ++step) {
    if (current.is_zero() || in_add(current, ts)) return Verdict::holds;
    if (step == max_length) {
      witness = "cokernel " + current.dim_vector() + " not in add T after " + std::to_string(step) + " steps";
      return Verdict::not_found_within_bound;
    }
    LeftApproximation a = left_add_approximation(current, ts);
    QuotientData c = cokernel(a.map);
    ShortExactSeq s{current, a.target, c.module, a.map, c.projection};
    if (!a.map.is_mono() || !admissible(s)) {
      witness = "no admissible monomorphism from " + current.dim_vector() + " into add T";
      return step == 0 ? Verdict::fails : Verdict::not_found_within_bound;
    }
    current = c.module;
  }
}

// Maps-side check of a tilting subcategory of maps(mod Λ) relative to S.
inline TiltingReport check_tilting_in_maps(const MapsCategory& cat, const std::vector<MapObject>& ts,
                                           const std::vector<Module>& lambda_corpus, std::size_t max_degree) {
  TiltingReport r;
  std::vector<Module> tg;
  for (const MapObject& t : ts) tg.push_back(cat.to_gamma(t));
  for (std::size_t k = 1; k <= max_degree; ++k) {
    AxiomCheck ext{"Ext_F^" + std::to_string(k) + "(T,T) = 0", Verdict::holds, {}};
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < ts.size(); ++j)
        if (std::size_t d = relative_ext_dim(cat, ts[i], ts[j], k); d != 0) {
          ext.verdict = Verdict::fails;
          ext.witnesses.push_back(ts[i].label() + " x " + ts[j].label() + ": dim " + std::to_string(d));
        }
    r.checks.push_back(std::move(ext));
  }
  AxiomCheck cores{"S-coresolutions of (0,C,0) of length <= " + std::to_string(max_degree), Verdict::holds, {}};
  auto in_S = [&cat](const ShortExactSeq& s) { return is_S_exact(cat, cat.from_gamma(s)).in_S(); };
  for (const Module& c : lambda_corpus) {
    std::string witness;
    Verdict v = coresolve(cat.to_gamma(zero_source_object(c)), tg, max_degree, in_S, witness);
    if (v != Verdict::holds) {
      if (cores.verdict != Verdict::fails) cores.verdict = v;
      cores.witnesses.push_back("C = " + c.dim_vector() + ": " + witness);
    }
  }
  r.checks.push_back(std::move(cores));
  return r;
}

// Classical: structure maps mono (pd Φ(T) <= 1) plus the degree-one conditions.
inline TiltingReport check_classical_tilting(const MapsCategory& cat, const std::vector<MapObject>& ts,
                                             const std::vector<Module>& lambda_corpus) {
  TiltingReport r;
  AxiomCheck mono{"structure maps are monomorphisms", Verdict::holds, {}};
  for (const MapObject& t : ts) {
    MapObject m = minimize_presentation(cat, t).object;
    if (!m.f.is_mono()) {
      mono.verdict = Verdict::fails;
      mono.witnesses.push_back(t.label() + " has kernel " + kernel(m.f).module.dim_vector());
    }
  }
  r.checks.push_back(std::move(mono));
  TiltingReport rest = check_tilting_in_maps(cat, ts, lambda_corpus, 1);
  for (AxiomCheck& c : rest.checks) r.checks.push_back(std::move(c));
  return r;
}

inline TiltingReport check_generalized_tilting(const MapsCategory& cat, const std::vector<MapObject>& ts,
                                               const std::vector<Module>& lambda_corpus) {
  return check_tilting_in_maps(cat, ts, lambda_corpus, 2);
}

// Independent check in the realized mod(mod Λ): Φ(T) has pd <= n, no self-extensions in degrees
// 1..n, and every indecomposable projective has an exact add Φ(T)-coresolution of length <= n.
inline TiltingReport check_tilting_over_auslander(const AuslanderRealization& aus, const std::vector<MapObject>& ts,
                                                  std::size_t n) {
  TiltingReport r;
  std::vector<Module> tf;
  for (const MapObject& t : ts) {
    Module m = aus.functor_module(t);
    if (!m.is_zero()) tf.push_back(std::move(m));
  }
  AxiomCheck pd{"pd Φ(T) <= " + std::to_string(n), Verdict::holds, {}};
  for (const Module& t : tf)
    if (projective_dimension(t) > n) {
      pd.verdict = Verdict::fails;
      pd.witnesses.push_back(t.dim_vector());
    }
  r.checks.push_back(std::move(pd));
  AxiomCheck ext{"Ext^k(Φ(T),Φ(T)) = 0 for 1 <= k <= " + std::to_string(n), Verdict::holds, {}};
  for (const Module& a : tf)
    for (const Module& b : tf)
      for (std::size_t k = 1; k <= n; ++k)
        if (ext_dim(a, b, k) != 0) {
          ext.verdict = Verdict::fails;
          ext.witnesses.push_back(a.dim_vector() + " x " + b.dim_vector() + " in degree " + std::to_string(k));
        }
  r.checks.push_back(std::move(ext));
  AxiomCheck cores{"coresolutions of projectives", Verdict::holds, {}};
  auto exact = [](const ShortExactSeq& s) { return is_short_exact(s); };
  for (int v = 0; v < aus.algebra()->vertex_count(); ++v) {
    std::string witness;
    Verdict verdict = coresolve(indecomposable_projective(aus.algebra(), v), tf, n, exact, witness);
    if (verdict != Verdict::holds) {
      if (cores.verdict != Verdict::fails) cores.verdict = verdict;
      cores.witnesses.push_back("P" + std::to_string(v + 1) + ": " + witness);
    }
  }
  r.checks.push_back(std::move(cores));
  return r;
}

}  // namespace mapscat
