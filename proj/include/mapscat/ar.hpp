#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "decompose.hpp"
#include "module.hpp"

namespace mapscat {

struct ShortExactSeq {
  Module left;
  Module middle;
  Module right;
  ModuleHom inj;   // left -> middle
  ModuleHom surj;  // middle -> right
};

inline bool is_short_exact(const ShortExactSeq& s) {
  if (!s.inj.is_mono() || !s.surj.is_epi() || !(s.surj * s.inj).is_zero()) return false;
  return s.middle.total_dim() == s.left.total_dim() + s.right.total_dim();
}

// Unique map q̄ with q̄ ∘ proj = g, for proj surjective and g vanishing on Ker proj.
inline ModuleHom factor_through_epi(const ModuleHom& proj, const ModuleHom& g) {
  std::vector<Mat> maps;
  for (int v = 0; v < proj.source().vertex_count(); ++v) {
    auto x = solve(proj.at(v).transpose(), g.at(v).transpose());
    if (!x) throw std::logic_error("factor_through_epi: map does not vanish on the kernel");
    maps.push_back(x->transpose());
  }
  return ModuleHom(proj.target(), g.target(), std::move(maps));
}

// Some h with target ∘ h = g when g factors through `through` (h: source(g) -> source(through)).
inline std::optional<ModuleHom> lift_through(const ModuleHom& through, const ModuleHom& g) {
  HomSpace hs(g.source(), through.source());
  HomSpace ht(g.source(), through.target());
  Mat m = postcompose_matrix(hs, ht, through);
  auto x = solve(m, ht.coordinates(g));
  if (!x) return std::nullopt;
  return hs.combination(*x);
}

// Some h with h ∘ through = g (extension along `through`), h: target(through) -> target(g).
inline std::optional<ModuleHom> extend_along(const ModuleHom& through, const ModuleHom& g) {
  HomSpace hs(through.target(), g.target());
  HomSpace ht(through.source(), g.target());
  Mat m = precompose_matrix(hs, ht, through);
  auto x = solve(m, ht.coordinates(g));
  if (!x) return std::nullopt;
  return hs.combination(*x);
}

inline bool is_split_epi(const ModuleHom& h) {
  if (!h.is_epi()) return false;
  return lift_through(h, ModuleHom::identity(h.target())).has_value();
}

inline bool is_split_mono(const ModuleHom& h) {
  if (!h.is_mono()) return false;
  return extend_along(h, ModuleHom::identity(h.source())).has_value();
}

inline bool is_split(const ShortExactSeq& s) { return is_split_epi(s.surj); }

// Ext¹(M, N) = Hom(ΩM, N) / (restrictions of Hom(P0, N)), with P0 the projective cover of M.
class Ext1Space {
 public:
  Ext1Space(const Module& m, const Module& n)
      : m_(m), n_(n), cover_(projective_cover(m)), syzygy_(kernel(cover_.epi)), cocycles_(syzygy_.module, n) {
    HomSpace from_cover(cover_.module(), n);
    Mat restrict = precompose_matrix(from_cover, cocycles_, syzygy_.inclusion);
    quotient_ = quotient_map(restrict, cocycles_.dim(), m.field());
  }

  std::size_t dim() const { return quotient_.project.rows(); }
  const HomSpace& cocycles() const { return cocycles_; }
  const SubmoduleData& syzygy() const { return syzygy_; }
  const ProjectiveCover& cover() const { return cover_; }

  Mat class_of(const ModuleHom& cocycle) const { return quotient_.project * cocycles_.coordinates(cocycle); }
  ModuleHom representative(const Mat& ext_coords) const { return cocycles_.combination(quotient_.lift * ext_coords); }

  // Pushout of 0 -> ΩM -> P0 -> M -> 0 along the cocycle.
  ShortExactSeq extension(const Mat& ext_coords) const {
    ModuleHom phi = representative(ext_coords);
    const AlgebraPtr& alg = m_.algebra();
    DirectSum ds = direct_sum({cover_.module(), n_}, alg);
    ModuleHom into = ds.inclusions[0] * syzygy_.inclusion - ds.inclusions[1] * phi;
    QuotientData e = cokernel(into);
    ModuleHom inj = e.projection * ds.inclusions[1];
    ModuleHom surj = factor_through_epi(e.projection, cover_.epi * ds.projections[0]);
    return {n_, e.module, m_, inj, surj};
  }

  // Linear action on Ext coordinates of precomposition with an endomorphism r of M.
  Mat right_action(const ModuleHom& r) const {
    ModuleHom lifted = *lift_through(cover_.epi, r * cover_.epi);  // P0 -> P0 over r
    ModuleHom on_syzygy = *lift_through(syzygy_.inclusion, lifted * syzygy_.inclusion);
    Mat out(dim(), dim(), m_.field());
    for (std::size_t k = 0; k < dim(); ++k) {
      Mat e(dim(), 1, m_.field());
      e.set(k, 0, 1);
      out.set_block(0, k, class_of(representative(e) * on_syzygy));
    }
    return out;
  }
  // Linear action of postcomposition with an endomorphism s of N.
  Mat left_action(const ModuleHom& s) const {
    Mat out(dim(), dim(), m_.field());
    for (std::size_t k = 0; k < dim(); ++k) {
      Mat e(dim(), 1, m_.field());
      e.set(k, 0, 1);
      out.set_block(0, k, class_of(s * representative(e)));
    }
    return out;
  }

 private:
  Module m_;
  Module n_;
  ProjectiveCover cover_;
  SubmoduleData syzygy_;
  HomSpace cocycles_;
  QuotientMap quotient_;
};

inline std::size_t ext1_dim(const Module& m, const Module& n) { return Ext1Space(m, n).dim(); }

// Almost split sequence ending at an indecomposable non-projective M, from a nonzero element of
// Ext¹(M, τM) killed by rad End(M) and rad End(τM).
inline ShortExactSeq almost_split_ending_at(const Module& m) {
  if (m.is_zero()) throw PreconditionError("almost_split_ending_at: zero module");
  if (is_projective(m)) throw PreconditionError("almost_split_ending_at: module is projective");
  Module n = tau(m);
  Ext1Space ext(m, n);
  if (ext.dim() == 0) throw std::runtime_error("almost_split_ending_at: Ext¹(M, τM) vanishes");
  std::vector<Mat> conditions;
  EndRadical rm = end_radical(m);
  for (std::size_t c = 0; c < rm.radical.cols(); ++c) conditions.push_back(ext.right_action(rm.end.combination(rm.radical.column(c))));
  EndRadical rn = end_radical(n);
  for (std::size_t c = 0; c < rn.radical.cols(); ++c) conditions.push_back(ext.left_action(rn.end.combination(rn.radical.column(c))));
  Mat socle = conditions.empty() ? Mat::identity(ext.dim(), m.field())
                                 : kernel_basis(vstack(conditions, ext.dim(), m.field()));
  if (socle.cols() == 0) throw std::runtime_error("almost_split_ending_at: empty socle of Ext¹(M, τM)");
  return ext.extension(socle.column(0));
}

inline ShortExactSeq almost_split_starting_at(const Module& n) { return almost_split_ending_at(tau_inverse(n)); }

struct AlmostSplitCertificate {
  bool almost_split = false;
  std::string failure;
  std::size_t test_objects = 0;
  std::size_t factorizations_checked = 0;  // total dimension of radical hom spaces checked
  explicit operator bool() const { return almost_split; }
};

// rad(X, M) ⊆ Hom(X, M) for indecomposable X, M: all of Hom unless X ≅ M.
inline Mat radical_hom_coordinates(const HomSpace& xm) {
  const Module& x = xm.source();
  const Module& m = xm.target();
  auto iso = isomorphism_between_indecomposables(m, x);
  if (!iso) return Mat::identity(xm.dim(), x.field());
  EndRadical er = end_radical(m);
  std::vector<Mat> cols;
  for (std::size_t c = 0; c < er.radical.cols(); ++c)
    cols.push_back(xm.coordinates(er.end.combination(er.radical.column(c)) * *iso));
  return hstack(cols, xm.dim(), x.field());
}

// Definition check: exact, non-split, indecomposable ends, and every radical map X -> right from a
// test object factors through surj. Factorization is checked on whole subspaces, so the verdict is
// exact for the given test set.
inline AlmostSplitCertificate is_almost_split(const ShortExactSeq& s, const std::vector<Module>& test_set) {
  AlmostSplitCertificate cert;
  auto fail = [&cert](std::string why) {
    cert.failure = std::move(why);
    return cert;
  };
  if (!is_short_exact(s)) return fail("sequence is not short exact");
  if (is_split(s)) return fail("sequence splits");
  if (!is_indecomposable(s.left)) return fail("left term is not indecomposable");
  if (!is_indecomposable(s.right)) return fail("right term is not indecomposable");
  for (const Module& x : test_set) {
    HomSpace xm(x, s.right);
    if (xm.dim() == 0) continue;
    HomSpace xe(x, s.middle);
    Mat factored = postcompose_matrix(xe, xm, s.surj);
    Mat rad = radical_hom_coordinates(xm);
    cert.factorizations_checked += rad.cols();
    if (!in_column_space(factored, rad))
      return fail("a radical map from a test object of dims " + x.dim_vector() + " does not factor");
    ++cert.test_objects;
  }
  cert.almost_split = true;
  return cert;
}

// Minimal right almost split map into M: the AR epimorphism, or rad M -> M for projective M.
inline ModuleHom sink_map(const Module& m) {
  if (is_projective(m)) return radical_module(m).inclusion;
  return almost_split_ending_at(m).surj;
}

inline ModuleHom source_map(const Module& m) {
  if (is_injective(m)) {
    SubmoduleData soc = socle(m);
    return quotient(m, soc.inclusion.maps()).projection;
  }
  return almost_split_starting_at(m).inj;
}

struct ArVertex {
  Module module;
  bool projective = false;
  bool injective = false;
  std::optional<std::size_t> tau;       // index of τM
  std::optional<ShortExactSeq> sequence;  // almost split sequence ending here
  bool verified = false;
};

struct ArArrow {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t multiplicity = 0;
};

struct ArQuiver {
  std::vector<ArVertex> vertices;
  std::vector<ArArrow> arrows;
  bool complete = true;  // false when the dimension bound cut the knitting short
  std::vector<std::string> warnings;

  std::vector<Module> modules() const {
    std::vector<Module> out;
    for (const ArVertex& v : vertices) out.push_back(v.module);
    return out;
  }
  std::size_t projective_count() const {
    return static_cast<std::size_t>(std::count_if(vertices.begin(), vertices.end(), [](const ArVertex& v) { return v.projective; }));
  }
  std::optional<std::size_t> index_of(const Module& m) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (isomorphism_between_indecomposables(vertices[i].module, m)) return i;
    return std::nullopt;
  }
};

inline bool module_order_less(const Module& a, const Module& b) {
  if (a.total_dim() != b.total_dim()) return a.total_dim() < b.total_dim();
  return a.dims() < b.dims();
}

// Multiplicity of each indecomposable of `corpus` as a summand of m. Summands outside the corpus
// are an error unless `missing` is given, in which case they are counted there.
inline std::vector<std::size_t> summand_multiplicities(const Module& m, const std::vector<Module>& corpus,
                                                       std::size_t* missing = nullptr) {
  std::vector<std::size_t> mult(corpus.size(), 0);
  for (const Module& s : indecomposable_summands(m)) {
    auto idx = find_isomorphic(corpus, s);
    if (idx) {
      ++mult[*idx];
    } else if (missing) {
      ++*missing;
    } else {
      throw std::logic_error("summand outside the corpus");
    }
  }
  return mult;
}

// Frontier knitting from the projectives, closing under τ, τ⁻¹ and the summands of middle
// terms, radicals of projectives and quotients of injectives by their socles.
// `seed` drives the randomized splitting inside decompositions; the result is deterministic given it.
inline ArQuiver knit_ar_quiver(const AlgebraPtr& algebra, std::size_t dim_bound, bool verify = true,
                               std::uint64_t seed = 0) {
  ArQuiver q;
  std::vector<Module> found;
  std::deque<std::size_t> frontier;
  std::vector<std::optional<ShortExactSeq>> seqs;
  auto add = [&](const Module& x) {
    if (x.is_zero()) return;
    if (x.total_dim() > dim_bound) {
      if (q.complete) q.warnings.push_back("dimension bound " + std::to_string(dim_bound) + " exceeded by " + x.dim_vector());
      q.complete = false;
      return;
    }
    if (find_isomorphic(found, x)) return;
    found.push_back(x);
    seqs.emplace_back();
    frontier.push_back(found.size() - 1);
  };
  for (int v = 0; v < algebra->vertex_count(); ++v) add(indecomposable_projective(algebra, v));
  while (!frontier.empty()) {
    std::size_t i = frontier.front();
    frontier.pop_front();
    Module m = found[i];
    bool proj = is_projective(m), inj = is_injective(m);
    if (!proj) {
      ShortExactSeq s = almost_split_ending_at(m);
      seqs[i] = s;
      add(s.left);
      for (const Module& e : indecomposable_summands(s.middle, seed)) add(e);
    } else {
      for (const Module& e : indecomposable_summands(radical_module(m).module, seed)) add(e);
    }
    if (!inj) {
      add(tau_inverse(m));
    } else {
      SubmoduleData soc = socle(m);
      for (const Module& e : indecomposable_summands(quotient(m, soc.inclusion.maps()).module, seed)) add(e);
    }
  }
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return module_order_less(found[a], found[b]); });
  std::vector<Module> sorted;
  for (std::size_t i : order) {
    ArVertex v;
    v.module = found[i];
    v.projective = is_projective(found[i]);
    v.injective = is_injective(found[i]);
    v.sequence = seqs[i];
    q.vertices.push_back(std::move(v));
    sorted.push_back(found[i]);
  }
  std::size_t missing = 0;
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    ArVertex& v = q.vertices[i];
    std::vector<std::size_t> mult;
    if (v.sequence) {
      v.tau = find_isomorphic(sorted, v.sequence->left);
      mult = summand_multiplicities(v.sequence->middle, sorted, q.complete ? nullptr : &missing);
      if (verify) v.verified = is_almost_split(*v.sequence, sorted).almost_split;
    } else {
      mult = summand_multiplicities(radical_module(v.module).module, sorted, q.complete ? nullptr : &missing);
    }
    for (std::size_t j = 0; j < mult.size(); ++j)
      if (mult[j]) q.arrows.push_back({j, i, mult[j]});
  }
  std::sort(q.arrows.begin(), q.arrows.end(), [](const ArArrow& a, const ArArrow& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  if (missing) q.warnings.push_back(std::to_string(missing) + " arrow endpoints lie beyond the dimension bound");
  return q;
}

}  // namespace mapscat
