#pragma once

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "quiver.hpp"

namespace mapscat {

// A representation: one space per vertex, one matrix per arrow (dims[target] x dims[source]).
class Module {
 public:
  Module() = default;
  Module(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Mat> arrow_maps)
      : algebra_(std::move(algebra)), dims_(std::move(dims)), arrows_(std::move(arrow_maps)) {
    if (!algebra_) throw std::invalid_argument("module without algebra");
    if (dims_.size() != static_cast<std::size_t>(algebra_->vertex_count()))
      throw std::invalid_argument("module dimension vector has wrong length");
    if (arrows_.size() != algebra_->arrow_count()) throw std::invalid_argument("module has wrong number of arrow maps");
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
      const Arrow& ar = algebra_->arrow(static_cast<int>(a));
      if (arrows_[a].rows() != dim(ar.target) || arrows_[a].cols() != dim(ar.source) ||
          arrows_[a].field() != algebra_->field())
        throw std::invalid_argument("arrow map for " + ar.name + " has shape " + arrows_[a].shape());
    }
    if (!satisfies_relations()) throw std::invalid_argument("representation violates a relation");
  }

  static Module zero(const AlgebraPtr& algebra) {
    std::vector<Mat> maps;
    for (std::size_t a = 0; a < algebra->arrow_count(); ++a) maps.emplace_back(0, 0, algebra->field());
    return Module(algebra, std::vector<std::size_t>(static_cast<std::size_t>(algebra->vertex_count()), 0), maps);
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const Field& field() const { return algebra_->field(); }
  int vertex_count() const { return algebra_->vertex_count(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(int v) const { return dims_[static_cast<std::size_t>(v)]; }
  std::size_t total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }
  bool is_zero() const { return total_dim() == 0; }
  const Mat& arrow_map(int a) const { return arrows_[static_cast<std::size_t>(a)]; }
  const std::vector<Mat>& arrow_maps() const { return arrows_; }

  // Action of a path (traversal order) as a dims[target] x dims[source] matrix.
  Mat path_action(const Path& path, int start) const {
    Mat m = Mat::identity(dim(start), field());
    for (int a : path) m = arrow_map(a) * m;
    return m;
  }

  bool satisfies_relations() const {
    for (const Relation& r : algebra_->relations()) {
      int s = algebra_->arrow(r.terms.front().path.front()).source;
      int t = algebra_->arrow(r.terms.front().path.back()).target;
      Mat sum(dim(t), dim(s), field());
      for (const Term& term : r.terms) sum = sum + path_action(term.path, s).scaled(term.coef);
      if (!sum.is_zero()) return false;
    }
    return true;
  }

  std::string dim_vector() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
    os << ")";
    return os.str();
  }

 private:
  AlgebraPtr algebra_;
  std::vector<std::size_t> dims_;
  std::vector<Mat> arrows_;
};

inline bool same_representation(const Module& a, const Module& b) {
  return same_algebra(a.algebra(), b.algebra()) && a.dims() == b.dims() && a.arrow_maps() == b.arrow_maps();
}

class ModuleHom {
 public:
  ModuleHom() = default;
  ModuleHom(Module source, Module target, std::vector<Mat> maps)
      : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
    if (!same_algebra(source_.algebra(), target_.algebra())) throw std::invalid_argument("hom between different algebras");
    if (maps_.size() != static_cast<std::size_t>(source_.vertex_count()))
      throw std::invalid_argument("hom has wrong number of vertex maps");
    for (int v = 0; v < source_.vertex_count(); ++v)
      if (maps_[static_cast<std::size_t>(v)].rows() != target_.dim(v) ||
          maps_[static_cast<std::size_t>(v)].cols() != source_.dim(v))
        throw std::invalid_argument("vertex map has wrong shape");
    for (std::size_t a = 0; a < source_.algebra()->arrow_count(); ++a) {
      const Arrow& ar = source_.algebra()->arrow(static_cast<int>(a));
      if (!(target_.arrow_map(static_cast<int>(a)) * at(ar.source) == at(ar.target) * source_.arrow_map(static_cast<int>(a))))
        throw std::invalid_argument("module hom does not commute with arrow " + ar.name);
    }
  }

  static ModuleHom identity(const Module& m) {
    std::vector<Mat> maps;
    for (int v = 0; v < m.vertex_count(); ++v) maps.push_back(Mat::identity(m.dim(v), m.field()));
    return ModuleHom(m, m, std::move(maps));
  }
  static ModuleHom zero(const Module& s, const Module& t) {
    std::vector<Mat> maps;
    for (int v = 0; v < s.vertex_count(); ++v) maps.emplace_back(t.dim(v), s.dim(v), s.field());
    return ModuleHom(s, t, std::move(maps));
  }

  const Module& source() const { return source_; }
  const Module& target() const { return target_; }
  const Mat& at(int v) const { return maps_[static_cast<std::size_t>(v)]; }
  const std::vector<Mat>& maps() const { return maps_; }

  bool is_zero() const {
    for (const Mat& m : maps_)
      if (!m.is_zero()) return false;
    return true;
  }
  bool is_mono() const {
    for (const Mat& m : maps_)
      if (rank(m) != m.cols()) return false;
    return true;
  }
  bool is_epi() const {
    for (const Mat& m : maps_)
      if (rank(m) != m.rows()) return false;
    return true;
  }
  bool is_iso() const { return is_mono() && is_epi(); }
  std::size_t rank_total() const {
    std::size_t r = 0;
    for (const Mat& m : maps_) r += rank(m);
    return r;
  }

  ModuleHom scaled(Scalar c) const {
    std::vector<Mat> maps;
    for (const Mat& m : maps_) maps.push_back(m.scaled(c));
    return ModuleHom(source_, target_, std::move(maps));
  }
  friend ModuleHom operator+(const ModuleHom& a, const ModuleHom& b) {
    std::vector<Mat> maps;
    for (std::size_t v = 0; v < a.maps_.size(); ++v) maps.push_back(a.maps_[v] + b.maps_[v]);
    return ModuleHom(a.source_, a.target_, std::move(maps));
  }
  friend ModuleHom operator-(const ModuleHom& a, const ModuleHom& b) {
    std::vector<Mat> maps;
    for (std::size_t v = 0; v < a.maps_.size(); ++v) maps.push_back(a.maps_[v] - b.maps_[v]);
    return ModuleHom(a.source_, a.target_, std::move(maps));
  }
  // Composition: (g * f) = g ∘ f.
  friend ModuleHom operator*(const ModuleHom& g, const ModuleHom& f) {
    std::vector<Mat> maps;
    for (std::size_t v = 0; v < f.maps_.size(); ++v) maps.push_back(g.maps_[v] * f.maps_[v]);
    return ModuleHom(f.source_, g.target_, std::move(maps));
  }
  friend bool operator==(const ModuleHom& a, const ModuleHom& b) { return a.maps_ == b.maps_; }

 private:
  Module source_;
  Module target_;
  std::vector<Mat> maps_;
};

// Hom_Λ(M,N) as the null space of the commuting-square system. Coordinates of a hom are
// its entries at the free positions of the canonical kernel basis.
class HomSpace {
 public:
  HomSpace(const Module& m, const Module& n) : source_(m), target_(n) {
    if (!same_algebra(m.algebra(), n.algebra())) throw std::invalid_argument("hom_basis: algebra mismatch");
    const Algebra& alg = *m.algebra();
    const int nv = alg.vertex_count();
    offsets_.assign(static_cast<std::size_t>(nv) + 1, 0);
    for (int v = 0; v < nv; ++v)
      offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + n.dim(v) * m.dim(v);
    const std::size_t unknowns = offsets_.back();
    std::size_t eqs = 0;
    for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
      const Arrow& ar = alg.arrow(static_cast<int>(a));
      eqs += n.dim(ar.target) * m.dim(ar.source);
    }
    Mat sys(eqs, unknowns, m.field());
    const Field& f = m.field();
    std::size_t row = 0;
    for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
      const Arrow& ar = alg.arrow(static_cast<int>(a));
      const Mat& na = n.arrow_map(static_cast<int>(a));
      const Mat& ma = m.arrow_map(static_cast<int>(a));
      const std::size_t v = static_cast<std::size_t>(ar.source), w = static_cast<std::size_t>(ar.target);
      // (N_a X_v - X_w M_a)[i][j] = 0
      for (std::size_t i = 0; i < n.dim(ar.target); ++i)
        for (std::size_t j = 0; j < m.dim(ar.source); ++j, ++row) {
          for (std::size_t k = 0; k < n.dim(ar.source); ++k)
            if (na(i, k)) sys.add_to(row, offsets_[v] + k * m.dim(ar.source) + j, na(i, k));
          for (std::size_t k = 0; k < m.dim(ar.target); ++k)
            if (ma(k, j)) sys.add_to(row, offsets_[w] + i * m.dim(ar.target) + k, f.neg(ma(k, j)));
        }
    }
    kernel_ = kernel_basis(sys);
    RrefResult r = rref(sys);
    std::vector<bool> pivot(unknowns, false);
    for (std::size_t c : r.pivots) pivot[c] = true;
    for (std::size_t c = 0; c < unknowns; ++c)
      if (!pivot[c]) free_.push_back(c);
    for (std::size_t k = 0; k < kernel_.cols(); ++k) basis_.push_back(unflatten(kernel_.column(k)));
  }

  const Module& source() const { return source_; }
  const Module& target() const { return target_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<ModuleHom>& basis() const { return basis_; }
  const Mat& basis_matrix() const { return kernel_; }
  std::size_t ambient_dim() const { return offsets_.back(); }

  Mat flatten(const ModuleHom& h) const {
    Mat col(offsets_.back(), 1, source_.field());
    for (int v = 0; v < source_.vertex_count(); ++v) {
      const Mat& x = h.at(v);
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
          col.set(offsets_[static_cast<std::size_t>(v)] + i * x.cols() + j, 0, x(i, j));
    }
    return col;
  }
  ModuleHom unflatten(const Mat& col) const {
    std::vector<Mat> maps;
    for (int v = 0; v < source_.vertex_count(); ++v) {
      Mat x(target_.dim(v), source_.dim(v), source_.field());
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) x.set(i, j, col(offsets_[static_cast<std::size_t>(v)] + i * x.cols() + j, 0));
      maps.push_back(std::move(x));
    }
    return ModuleHom(source_, target_, std::move(maps));
  }
  // Column vector of coordinates in the basis.
  Mat coordinates(const ModuleHom& h) const {
    Mat flat = flatten(h);
    Mat c(free_.size(), 1, source_.field());
    for (std::size_t k = 0; k < free_.size(); ++k) c.set(k, 0, flat(free_[k], 0));
    return c;
  }
  ModuleHom combination(const Mat& coords) const { return unflatten(kernel_ * coords); }
  ModuleHom combination(const std::vector<Scalar>& coords) const {
    return combination(Mat::column_vector(coords, source_.field()));
  }

 private:
  Module source_;
  Module target_;
  std::vector<std::size_t> offsets_;
  Mat kernel_;
  std::vector<std::size_t> free_;
  std::vector<ModuleHom> basis_;
};

inline std::vector<ModuleHom> hom_basis(const Module& m, const Module& n) { return HomSpace(m, n).basis(); }
inline std::size_t hom_dim(const Module& m, const Module& n) { return HomSpace(m, n).dim(); }

// Matrix of the linear map Hom(X, M) -> Hom(X, N), h |-> g ∘ h, in the spaces' bases.
inline Mat postcompose_matrix(const HomSpace& from, const HomSpace& to, const ModuleHom& g) {
  Mat out(to.dim(), from.dim(), g.source().field());
  for (std::size_t k = 0; k < from.dim(); ++k) out.set_block(0, k, to.coordinates(g * from.basis()[k]));
  return out;
}
// Matrix of Hom(N, Y) -> Hom(M, Y), h |-> h ∘ g for g: M -> N.
inline Mat precompose_matrix(const HomSpace& from, const HomSpace& to, const ModuleHom& g) {
  Mat out(to.dim(), from.dim(), g.source().field());
  for (std::size_t k = 0; k < from.dim(); ++k) out.set_block(0, k, to.coordinates(from.basis()[k] * g));
  return out;
}

struct SubmoduleData {
  Module module;
  ModuleHom inclusion;
};
struct QuotientData {
  Module module;
  ModuleHom projection;
};

// Submodule spanned at each vertex by the given independent columns (must be arrow-stable).
inline SubmoduleData submodule(const Module& m, const std::vector<Mat>& bases) {
  const Algebra& alg = *m.algebra();
  std::vector<std::size_t> dims;
  for (const Mat& b : bases) dims.push_back(b.cols());
  std::vector<Mat> arrows;
  for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
    const Arrow& ar = alg.arrow(static_cast<int>(a));
    const Mat& bs = bases[static_cast<std::size_t>(ar.source)];
    const Mat& bt = bases[static_cast<std::size_t>(ar.target)];
    auto x = solve(bt, m.arrow_map(static_cast<int>(a)) * bs);
    if (!x) throw std::logic_error("submodule: subspace is not stable under arrow " + ar.name);
    arrows.push_back(*x);
  }
  Module sub(m.algebra(), dims, arrows);
  ModuleHom incl(sub, m, bases);
  return {std::move(sub), std::move(incl)};
}

inline QuotientData quotient(const Module& m, const std::vector<Mat>& sub_bases) {
  const Algebra& alg = *m.algebra();
  std::vector<QuotientMap> qs;
  std::vector<std::size_t> dims;
  for (int v = 0; v < m.vertex_count(); ++v) {
    qs.push_back(quotient_map(sub_bases[static_cast<std::size_t>(v)], m.dim(v), m.field()));
    dims.push_back(qs.back().project.rows());
  }
  std::vector<Mat> arrows;
  for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
    const Arrow& ar = alg.arrow(static_cast<int>(a));
    arrows.push_back(qs[static_cast<std::size_t>(ar.target)].project * m.arrow_map(static_cast<int>(a)) *
                     qs[static_cast<std::size_t>(ar.source)].lift);
  }
  Module q(m.algebra(), dims, arrows);
  std::vector<Mat> proj;
  for (auto& x : qs) proj.push_back(x.project);
  ModuleHom pr(m, q, proj);
  return {std::move(q), std::move(pr)};
}

inline SubmoduleData kernel(const ModuleHom& h) {
  std::vector<Mat> bases;
  for (int v = 0; v < h.source().vertex_count(); ++v) bases.push_back(kernel_basis(h.at(v)));
  return submodule(h.source(), bases);
}

struct ImageData {
  Module module;
  ModuleHom inclusion;     // image -> target
  ModuleHom corestriction; // source -> image
};

inline ImageData image(const ModuleHom& h) {
  std::vector<Mat> bases;
  for (int v = 0; v < h.source().vertex_count(); ++v) bases.push_back(image_basis(h.at(v)));
  SubmoduleData s = submodule(h.target(), bases);
  std::vector<Mat> co;
  for (int v = 0; v < h.source().vertex_count(); ++v) co.push_back(*solve(bases[static_cast<std::size_t>(v)], h.at(v)));
  ModuleHom cor(h.source(), s.module, co);
  return {std::move(s.module), std::move(s.inclusion), std::move(cor)};
}

inline QuotientData cokernel(const ModuleHom& h) {
  std::vector<Mat> bases;
  for (int v = 0; v < h.source().vertex_count(); ++v) bases.push_back(image_basis(h.at(v)));
  return quotient(h.target(), bases);
}

struct DirectSum {
  Module module;
  std::vector<ModuleHom> inclusions;
  std::vector<ModuleHom> projections;
};

inline DirectSum direct_sum(const std::vector<Module>& parts, const AlgebraPtr& algebra) {
  const Algebra& alg = *algebra;
  const int nv = alg.vertex_count();
  std::vector<std::size_t> dims(static_cast<std::size_t>(nv), 0);
  for (const Module& p : parts)
    for (int v = 0; v < nv; ++v) dims[static_cast<std::size_t>(v)] += p.dim(v);
  std::vector<Mat> arrows;
  for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
    std::vector<Mat> blocks;
    for (const Module& p : parts) blocks.push_back(p.arrow_map(static_cast<int>(a)));
    arrows.push_back(block_diagonal(blocks, alg.field()));
  }
  Module sum(algebra, dims, arrows);
  DirectSum ds{sum, {}, {}};
  std::vector<std::size_t> off(static_cast<std::size_t>(nv), 0);
  for (const Module& p : parts) {
    std::vector<Mat> inc, pro;
    for (int v = 0; v < nv; ++v) {
      Mat i(sum.dim(v), p.dim(v), alg.field());
      Mat q(p.dim(v), sum.dim(v), alg.field());
      for (std::size_t k = 0; k < p.dim(v); ++k) {
        i.set(off[static_cast<std::size_t>(v)] + k, k, 1);
        q.set(k, off[static_cast<std::size_t>(v)] + k, 1);
      }
      off[static_cast<std::size_t>(v)] += p.dim(v);
      inc.push_back(std::move(i));
      pro.push_back(std::move(q));
    }
    ds.inclusions.emplace_back(p, sum, std::move(inc));
    ds.projections.emplace_back(sum, p, std::move(pro));
  }
  return ds;
}

inline Module direct_sum_module(const std::vector<Module>& parts, const AlgebraPtr& algebra) {
  return direct_sum(parts, algebra).module;
}

// Hom between direct sums given by a block matrix of homs: blocks[i][j] : sources[j] -> targets[i].
inline ModuleHom hom_from_blocks(const DirectSum& src, const DirectSum& tgt,
                                 const std::vector<std::vector<ModuleHom>>& blocks) {
  ModuleHom total = ModuleHom::zero(src.module, tgt.module);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks[i].size(); ++j)
      total = total + tgt.inclusions[i] * blocks[i][j] * src.projections[j];
  return total;
}

inline ModuleHom direct_sum_of_homs(const std::vector<ModuleHom>& homs, const AlgebraPtr& algebra) {
  std::vector<Module> s, t;
  for (const ModuleHom& h : homs) {
    s.push_back(h.source());
    t.push_back(h.target());
  }
  DirectSum ds = direct_sum(s, algebra), dt = direct_sum(t, algebra);
  std::vector<std::vector<ModuleHom>> blocks(homs.size());
  for (std::size_t i = 0; i < homs.size(); ++i) {
    for (std::size_t j = 0; j < homs.size(); ++j)
      blocks[i].push_back(i == j ? homs[i] : ModuleHom::zero(s[j], t[i]));
  }
  return hom_from_blocks(ds, dt, blocks);
}

// rad M: sum of images of arrows; soc M: joint kernel of arrows; top M = M / rad M.
inline std::vector<Mat> radical_bases(const Module& m) {
  const Algebra& alg = *m.algebra();
  std::vector<std::vector<Mat>> parts(static_cast<std::size_t>(m.vertex_count()));
  for (std::size_t a = 0; a < alg.arrow_count(); ++a)
    parts[static_cast<std::size_t>(alg.arrow(static_cast<int>(a)).target)].push_back(m.arrow_map(static_cast<int>(a)));
  std::vector<Mat> bases;
  for (int v = 0; v < m.vertex_count(); ++v)
    bases.push_back(image_basis(hstack(parts[static_cast<std::size_t>(v)], m.dim(v), m.field())));
  return bases;
}

inline SubmoduleData radical_module(const Module& m) { return submodule(m, radical_bases(m)); }

inline SubmoduleData socle(const Module& m) {
  const Algebra& alg = *m.algebra();
  std::vector<std::vector<Mat>> parts(static_cast<std::size_t>(m.vertex_count()));
  for (std::size_t a = 0; a < alg.arrow_count(); ++a)
    parts[static_cast<std::size_t>(alg.arrow(static_cast<int>(a)).source)].push_back(m.arrow_map(static_cast<int>(a)));
  std::vector<Mat> bases;
  for (int v = 0; v < m.vertex_count(); ++v)
    bases.push_back(kernel_basis(vstack(parts[static_cast<std::size_t>(v)], m.dim(v), m.field())));
  return submodule(m, bases);
}

inline QuotientData top(const Module& m) { return quotient(m, radical_bases(m)); }

// ---- standard modules -------------------------------------------------------------------

// P_v = Λe_v: (P_v)_w spanned by residue paths v -> w.
inline Module indecomposable_projective(const AlgebraPtr& algebra, int v) {
  const Algebra& alg = *algebra;
  if (v < 0 || v >= alg.vertex_count()) throw std::out_of_range("vertex out of range");
  std::vector<std::size_t> dims;
  for (int w = 0; w < alg.vertex_count(); ++w) dims.push_back(alg.paths_between(v, w).size());
  std::vector<Mat> arrows;
  for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
    const Arrow& ar = alg.arrow(static_cast<int>(a));
    const auto& from = alg.paths_between(v, ar.source);
    const auto& to = alg.paths_between(v, ar.target);
    Mat m(to.size(), from.size(), alg.field());
    for (std::size_t i = 0; i < from.size(); ++i) {
      Path p = alg.basis()[from[i]].arrows;
      p.push_back(static_cast<int>(a));
      std::vector<Scalar> nf = alg.normal_form(p);
      for (std::size_t k = 0; k < to.size(); ++k) m.set(k, i, nf[to[k]]);
    }
    arrows.push_back(std::move(m));
  }
  return Module(algebra, dims, arrows);
}

inline Module simple_module(const AlgebraPtr& algebra, int v) {
  if (v < 0 || v >= algebra->vertex_count()) throw std::out_of_range("vertex out of range");
  std::vector<std::size_t> dims(static_cast<std::size_t>(algebra->vertex_count()), 0);
  dims[static_cast<std::size_t>(v)] = 1;
  std::vector<Mat> arrows;
  for (std::size_t a = 0; a < algebra->arrow_count(); ++a) {
    const Arrow& ar = algebra->arrow(static_cast<int>(a));
    arrows.emplace_back(dims[static_cast<std::size_t>(ar.target)], dims[static_cast<std::size_t>(ar.source)],
                        algebra->field());
  }
  return Module(algebra, dims, arrows);
}

// D: vector-space duality onto the opposite algebra (transpose, reattach to reversed arrows).
inline Module dual_module(const Module& m) {
  AlgebraPtr op = opposite_algebra(m.algebra());
  std::vector<Mat> arrows;
  for (const Mat& a : m.arrow_maps()) arrows.push_back(a.transpose());
  return Module(op, m.dims(), arrows);
}

inline ModuleHom dual_hom(const ModuleHom& h) {
  std::vector<Mat> maps;
  for (const Mat& x : h.maps()) maps.push_back(x.transpose());
  return ModuleHom(dual_module(h.target()), dual_module(h.source()), maps);
}

// I_v = D(e_v Λ) = D(P_v over the opposite algebra).
inline Module indecomposable_injective(const AlgebraPtr& algebra, int v) {
  return dual_module(indecomposable_projective(opposite_algebra(algebra), v));
}

// Hom P_v -> N determined by the image x ∈ N_v of e_v.
inline ModuleHom projective_hom_from_element(const Module& pv, int v, const Module& n, const Mat& x) {
  const Algebra& alg = *pv.algebra();
  std::vector<Mat> maps;
  for (int w = 0; w < alg.vertex_count(); ++w) {
    const auto& paths = alg.paths_between(v, w);
    Mat m(n.dim(w), paths.size(), alg.field());
    for (std::size_t i = 0; i < paths.size(); ++i)
      m.set_block(0, i, n.path_action(alg.basis()[paths[i]].arrows, v) * x);
    maps.push_back(std::move(m));
  }
  return ModuleHom(pv, n, std::move(maps));
}

// A direct sum of indecomposable projectives with its summand types recorded.
struct ProjectiveSum {
  std::vector<int> vertices;
  std::vector<Module> summands;
  DirectSum sum;
  const Module& module() const { return sum.module; }
};

inline ProjectiveSum projective_sum(const AlgebraPtr& algebra, const std::vector<int>& vertices) {
  std::vector<Module> parts;
  for (int v : vertices) parts.push_back(indecomposable_projective(algebra, v));
  DirectSum ds = direct_sum(parts, algebra);
  return {vertices, parts, std::move(ds)};
}

struct ProjectiveCover {
  ProjectiveSum cover;
  ModuleHom epi;
  const Module& module() const { return cover.module(); }
};

inline ProjectiveCover projective_cover(const Module& m) {
  const AlgebraPtr& algebra = m.algebra();
  std::vector<Mat> rad = radical_bases(m);
  std::vector<int> vertices;
  std::vector<Mat> generators;
  for (int v = 0; v < m.vertex_count(); ++v) {
    QuotientMap q = quotient_map(rad[static_cast<std::size_t>(v)], m.dim(v), m.field());
    for (std::size_t k = 0; k < q.lift.cols(); ++k) {
      vertices.push_back(v);
      generators.push_back(q.lift.column(k));
    }
  }
  ProjectiveSum ps = projective_sum(algebra, vertices);
  ModuleHom epi = ModuleHom::zero(ps.module(), m);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    epi = epi + projective_hom_from_element(ps.summands[i], vertices[i], m, generators[i]) * ps.sum.projections[i];
  return {std::move(ps), std::move(epi)};
}

// M ↪ I(M) as the dual of the projective cover of DM; D∘D returns to the original algebra.
inline ModuleHom injective_envelope(const Module& m) {
  ModuleHom dual = dual_hom(projective_cover(dual_module(m)).epi);
  return ModuleHom(m, dual.target(), dual.maps());
}

struct ProjectivePresentation {
  ProjectiveSum p1;
  ProjectiveSum p0;
  ModuleHom d;  // p1 -> p0
  ModuleHom e;  // p0 -> M
};

inline ProjectivePresentation minimal_projective_presentation(const Module& m) {
  ProjectiveCover c0 = projective_cover(m);
  SubmoduleData k = kernel(c0.epi);
  ProjectiveCover c1 = projective_cover(k.module);
  return {c1.cover, c0.cover, k.inclusion * c1.epi, c0.epi};
}

// Minimal projective resolution, terms P_0, P_1, ... with d[i]: P_{i+1} -> P_i.
struct ProjectiveResolution {
  std::vector<ProjectiveSum> terms;
  std::vector<ModuleHom> differentials;
  ModuleHom augmentation;
  bool complete = false;  // true when the last kernel was zero
};

inline ProjectiveResolution minimal_projective_resolution(const Module& m, std::size_t max_terms) {
  ProjectiveResolution r;
  ProjectiveCover c = projective_cover(m);
  r.terms.push_back(c.cover);
  r.augmentation = c.epi;
  ModuleHom prev = c.epi;
  while (r.terms.size() < max_terms) {
    SubmoduleData k = kernel(prev);
    if (k.module.is_zero()) {
      r.complete = true;
      return r;
    }
    ProjectiveCover ck = projective_cover(k.module);
    ModuleHom d = k.inclusion * ck.epi;
    r.terms.push_back(ck.cover);
    r.differentials.push_back(d);
    prev = d;
  }
  r.complete = kernel(prev).module.is_zero();
  return r;
}

inline std::size_t projective_dimension(const Module& m, std::size_t bound = 16) {
  if (m.is_zero()) return 0;
  ProjectiveResolution r = minimal_projective_resolution(m, bound + 1);
  if (!r.complete) throw std::runtime_error("projective dimension exceeds bound");
  return r.terms.size() - 1;
}

// dim Ext^k(M, N) from the minimal projective resolution of M.
inline std::size_t ext_dim(const Module& m, const Module& n, std::size_t k) {
  if (m.is_zero()) return 0;
  ProjectiveResolution r = minimal_projective_resolution(m, k + 2);
  if (k >= r.terms.size()) return 0;
  HomSpace hk(r.terms[k].module(), n);
  std::size_t kernel_dim = hk.dim();
  if (k + 1 < r.terms.size()) {
    HomSpace hk1(r.terms[k + 1].module(), n);
    kernel_dim = hk.dim() - rank(precompose_matrix(hk, hk1, r.differentials[k]));
  }
  std::size_t image_dim = 0;
  if (k >= 1) {
    HomSpace hprev(r.terms[k - 1].module(), n);
    image_dim = rank(precompose_matrix(hprev, hk, r.differentials[k - 1]));
  }
  return kernel_dim - image_dim;
}

// ---- transpose and the Auslander-Reiten translate -----------------------------------------

// Element of (P^op_v)_u corresponding to coefficients over the Λ-basis paths u -> v.
inline Mat opposite_path_element(const Algebra& alg, const Algebra& op, int u, int v, const Mat& coeffs) {
  const auto& op_paths = op.paths_between(v, u);
  Mat x(op_paths.size(), 1, alg.field());
  const auto& paths = alg.paths_between(u, v);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    Scalar c = coeffs(i, 0);
    if (c == 0) continue;
    Path rev = alg.basis()[paths[i]].arrows;
    std::reverse(rev.begin(), rev.end());
    if (rev.empty()) {
      std::size_t t = op.trivial_path(u);
      for (std::size_t k = 0; k < op_paths.size(); ++k)
        if (op_paths[k] == t) x.add_to(k, 0, c);
      continue;
    }
    std::vector<Scalar> nf = op.normal_form(rev);
    for (std::size_t k = 0; k < op_paths.size(); ++k) x.add_to(k, 0, alg.field().mul(c, nf[op_paths[k]]));
  }
  return x;
}

// Component of a hom between projective sums, evaluated at the generator of summand `src` and
// projected to summand `dst`: the coefficients over paths into the generator's vertex.
inline Mat projective_component(const ProjectiveSum& from, std::size_t src, const ProjectiveSum& to, std::size_t dst,
                                const ModuleHom& h) {
  const Algebra& alg = *from.module().algebra();
  int v = from.vertices[src];
  Mat gen_in = from.sum.inclusions[src].at(v) *
               Mat::identity(from.summands[src].dim(v), alg.field()).column(alg.basis_position(alg.trivial_path(v)));
  Mat image = to.sum.projections[dst].at(v) * (h.at(v) * gen_in);
  return image;
}

// (−)* = Hom(−, Λ) on a map between projective sums: P0* -> P1* over the opposite algebra.
inline ModuleHom star_of_projective_map(const ProjectiveSum& p1, const ProjectiveSum& p0, const ModuleHom& d,
                                        ProjectiveSum& p1_star, ProjectiveSum& p0_star) {
  const AlgebraPtr& algebra = p1.module().algebra();
  AlgebraPtr op = opposite_algebra(algebra);
  p1_star = projective_sum(op, p1.vertices);
  p0_star = projective_sum(op, p0.vertices);
  ModuleHom total = ModuleHom::zero(p0_star.module(), p1_star.module());
  for (std::size_t i = 0; i < p1.vertices.size(); ++i)
    for (std::size_t j = 0; j < p0.vertices.size(); ++j) {
      Mat coeffs = projective_component(p1, i, p0, j, d);
      if (coeffs.is_zero()) continue;
      Mat x = opposite_path_element(*algebra, *op, p0.vertices[j], p1.vertices[i], coeffs);
      ModuleHom comp = projective_hom_from_element(p0_star.summands[j], p0.vertices[j], p1_star.summands[i], x);
      total = total + p1_star.sum.inclusions[i] * comp * p0_star.sum.projections[j];
    }
  return total;
}

struct TransposeData {
  ProjectivePresentation presentation;
  ProjectiveSum p1_star;
  ProjectiveSum p0_star;
  ModuleHom d_star;          // P0* -> P1*
  Module transpose;          // Coker d_star over the opposite algebra
  ModuleHom projection;      // P1* -> Tr M
};

// Tr M = Coker(P0* -> P1*) from the minimal presentation; projective summands of M contribute nothing.
inline TransposeData transpose_data(const Module& m) {
  TransposeData t{minimal_projective_presentation(m), {}, {}, {}, {}, {}};
  t.d_star = star_of_projective_map(t.presentation.p1, t.presentation.p0, t.presentation.d, t.p1_star, t.p0_star);
  QuotientData q = cokernel(t.d_star);
  t.transpose = q.module;
  t.projection = q.projection;
  return t;
}

inline Module transpose(const Module& m) { return transpose_data(m).transpose; }

// Projective iff the projective cover is an isomorphism.
inline bool is_projective(const Module& m) { return projective_cover(m).module().total_dim() == m.total_dim(); }
inline bool is_injective(const Module& m) { return is_projective(dual_module(m)); }

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Module tau(const Module& m) {
  if (m.is_zero()) return m;
  if (is_projective(m)) throw PreconditionError("tau: module is projective");
  Module t = dual_module(transpose(m));
  return t;
}

inline Module tau_inverse(const Module& m) {
  if (m.is_zero()) return m;
  if (is_injective(m)) throw PreconditionError("tau_inverse: module is injective");
  return transpose(dual_module(m));
}

}  // namespace mapscat
