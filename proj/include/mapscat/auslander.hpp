#pragma once

#include <map>
#include <string>
#include <vector>

#include "ar.hpp"
#include "decompose.hpp"
#include "maps.hpp"
#include "module.hpp"

namespace mapscat {

// An irreducible map X_from -> X_to between corpus indecomposables.
struct IrreducibleMap {
  std::size_t from = 0;
  std::size_t to = 0;
  ModuleHom map;
};

// rad(X, Y) inside Hom(X, Y) for indecomposables, as coordinate columns.
inline Mat radical_coordinates(const HomSpace& hs, bool same_object) {
  if (!same_object) return Mat::identity(hs.dim(), hs.source().field());
  return end_radical(hs.source()).radical;
}

// Irreducible maps between corpus indecomposables: a basis of rad/rad² for each ordered pair.
// The corpus must hold pairwise non-isomorphic indecomposables.
inline std::vector<IrreducibleMap> irreducible_maps(const std::vector<Module>& corpus) {
  const std::size_t n = corpus.size();
  if (n == 0) return {};
  const Field& f = corpus.front().field();
  std::vector<std::vector<HomSpace>> hom;
  std::vector<std::vector<std::vector<ModuleHom>>> rad(n, std::vector<std::vector<ModuleHom>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    hom.emplace_back();
    for (std::size_t j = 0; j < n; ++j) {
      hom[i].emplace_back(corpus[i], corpus[j]);
      Mat r = radical_coordinates(hom[i][j], i == j);
      for (std::size_t c = 0; c < r.cols(); ++c) rad[i][j].push_back(hom[i][j].combination(r.column(c)));
    }
  }
  std::vector<IrreducibleMap> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const HomSpace& hs = hom[i][j];
      std::vector<Mat> squares;
      for (std::size_t k = 0; k < n; ++k)
        for (const ModuleHom& a : rad[i][k])
          for (const ModuleHom& b : rad[k][j]) squares.push_back(hs.coordinates(b * a));
      Mat span = image_basis(hstack(squares, hs.dim(), f));
      for (const ModuleHom& r : rad[i][j]) {
        Mat c = hs.coordinates(r);
        if (in_column_space(span, c)) continue;
        span = hstack({span, c}, hs.dim(), f);
        out.push_back({i, j, r});
      }
    }
  return out;
}

// mod(mod Λ) realized as modules over the Auslander algebra A of a representation-finite Λ:
// vertex i stands for the corpus module X_i, an irreducible X_i -> X_j gives an arrow j -> i, and
// a functor F is the representation with F(X_i) at vertex i.
class AuslanderRealization {
 public:
  AuslanderRealization(AlgebraPtr lambda, std::vector<Module> corpus) : lambda_(std::move(lambda)), corpus_(std::move(corpus)) {
    irreducibles_ = irreducible_maps(corpus_);
    build_algebra();
  }

  const AlgebraPtr& lambda() const { return lambda_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Module>& corpus() const { return corpus_; }
  const std::vector<IrreducibleMap>& irreducibles() const { return irreducibles_; }

  // Φ(x): the cokernel of Hom(−, M1) -> Hom(−, M2) as an A-module.
  Module functor_module(const MapObject& x) const { return evaluation(x).module; }

  // Φ(h) for a morphism of maps.
  ModuleHom functor_hom(const MapMorphism& h) const {
    Evaluation s = evaluation(h.source()), t = evaluation(h.target());
    std::vector<Mat> maps;
    for (std::size_t i = 0; i < corpus_.size(); ++i) {
      HomSpace from(corpus_[i], h.source().m2), to(corpus_[i], h.target().m2);
      maps.push_back(t.quotients[i].project * postcompose_matrix(from, to, h.h2()) * s.quotients[i].lift);
    }
    return ModuleHom(s.module, t.module, maps);
  }

  Module representable(const Module& m) const { return functor_module(zero_source_object(m)); }

  ShortExactSeq functor_sequence(const MapShortExactSeq& s) const {
    return {functor_module(s.left), functor_module(s.middle), functor_module(s.right), functor_hom(s.inj),
            functor_hom(s.surj)};
  }

 private:
  struct Evaluation {
    Module module;
    std::vector<QuotientMap> quotients;  // Hom(X_i, M2) -> F(X_i)
  };

  Evaluation evaluation(const MapObject& x) const {
    const Field& f = lambda_->field();
    const std::size_t n = corpus_.size();
    std::vector<HomSpace> h2;
    std::vector<QuotientMap> qs;
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < n; ++i) {
      HomSpace h1(corpus_[i], x.m1);
      h2.emplace_back(corpus_[i], x.m2);
      Mat img = image_basis(postcompose_matrix(h1, h2[i], x.f));
      qs.push_back(quotient_map(img, h2[i].dim(), f));
      dims.push_back(qs.back().project.rows());
    }
    std::vector<Mat> arrows;
    for (const IrreducibleMap& irr : irreducibles_) {
      // arrow irr.to -> irr.from acts by precomposition with X_from -> X_to
      Mat pre = precompose_matrix(h2[irr.to], h2[irr.from], irr.map);
      arrows.push_back(qs[irr.from].project * pre * qs[irr.to].lift);
    }
    return {Module(algebra_, dims, arrows), std::move(qs)};
  }

  // Composite X_t -> X_s of the irreducibles along an A-path s -> ... -> t.
  ModuleHom evaluate_path(const Path& p) const {
    ModuleHom acc = irreducibles_[static_cast<std::size_t>(p.front())].map;
    for (std::size_t k = 1; k < p.size(); ++k) acc = acc * irreducibles_[static_cast<std::size_t>(p[k])].map;
    return acc;
  }

  void build_algebra() {
    const std::size_t n = corpus_.size();
    const Field& f = lambda_->field();
    Quiver q;
    q.vertex_count = static_cast<int>(n);
    std::map<std::pair<std::size_t, std::size_t>, int> seen;
    for (const IrreducibleMap& irr : irreducibles_) {
      int k = seen[{irr.to, irr.from}]++;
      std::string name = "x" + std::to_string(irr.to + 1) + "_" + std::to_string(irr.from + 1);
      if (k) name += "_" + std::to_string(k + 1);
      q.arrows.push_back({name, static_cast<int>(irr.to), static_cast<int>(irr.from)});
    }
    // Paths grouped by endpoints; the ideal is the kernel of evaluation, closed once every path of
    // the current length evaluates to zero.
    std::vector<Relation> relations;
    std::vector<Path> layer;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) layer.push_back({static_cast<int>(a)});
    std::map<std::pair<int, int>, std::vector<Path>> by_ends;
    for (std::size_t len = 2;; ++len) {
      std::vector<Path> next;
      for (const Path& p : layer)
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
          if (q.arrows[a].source == q.arrows[static_cast<std::size_t>(p.back())].target) {
            Path e = p;
            e.push_back(static_cast<int>(a));
            next.push_back(std::move(e));
          }
      if (next.empty()) break;
      bool all_zero = true;
      for (const Path& p : next) {
        by_ends[{q.arrows[static_cast<std::size_t>(p.front())].source, q.arrows[static_cast<std::size_t>(p.back())].target}].push_back(p);
        if (!evaluate_path(p).is_zero()) all_zero = false;
      }
      layer = std::move(next);
      if (all_zero) break;
      if (len > static_cast<std::size_t>(Algebra::kDefaultMaxPathLength))
        throw AdmissibilityError("Auslander algebra: radical of the corpus is not nilpotent within bound");
    }
    for (const auto& [ends, paths] : by_ends) {
      HomSpace hs(corpus_[static_cast<std::size_t>(ends.second)], corpus_[static_cast<std::size_t>(ends.first)]);
      std::vector<Mat> cols;
      for (const Path& p : paths) cols.push_back(hs.coordinates(evaluate_path(p)));
      Mat ker = kernel_basis(hstack(cols, hs.dim(), f));
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        Relation r;
        for (std::size_t k = 0; k < paths.size(); ++k)
          if (ker(k, c)) r.terms.push_back({ker(k, c), paths[k]});
        relations.push_back(std::move(r));
      }
    }
    algebra_ = Algebra::create(f, q, relations);
    std::size_t expected = 0;
    for (const Module& x : corpus_)
      for (const Module& y : corpus_) expected += hom_dim(x, y);
    if (algebra_->dimension() != expected)
      throw std::logic_error("Auslander algebra dimension " + std::to_string(algebra_->dimension()) +
                             " differs from the total Hom dimension " + std::to_string(expected));
  }

  AlgebraPtr lambda_;
  std::vector<Module> corpus_;
  std::vector<IrreducibleMap> irreducibles_;
  AlgebraPtr algebra_;
};

}  // namespace mapscat
