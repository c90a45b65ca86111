#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "linalg.hpp"

namespace mapscat {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

struct Quiver {
  int vertex_count = 0;
  std::vector<Arrow> arrows;

  int arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return static_cast<int>(i);
    return -1;
  }
  friend bool operator==(const Quiver&, const Quiver&) = default;
};

// Arrow indices in traversal order: path[0] is applied first.
using Path = std::vector<int>;

struct Term {
  Scalar coef = 1;
  Path path;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Relation {
  std::vector<Term> terms;
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct BasisPath {
  int source = 0;
  int target = 0;
  Path arrows;
};

class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Λ = KQ/I for an admissible ideal I generated by parallel relations of length >= 2.
// The residue basis consists of paths; longer and lexicographically larger paths are
// eliminated first, so the basis prefers short paths.
class Algebra {
 public:
  static constexpr int kDefaultMaxPathLength = 30;
  static constexpr std::size_t kMaxEnumeratedPaths = 200000;

  static AlgebraPtr create(Field field, Quiver quiver, std::vector<Relation> relations,
                           int max_path_length = kDefaultMaxPathLength) {
    return std::shared_ptr<const Algebra>(new Algebra(field, std::move(quiver), std::move(relations), max_path_length));
  }

  const Field& field() const { return field_; }
  const Quiver& quiver() const { return quiver_; }
  const std::vector<Relation>& relations() const { return relations_; }
  int vertex_count() const { return quiver_.vertex_count; }
  std::size_t arrow_count() const { return quiver_.arrows.size(); }
  const Arrow& arrow(int a) const { return quiver_.arrows.at(static_cast<std::size_t>(a)); }
  int max_path_length() const { return max_path_length_; }
  // Loewy-type bound: every path of this length lies in the ideal.
  int nilpotency() const { return nilpotency_; }

  std::size_t dimension() const { return basis_.size(); }
  const std::vector<BasisPath>& basis() const { return basis_; }
  // Basis indices of residue paths from v to w, ascending.
  const std::vector<std::size_t>& paths_between(int v, int w) const {
    return between_[static_cast<std::size_t>(v * vertex_count() + w)];
  }
  std::size_t basis_position(std::size_t basis_index) const { return position_[basis_index]; }

  // Coordinates of the residue class of `path` in the path basis.
  std::vector<Scalar> normal_form(const Path& path) const {
    std::vector<Scalar> out(basis_.size(), 0);
    if (path.empty()) throw std::invalid_argument("normal_form: use trivial_path for idempotents");
    if (static_cast<int>(path.size()) >= nilpotency_) return out;
    auto it = column_of_.find(path);
    if (it == column_of_.end()) return out;  // not composable
    std::size_t col = it->second;
    if (col_basis_[col] >= 0) {
      out[static_cast<std::size_t>(col_basis_[col])] = 1;
      return out;
    }
    const std::vector<std::pair<std::size_t, Scalar>>& expr = pivot_expr_[col];
    for (auto [b, c] : expr) out[b] = c;
    return out;
  }
  std::size_t trivial_path(int v) const { return trivial_[static_cast<std::size_t>(v)]; }

  bool composable(const Path& p) const {
    for (std::size_t i = 1; i < p.size(); ++i)
      if (arrow(p[i - 1]).target != arrow(p[i]).source) return false;
    return true;
  }

  friend bool structurally_equal(const Algebra& a, const Algebra& b) {
    return a.field_ == b.field_ && a.quiver_ == b.quiver_ && a.relations_ == b.relations_;
  }

  // Lazily built opposite algebra; the opposite keeps a weak back-reference so that
  // opposite(opposite(A)) is A itself without an ownership cycle.
  friend AlgebraPtr opposite_algebra(const AlgebraPtr& a);

  std::string path_name(const Path& p) const {
    if (p.empty()) return "e";
    std::string s;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      if (!s.empty()) s += ".";
      s += arrow(*it).name;
    }
    return s;
  }

 private:
  Algebra(Field field, Quiver quiver, std::vector<Relation> relations, int max_path_length)
      : field_(field), quiver_(std::move(quiver)), relations_(std::move(relations)), max_path_length_(max_path_length) {
    validate();
    compute_basis();
  }

  void validate() {
    std::set<std::string> names;
    for (const Arrow& a : quiver_.arrows) {
      if (a.source < 0 || a.source >= quiver_.vertex_count || a.target < 0 || a.target >= quiver_.vertex_count)
        throw std::invalid_argument("arrow " + a.name + " has an endpoint out of range");
      if (!names.insert(a.name).second) throw std::invalid_argument("duplicate arrow name " + a.name);
    }
    for (Relation& r : relations_) {
      if (r.terms.empty()) throw std::invalid_argument("empty relation");
      int s = -1, t = -1;
      for (Term& term : r.terms) {
        term.coef %= field_.p();
        if (term.path.size() < 2) throw AdmissibilityError("relation term of length < 2 is not admissible");
        for (int a : term.path)
          if (a < 0 || static_cast<std::size_t>(a) >= quiver_.arrows.size())
            throw std::invalid_argument("relation uses unknown arrow");
        if (!composable(term.path)) throw std::invalid_argument("relation term is not a path");
        int ts = arrow(term.path.front()).source, tt = arrow(term.path.back()).target;
        if (s < 0) {
          s = ts;
          t = tt;
        } else if (s != ts || t != tt) {
          throw std::invalid_argument("relation terms are not parallel");
        }
      }
    }
  }

  std::vector<Path> paths_of_length(int len) const {
    std::vector<Path> out;
    if (len == 0) return out;
    std::vector<Path> cur;
    for (std::size_t a = 0; a < quiver_.arrows.size(); ++a) cur.push_back({static_cast<int>(a)});
    for (int l = 1; l < len; ++l) {
      std::vector<Path> next;
      for (const Path& p : cur)
        for (std::size_t a = 0; a < quiver_.arrows.size(); ++a)
          if (quiver_.arrows[a].source == arrow(p.back()).target) {
            Path q = p;
            q.push_back(static_cast<int>(a));
            next.push_back(std::move(q));
            if (next.size() > kMaxEnumeratedPaths) throw AdmissibilityError("path enumeration exceeded the path budget");
          }
      cur = std::move(next);
    }
    return cur;
  }

  void compute_basis() {
    const int n = quiver_.vertex_count;
    std::vector<std::vector<Path>> by_length{{}};
    int bound = 1;
    std::vector<Path> columns;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> ideal_rows;
    for (;; ++bound) {
      if (bound > max_path_length_)
        throw AdmissibilityError("relations do not generate an admissible ideal: paths of length " +
                                 std::to_string(max_path_length_) + " survive");
      by_length.push_back(paths_of_length(bound));
      if (by_length.back().empty()) break;
      // Columns ordered longest first, then lexicographically descending.
      columns.clear();
      column_of_.clear();
      for (int l = bound; l >= 1; --l) {
        std::vector<Path> ps = by_length[static_cast<std::size_t>(l)];
        std::sort(ps.rbegin(), ps.rend());
        for (Path& p : ps) columns.push_back(std::move(p));
      }
      for (std::size_t c = 0; c < columns.size(); ++c) column_of_[columns[c]] = c;
      ideal_rows = ideal_elements(bound);
      Mat m(ideal_rows.size(), columns.size(), field_);
      for (std::size_t r = 0; r < ideal_rows.size(); ++r)
        for (auto [c, v] : ideal_rows[r]) m.add_to(r, c, v);
      std::size_t top = by_length[static_cast<std::size_t>(bound)].size();
      Mat units(top, columns.size(), field_);
      for (std::size_t i = 0; i < top; ++i) units.set(i, i, 1);
      if (rank(m) == rank(vstack({m, units}, columns.size(), field_))) {
        finalize(columns, top, m);
        nilpotency_ = bound;
        break;
      }
    }
    if (by_length.back().empty()) {
      // Acyclic quiver: every path has length < bound.
      Mat m(ideal_rows.size(), columns.size(), field_);
      for (std::size_t r = 0; r < ideal_rows.size(); ++r)
        for (auto [c, v] : ideal_rows[r]) m.add_to(r, c, v);
      finalize(columns, 0, m);
      nilpotency_ = bound;
    }
    (void)n;
    index_basis();
  }

  // Images of q·rho·p truncated to paths of length <= bound.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> ideal_elements(int bound) const {
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
    std::vector<std::vector<Path>> into(static_cast<std::size_t>(quiver_.vertex_count));
    std::vector<std::vector<Path>> out_of(static_cast<std::size_t>(quiver_.vertex_count));
    for (int v = 0; v < quiver_.vertex_count; ++v) {
      into[static_cast<std::size_t>(v)].push_back({});
      out_of[static_cast<std::size_t>(v)].push_back({});
    }
    for (const auto& [p, c] : column_of_) {
      into[static_cast<std::size_t>(arrow(p.back()).target)].push_back(p);
      out_of[static_cast<std::size_t>(arrow(p.front()).source)].push_back(p);
    }
    for (const Relation& r : relations_) {
      int s = arrow(r.terms.front().path.front()).source;
      int t = arrow(r.terms.front().path.back()).target;
      std::size_t minlen = r.terms.front().path.size();
      for (const Term& term : r.terms) minlen = std::min(minlen, term.path.size());
      for (const Path& pre : into[static_cast<std::size_t>(s)])
        for (const Path& post : out_of[static_cast<std::size_t>(t)]) {
          if (pre.size() + post.size() + minlen > static_cast<std::size_t>(bound)) continue;
          std::map<std::size_t, Scalar> row;
          for (const Term& term : r.terms) {
            Path full = pre;
            full.insert(full.end(), term.path.begin(), term.path.end());
            full.insert(full.end(), post.begin(), post.end());
            if (full.size() > static_cast<std::size_t>(bound)) continue;
            std::size_t c = column_of_.at(full);
            row[c] = field_.add(row[c], term.coef);
          }
          std::vector<std::pair<std::size_t, Scalar>> sparse;
          for (auto [c, v] : row)
            if (v != 0) sparse.emplace_back(c, v);
          if (!sparse.empty()) rows.push_back(std::move(sparse));
        }
    }
    return rows;
  }

  // Columns [0, top) are the paths of maximal length, all of which lie in the ideal.
  void finalize(const std::vector<Path>& columns, std::size_t top, Mat m) {
    Mat units(top, columns.size(), field_);
    for (std::size_t i = 0; i < top; ++i) units.set(i, i, 1);
    Mat all = vstack({units, m}, columns.size(), field_);
    RrefResult rr = rref(all);
    std::vector<bool> pivot(columns.size(), false);
    for (std::size_t c : rr.pivots) pivot[c] = true;
    // Basis: trivial paths, then non-pivot paths; sorted by (source, target, length, lex).
    std::vector<std::tuple<int, int, std::size_t, Path, int>> entries;  // last: column or -1-v
    for (int v = 0; v < quiver_.vertex_count; ++v) entries.emplace_back(v, v, 0, Path{}, -1 - v);
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (!pivot[c])
        entries.emplace_back(arrow(columns[c].front()).source, arrow(columns[c].back()).target, columns[c].size(),
                             columns[c], static_cast<int>(c));
    std::sort(entries.begin(), entries.end());
    basis_.clear();
    trivial_.assign(static_cast<std::size_t>(quiver_.vertex_count), 0);
    col_basis_.assign(columns.size(), -1);
    for (auto& [s, t, len, path, tag] : entries) {
      std::size_t idx = basis_.size();
      basis_.push_back({s, t, path});
      if (tag < 0)
        trivial_[static_cast<std::size_t>(-1 - tag)] = idx;
      else
        col_basis_[static_cast<std::size_t>(tag)] = static_cast<long>(idx);
    }
    pivot_expr_.assign(columns.size(), {});
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
      std::size_t pc = rr.pivots[i];
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (pivot[c] || rr.reduced(i, c) == 0) continue;
        pivot_expr_[pc].emplace_back(static_cast<std::size_t>(col_basis_[c]), field_.neg(rr.reduced(i, c)));
      }
    }
  }

  void index_basis() {
    const int n = quiver_.vertex_count;
    between_.assign(static_cast<std::size_t>(n * n), {});
    position_.assign(basis_.size(), 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      auto& bucket = between_[static_cast<std::size_t>(basis_[i].source * n + basis_[i].target)];
      position_[i] = bucket.size();
      bucket.push_back(i);
    }
  }

  mutable AlgebraPtr opposite_;
  mutable std::weak_ptr<const Algebra> opposite_back_;
  Field field_;
  Quiver quiver_;
  std::vector<Relation> relations_;
  int max_path_length_;
  int nilpotency_ = 1;
  std::vector<BasisPath> basis_;
  std::vector<std::size_t> trivial_;
  std::map<Path, std::size_t> column_of_;
  std::vector<long> col_basis_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> pivot_expr_;
  std::vector<std::vector<std::size_t>> between_;
  std::vector<std::size_t> position_;
};

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && structurally_equal(*a, *b));
}

inline AlgebraPtr opposite(const Algebra& a) {
  Quiver q = a.quiver();
  for (Arrow& ar : q.arrows) std::swap(ar.source, ar.target);
  std::vector<Relation> rels = a.relations();
  for (Relation& r : rels)
    for (Term& t : r.terms) std::reverse(t.path.begin(), t.path.end());
  return Algebra::create(a.field(), std::move(q), std::move(rels), a.max_path_length());
}

inline AlgebraPtr opposite_algebra(const AlgebraPtr& a) {
  if (a->opposite_) return a->opposite_;
  if (auto back = a->opposite_back_.lock()) return back;
  AlgebraPtr op = opposite(*a);
  op->opposite_back_ = a;
  a->opposite_ = op;
  return op;
}

// Γ = [[Λ,0],[Λ,Λ]] presented by Q ⊔ Q' plus connecting arrows c_v: v -> v'.
// Vertex v is the first copy, v + n the second copy.
struct TriangularAlgebra {
  AlgebraPtr lambda;
  AlgebraPtr gamma;
  int n = 0;
  std::size_t lambda_arrows = 0;

  int first_copy_arrow(std::size_t a) const { return static_cast<int>(a); }
  int second_copy_arrow(std::size_t a) const { return static_cast<int>(lambda_arrows + a); }
  int connector(int v) const { return static_cast<int>(2 * lambda_arrows) + v; }
};

inline TriangularAlgebra triangular_matrix_algebra(const AlgebraPtr& lambda) {
  const Quiver& q = lambda->quiver();
  const int n = q.vertex_count;
  const std::size_t m = q.arrows.size();
  Quiver g;
  g.vertex_count = 2 * n;
  std::set<std::string> names;
  for (const Arrow& a : q.arrows) names.insert(a.name);
  auto fresh = [&names](std::string base) {
    while (names.count(base)) base += "'";
    names.insert(base);
    return base;
  };
  for (const Arrow& a : q.arrows) g.arrows.push_back(a);
  for (const Arrow& a : q.arrows) g.arrows.push_back({fresh(a.name + "'"), a.source + n, a.target + n});
  for (int v = 0; v < n; ++v) g.arrows.push_back({fresh("c" + std::to_string(v + 1)), v, v + n});
  std::vector<Relation> rels;
  for (const Relation& r : lambda->relations()) rels.push_back(r);
  for (Relation r : lambda->relations()) {
    for (Term& t : r.terms)
      for (int& a : t.path) a += static_cast<int>(m);
    rels.push_back(std::move(r));
  }
  const Field& f = lambda->field();
  for (std::size_t a = 0; a < m; ++a) {
    int v = q.arrows[a].source, w = q.arrows[a].target;
    Relation comm;
    comm.terms.push_back({1, {static_cast<int>(a), static_cast<int>(2 * m) + w}});
    comm.terms.push_back({f.neg(1), {static_cast<int>(2 * m) + v, static_cast<int>(m + a)}});
    rels.push_back(std::move(comm));
  }
  TriangularAlgebra t;
  t.lambda = lambda;
  t.gamma = Algebra::create(f, std::move(g), std::move(rels), lambda->max_path_length());
  t.n = n;
  t.lambda_arrows = m;
  return t;
}

}  // namespace mapscat
