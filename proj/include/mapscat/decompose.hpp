#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "module.hpp"

namespace mapscat {

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structure of End(M): basis, and rad End(M) as coordinate columns.
struct EndRadical {
  HomSpace end;
  Mat radical;  // columns: coordinates of a basis of rad End(M)
  std::size_t dim_end() const { return end.dim(); }
  std::size_t dim_radical() const { return radical.cols(); }
  std::size_t dim_top() const { return end.dim() - radical.cols(); }
};

inline ModuleHom power(const ModuleHom& h, std::size_t e) {
  ModuleHom result = ModuleHom::identity(h.source());
  ModuleHom base = h;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

inline bool is_nilpotent(const ModuleHom& h) { return power(h, h.source().total_dim()).is_zero(); }

// Trace-form radical {a : Tr(L_{ab}) = 0 for all b}. It always contains rad End(M) and is an
// ideal; it equals the radical once it is nil, which is verified before returning.
inline EndRadical end_radical(const Module& m) {
  HomSpace end(m, m);
  const std::size_t d = end.dim();
  const Field& f = m.field();
  if (d == 0) return {end, Mat(0, 0, f)};
  // structure constants: coords(e_i e_j)
  std::vector<std::vector<Mat>> prod(d, std::vector<Mat>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prod[i][j] = end.coordinates(end.basis()[i] * end.basis()[j]);
  std::vector<Scalar> trace(d, 0);  // Tr(L_{e_k})
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) trace[k] = f.add(trace[k], prod[k][j](j, 0));
  Mat gram(d, d, f);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Scalar s = 0;
      for (std::size_t k = 0; k < d; ++k) s = f.add(s, f.mul(prod[i][j](k, 0), trace[k]));
      gram.set(i, j, s);
    }
  Mat rad = kernel_basis(gram.transpose());
  for (std::size_t c = 0; c < rad.cols(); ++c)
    if (!is_nilpotent(end.combination(rad.column(c))))
      throw DecompositionError("trace-form radical is not nil (characteristic too small for this endomorphism ring)");
  return {std::move(end), std::move(rad)};
}

// Local End(M) with End/rad = F_p: the deterministic indecomposability certificate.
inline bool has_split_local_endomorphism_ring(const Module& m) {
  if (m.is_zero()) return false;
  return end_radical(m).dim_top() == 1;
}

struct Summand {
  Module module;
  ModuleHom inclusion;   // summand -> M
  ModuleHom projection;  // M -> summand
};

struct Decomposition {
  std::vector<Summand> parts;                 // indecomposable summands, in discovery order
  std::vector<std::vector<std::size_t>> classes;  // indices of parts grouped by isomorphism class
  std::size_t multiplicity(std::size_t cls) const { return classes[cls].size(); }
  const Module& representative(std::size_t cls) const { return parts[classes[cls].front()].module; }
};

// Isomorphism test for indecomposable modules. Hom(M,N) ≅ End(M) when M ≅ N, and a basis of the
// local ring End(M) cannot lie inside its radical, so some basis hom is an isomorphism.
inline std::optional<ModuleHom> isomorphism_between_indecomposables(const Module& m, const Module& n) {
  if (m.dims() != n.dims()) return std::nullopt;
  if (m.is_zero()) return ModuleHom::zero(m, n);
  for (const ModuleHom& f : hom_basis(m, n))
    if (f.is_iso()) return f;
  return std::nullopt;
}

namespace detail {

inline std::vector<Scalar> eigenvalues(const ModuleHom& h) {
  const Field& f = h.source().field();
  std::vector<Scalar> roots;
  for (Scalar lambda = 0; lambda < f.p(); ++lambda) {
    for (int v = 0; v < h.source().vertex_count(); ++v) {
      const Mat& x = h.at(v);
      if (x.rows() == 0) continue;
      Mat shifted = x - Mat::identity(x.rows(), f).scaled(lambda);
      if (rank(shifted) < x.rows()) {
        roots.push_back(lambda);
        break;
      }
    }
  }
  return roots;
}

// Splits M = A ⊕ B along complementary submodules given by inclusions.
inline std::pair<Summand, Summand> split_along(const Module& m, const SubmoduleData& a, const SubmoduleData& b) {
  std::vector<Mat> pa, pb;
  for (int v = 0; v < m.vertex_count(); ++v) {
    Mat joined = hstack({a.inclusion.at(v), b.inclusion.at(v)}, m.dim(v), m.field());
    Mat inv = *inverse(joined);
    pa.push_back(inv.block(0, 0, a.module.dim(v), m.dim(v)));
    pb.push_back(inv.block(a.module.dim(v), 0, b.module.dim(v), m.dim(v)));
  }
  return {Summand{a.module, a.inclusion, ModuleHom(m, a.module, pa)},
          Summand{b.module, b.inclusion, ModuleHom(m, b.module, pb)}};
}

inline void decompose_into(const Module& m, std::mt19937_64& rng, int budget, std::vector<Summand>& out,
                           const ModuleHom& incl, const ModuleHom& proj) {
  if (m.is_zero()) return;
  EndRadical er = end_radical(m);
  if (er.dim_top() == 1) {
    out.push_back({m, incl, proj});
    return;
  }
  std::uniform_int_distribution<Scalar> coef(0, m.field().p() - 1);
  const std::size_t n = m.total_dim();
  for (int trial = 0; trial < budget; ++trial) {
    std::vector<Scalar> c(er.end.dim());
    for (Scalar& x : c) x = coef(rng);
    ModuleHom phi = er.end.combination(c);
    for (Scalar lambda : eigenvalues(phi)) {
      ModuleHom shifted = phi - ModuleHom::identity(m).scaled(lambda);
      ModuleHom fitting = power(shifted, n);
      SubmoduleData k = kernel(fitting);
      if (k.module.is_zero() || k.module.total_dim() == n) continue;
      ImageData im = image(fitting);
      auto [a, b] = split_along(m, k, {im.module, im.inclusion});
      decompose_into(a.module, rng, budget, out, incl * a.inclusion, a.projection * proj);
      decompose_into(b.module, rng, budget, out, incl * b.inclusion, b.projection * proj);
      return;
    }
  }
  throw DecompositionError("decompose: no splitting endomorphism found within the retry budget (dims " +
                           m.dim_vector() + ")");
}

}  // namespace detail

inline Decomposition decompose(const Module& m, std::uint64_t seed = 0, int budget = 64) {
  std::mt19937_64 rng(seed);
  Decomposition d;
  detail::decompose_into(m, rng, budget, d.parts, ModuleHom::identity(m), ModuleHom::identity(m));
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    bool placed = false;
    for (auto& cls : d.classes)
      if (isomorphism_between_indecomposables(d.parts[cls.front()].module, d.parts[i].module)) {
        cls.push_back(i);
        placed = true;
        break;
      }
    if (!placed) d.classes.push_back({i});
  }
  return d;
}

inline std::vector<Module> indecomposable_summands(const Module& m, std::uint64_t seed = 0) {
  std::vector<Module> out;
  for (const Summand& s : decompose(m, seed).parts) out.push_back(s.module);
  return out;
}

inline bool is_indecomposable(const Module& m) {
  if (m.is_zero()) return false;
  if (has_split_local_endomorphism_ring(m)) return true;
  return decompose(m).parts.size() == 1;
}

// Isomorphism of arbitrary modules via Krull-Schmidt multiplicities.
inline bool is_isomorphic(const Module& m, const Module& n, std::uint64_t seed = 0) {
  if (m.dims() != n.dims()) return false;
  if (m.is_zero()) return true;
  if (hom_dim(m, m) != hom_dim(n, n) || hom_dim(m, n) != hom_dim(n, m)) return false;
  Decomposition dm = decompose(m, seed), dn = decompose(n, seed);
  if (dm.classes.size() != dn.classes.size()) return false;
  std::vector<bool> used(dn.classes.size(), false);
  for (std::size_t i = 0; i < dm.classes.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < dn.classes.size(); ++j) {
      if (used[j] || dm.multiplicity(i) != dn.multiplicity(j)) continue;
      if (isomorphism_between_indecomposables(dm.representative(i), dn.representative(j))) {
        used[j] = found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// Index of the entry of `list` isomorphic to the indecomposable m, if any.
inline std::optional<std::size_t> find_isomorphic(const std::vector<Module>& list, const Module& m) {
  for (std::size_t i = 0; i < list.size(); ++i)
    if (isomorphism_between_indecomposables(list[i], m)) return i;
  return std::nullopt;
}

}  // namespace mapscat
