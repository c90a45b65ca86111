#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mapscat {

using Scalar = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime field F_p. All scalars handed out are reduced into [0, p).
class Field {
 public:
  explicit Field(Scalar p = 101) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
  }
  Scalar p() const { return p_; }
  Scalar reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  Scalar add(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + b) % p_); }
  Scalar sub(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + p_ - b) % p_); }
  Scalar mul(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} * b) % p_); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar inv(Scalar a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    Scalar result = 1, base = a;
    for (Scalar e = p_ - 2; e != 0; e >>= 1) {
      if (e & 1u) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }
  // Symmetric representative in (-p/2, p/2], for display only.
  std::int64_t signed_value(Scalar a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }
  friend bool operator==(const Field&, const Field&) = default;

 private:
  Scalar p_;
};

// Dense row-major matrix over F_p.
class Mat {
 public:
  Mat() : Mat(0, 0, Field{}) {}
  Mat(std::size_t rows, std::size_t cols, Field field)
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

  static Mat zero(std::size_t rows, std::size_t cols, Field field) { return Mat(rows, cols, field); }
  static Mat identity(std::size_t n, Field field) {
    Mat m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
  }
  static Mat from_rows(const std::vector<std::vector<std::int64_t>>& rows, Field field, std::size_t cols_if_empty = 0) {
    std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
    Mat m(rows.size(), c, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix literal");
      for (std::size_t j = 0; j < c; ++j) m.data_[i * c + j] = field.reduce(rows[i][j]);
    }
    return m;
  }
  static Mat column_vector(const std::vector<Scalar>& v, Field field) {
    Mat m(v.size(), 1, field);
    for (std::size_t i = 0; i < v.size(); ++i) m.data_[i] = v[i] % field.p();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  Scalar p() const { return field_.p(); }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Scalar v) { data_[i * cols_ + j] = v % field_.p(); }
  void add_to(std::size_t i, std::size_t j, Scalar v) {
    data_[i * cols_ + j] = field_.add(data_[i * cols_ + j], v % field_.p());
  }
  const std::vector<Scalar>& data() const { return data_; }

  bool is_zero() const {
    for (Scalar v : data_)
      if (v != 0) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
    return t;
  }
  Mat scaled(Scalar c) const {
    Mat r = *this;
    for (Scalar& v : r.data_) v = field_.mul(v, c % field_.p());
    return r;
  }
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
    Mat b(nr, nc, field_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
    return b;
  }
  Mat column(std::size_t j) const { return block(0, j, rows_, 1); }
  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("matrix block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b.data_[i * b.cols_ + j];
  }
  Mat select_columns(const std::vector<std::size_t>& cols) const {
    Mat r(rows_, cols.size(), field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols.size(); ++k) r.data_[i * cols.size() + k] = data_[i * cols_ + cols[k]];
    return r;
  }
  Mat select_rows(const std::vector<std::size_t>& rows) const {
    Mat r(rows.size(), cols_, field_);
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) r.data_[k * cols_ + j] = data_[rows[k] * cols_ + j];
    return r;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    check_same_shape(a, b);
    Mat r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    check_same_shape(a, b);
    Mat r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
    return r;
  }
  friend Mat operator-(const Mat& a) { return Mat::zero(a.rows_, a.cols_, a.field_) - a; }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_ || a.field_ != b.field_)
      throw std::invalid_argument("matrix product dimension mismatch: " + a.shape() + " * " + b.shape());
    Mat r(a.rows_, b.cols_, a.field_);
    const std::uint64_t p = a.field_.p();
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        std::uint64_t aik = a.data_[i * a.cols_ + k];
        if (aik == 0) continue;
        const Scalar* brow = &b.data_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + aik * brow[j]) % p;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) r.data_[i * b.cols_ + j] = static_cast<Scalar>(acc[j]);
    }
    return r;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  static void check_same_shape(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_)
      throw std::invalid_argument("matrix shape mismatch: " + a.shape() + " vs " + b.shape());
  }

  std::size_t rows_;
  std::size_t cols_;
  Field field_;
  std::vector<Scalar> data_;
};

inline Mat hstack(const std::vector<Mat>& parts, std::size_t rows, Field field) {
  std::size_t cols = 0;
  for (const Mat& m : parts) {
    if (m.rows() != rows) throw std::invalid_argument("hstack row mismatch");
    cols += m.cols();
  }
  Mat r(rows, cols, field);
  std::size_t c = 0;
  for (const Mat& m : parts) {
    r.set_block(0, c, m);
    c += m.cols();
  }
  return r;
}

inline Mat vstack(const std::vector<Mat>& parts, std::size_t cols, Field field) {
  std::size_t rows = 0;
  for (const Mat& m : parts) {
    if (m.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rows += m.rows();
  }
  Mat r(rows, cols, field);
  std::size_t off = 0;
  for (const Mat& m : parts) {
    r.set_block(off, 0, m);
    off += m.rows();
  }
  return r;
}

inline Mat block_diagonal(const std::vector<Mat>& parts, Field field) {
  std::size_t rows = 0, cols = 0;
  for (const Mat& m : parts) {
    rows += m.rows();
    cols += m.cols();
  }
  Mat r(rows, cols, field);
  std::size_t ro = 0, co = 0;
  for (const Mat& m : parts) {
    r.set_block(ro, co, m);
    ro += m.rows();
    co += m.cols();
  }
  return r;
}

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

inline RrefResult rref(const Mat& m) {
  Mat a = m;
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pr = row;
    while (pr < a.rows() && a(pr, col) == 0) ++pr;
    if (pr == a.rows()) continue;
    if (pr != row)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        Scalar t = a(row, j);
        a.set(row, j, a(pr, j));
        a.set(pr, j, t);
      }
    Scalar iv = f.inv(a(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a.set(row, j, f.mul(a(row, j), iv));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      Scalar c = a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a.set(r, j, f.sub(a(r, j), f.mul(c, a(row, j))));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), pivots, pivots.size()};
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

// Columns form the canonical null-space basis: one column per free column index in ascending
// order, with a 1 in that free position and 0 in every other free position.
inline Mat kernel_basis(const Mat& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat k(m.cols(), free_cols.size(), m.field());
  for (std::size_t idx = 0; idx < free_cols.size(); ++idx) {
    std::size_t fc = free_cols[idx];
    k.set(fc, idx, 1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) k.set(r.pivots[i], idx, m.field().neg(r.reduced(i, fc)));
  }
  return k;
}

// Some x with a*x = b, or nullopt when b is outside the column space of a.
inline std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch " + a.shape() + " vs " + b.shape());
  Mat aug = hstack({a, b}, a.rows(), a.field());
  RrefResult r = rref(aug);
  for (std::size_t c : r.pivots)
    if (c >= a.cols()) return std::nullopt;
  Mat x(a.cols(), b.cols(), a.field());
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(r.pivots[i], j, r.reduced(i, a.cols() + j));
  return x;
}

// Basis (as columns) of the column space, chosen among the columns of m.
inline Mat image_basis(const Mat& m) { return m.select_columns(rref(m).pivots); }

inline std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve(m, Mat::identity(m.rows(), m.field()));
  if (!x) return std::nullopt;
  if (!(m * *x == Mat::identity(m.rows(), m.field()))) return std::nullopt;
  return x;
}

inline bool in_column_space(const Mat& basis, const Mat& vectors) {
  if (vectors.cols() == 0) return true;
  return rank(hstack({basis, vectors}, basis.rows(), basis.field())) == rank(basis);
}

// Basis of U ∩ W for column-basis matrices in the same ambient space.
inline Mat intersect_subspaces(const Mat& u, const Mat& w) {
  Mat k = kernel_basis(hstack({u, -w}, u.rows(), u.field()));
  return image_basis(u * k.block(0, 0, u.cols(), k.cols()));
}

// Linear surjection q with kernel exactly the column space of `sub` (ambient dimension n).
// Rows of q are coordinates against a complement made of standard basis vectors.
struct QuotientMap {
  Mat project;                            // (n - dim sub) x n
  Mat lift;                               // n x (n - dim sub), project * lift = 1
  std::vector<std::size_t> complement;   // standard basis indices spanning the complement
};

inline QuotientMap quotient_map(const Mat& sub, std::size_t n, Field field) {
  Mat s = image_basis(sub.cols() == 0 ? Mat(n, 0, field) : sub);
  Mat aug = hstack({s, Mat::identity(n, field)}, n, field);
  RrefResult r = rref(aug);
  std::vector<std::size_t> comp;
  for (std::size_t c : r.pivots)
    if (c >= s.cols()) comp.push_back(c - s.cols());
  Mat basis = hstack({s, Mat::identity(n, field).select_columns(comp)}, n, field);
  Mat inv = *inverse(basis);
  Mat project = inv.block(s.cols(), 0, comp.size(), n);
  Mat lift = Mat::identity(n, field).select_columns(comp);
  return {std::move(project), std::move(lift), std::move(comp)};
}

struct Pullback {
  Mat basis;   // columns (a; b) spanning {(a,b) : f a = g b}
  Mat proj_a;  // dim A x dim P
  Mat proj_b;  // dim B x dim P
};

inline Pullback pullback(const Mat& f, const Mat& g) {
  if (f.rows() != g.rows()) throw std::invalid_argument("pullback: codomain mismatch");
  Mat k = kernel_basis(hstack({f, -g}, f.rows(), f.field()));
  Mat pa = k.block(0, 0, f.cols(), k.cols());
  Mat pb = k.block(f.cols(), 0, g.cols(), k.cols());
  return {std::move(k), std::move(pa), std::move(pb)};
}

}  // namespace mapscat
