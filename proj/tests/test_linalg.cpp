#include <gtest/gtest.h>

#include <random>

#include <mapscat/linalg.hpp>

using namespace mapscat;

namespace {

Mat random_matrix(std::size_t r, std::size_t c, Field f, std::mt19937_64& rng) {
  Mat m(r, c, f);
  std::uniform_int_distribution<Scalar> d(0, f.p() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
  return m;
}

// Oracle: every vector of F_p^n, enumerated.
std::vector<Mat> all_vectors(std::size_t n, Field f) {
  std::vector<Mat> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.p();
  for (std::size_t code = 0; code < total; ++code) {
    Mat v(n, 1, f);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= f.p()) v.set(i, 0, static_cast<Scalar>(c % f.p()));
    out.push_back(v);
  }
  return out;
}

std::size_t log_p(std::size_t count, Scalar p) {
  std::size_t k = 0;
  while (count > 1) {
    EXPECT_EQ(count % p, 0u);
    count /= p;
    ++k;
  }
  return k;
}

}  // namespace

TEST(Field, RejectsCompositeModulus) {
  EXPECT_THROW(Field(4), std::invalid_argument);
  EXPECT_THROW(Field(1), std::invalid_argument);
  EXPECT_NO_THROW(Field(2));
}

TEST(Field, InverseIsMultiplicativeInverseForEveryUnit) {
  Field f(101);
  for (Scalar a = 1; a < 101; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_THROW(f.inv(0), std::domain_error);
}

TEST(Field, ReduceHandlesNegatives) {
  Field f(101);
  EXPECT_EQ(f.reduce(-1), 100u);
  EXPECT_EQ(f.reduce(-202), 0u);
  EXPECT_EQ(f.signed_value(100), -1);
}

TEST(Mat, ProductShapeMismatchThrows) {
  Field f(5);
  EXPECT_THROW(Mat(2, 3, f) * Mat(2, 3, f), std::invalid_argument);
}

TEST(Mat, RankMatchesEnumeratedKernelOverF3) {
  Field f(3);
  std::mt19937_64 rng(7);
  std::vector<Mat> vecs = all_vectors(4, f);
  for (int trial = 0; trial < 40; ++trial) {
    Mat a = random_matrix(3, 4, f, rng);
    std::size_t zeros = 0;
    for (const Mat& v : vecs)
      if ((a * v).is_zero()) ++zeros;
    std::size_t kernel_dim = log_p(zeros, f.p());
    EXPECT_EQ(rank(a), 4 - kernel_dim);
    Mat k = kernel_basis(a);
    EXPECT_EQ(k.cols(), kernel_dim);
    EXPECT_TRUE((a * k).is_zero());
    EXPECT_EQ(rank(k), k.cols());
  }
}

TEST(Mat, SolveAgreesWithEnumerationOverF3) {
  Field f(3);
  std::mt19937_64 rng(11);
  std::vector<Mat> xs = all_vectors(3, f);
  for (int trial = 0; trial < 40; ++trial) {
    Mat a = random_matrix(3, 3, f, rng);
    a.set(2, 0, a(0, 0));
    a.set(2, 1, a(0, 1));
    a.set(2, 2, a(0, 2));
    Mat b = random_matrix(3, 1, f, rng);
    bool exists = false;
    for (const Mat& x : xs) exists = exists || a * x == b;
    std::optional<Mat> x = solve(a, b);
    EXPECT_EQ(x.has_value(), exists);
    if (x) {
      EXPECT_EQ(a * *x, b);
    }
  }
}

TEST(Mat, InvertibleTwoByTwoCountOverF5) {
  // |GL_2(F_5)| = (25 - 1)(25 - 5)
  Field f(5);
  std::size_t invertible = 0;
  for (Scalar a = 0; a < 5; ++a)
    for (Scalar b = 0; b < 5; ++b)
      for (Scalar c = 0; c < 5; ++c)
        for (Scalar d = 0; d < 5; ++d) {
          Mat m = Mat::from_rows({{a, b}, {c, d}}, f);
          bool det_nonzero = f.sub(f.mul(a, d), f.mul(b, c)) != 0;
          std::optional<Mat> inv = inverse(m);
          EXPECT_EQ(inv.has_value(), det_nonzero);
          if (inv) {
            ++invertible;
            EXPECT_EQ(m * *inv, Mat::identity(2, f));
          }
        }
  EXPECT_EQ(invertible, 480u);
}

TEST(Mat, RankOfSmallIntegerMatrices) {
  Field f(101);
  EXPECT_EQ(rank(Mat::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, f)), 2u);
  EXPECT_EQ(rank(Mat::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}, f)), 3u);
  // determinant 101 vanishes mod 101
  EXPECT_EQ(rank(Mat::from_rows({{1, 0}, {0, 101}}, f)), 1u);
}

TEST(Mat, QuotientMapKillsSubspaceAndSplits) {
  Field f(7);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Mat sub = random_matrix(5, 2, f, rng);
    QuotientMap q = quotient_map(sub, 5, f);
    EXPECT_EQ(q.project.rows(), 5 - rank(sub));
    EXPECT_TRUE((q.project * sub).is_zero());
    EXPECT_EQ(q.project * q.lift, Mat::identity(q.project.rows(), f));
  }
}

TEST(Mat, IntersectionDimensionFormula) {
  Field f(5);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Mat u = random_matrix(4, 2, f, rng), w = random_matrix(4, 3, f, rng);
    Mat i = intersect_subspaces(image_basis(u), image_basis(w));
    std::size_t expected = rank(u) + rank(w) - rank(hstack({u, w}, 4, f));
    EXPECT_EQ(i.cols(), expected);
    EXPECT_TRUE(in_column_space(u, i));
    EXPECT_TRUE(in_column_space(w, i));
  }
}

TEST(Mat, PullbackSatisfiesSquare) {
  Field f(5);
  std::mt19937_64 rng(9);
  Mat a = random_matrix(3, 2, f, rng), b = random_matrix(3, 2, f, rng);
  Pullback p = pullback(a, b);
  EXPECT_EQ(a * p.proj_a, b * p.proj_b);
  EXPECT_EQ(p.basis.cols(), 4 - rank(hstack({a, b}, 3, f)));
}

TEST(Mat, StackingAndBlocks) {
  Field f(11);
  Mat a = Mat::from_rows({{1, 2}}, f), b = Mat::from_rows({{3, 4}}, f);
  Mat v = vstack({a, b}, 2, f);
  EXPECT_EQ(v.block(1, 0, 1, 2), b);
  Mat d = block_diagonal({a, b}, f);
  EXPECT_EQ(d.rows(), 2u);
  EXPECT_EQ(d.cols(), 4u);
  EXPECT_EQ(d(1, 2), 3u);
  EXPECT_EQ(d(0, 2), 0u);
  EXPECT_THROW(a.block(0, 1, 1, 2), std::out_of_range);
}
