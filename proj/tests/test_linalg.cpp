#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dglie/linalg.hpp"

using namespace dglie;

namespace {

SparseVector vec(std::initializer_list<std::pair<std::size_t, int>> entries) {
  SparseVector v;
  for (auto [i, x] : entries)
    if (x != 0) v[i] = x;
  return v;
}

SparseMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int density) {
  std::uniform_int_distribution<int> val(-3, 3), hit(0, 99);
  SparseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (hit(rng) < density) m.set(i, j, val(rng));
  return m;
}

}  // namespace

TEST(Reduce, ZeroMatrix) {
  auto r = reduce(SparseMatrix(3, 3));
  EXPECT_EQ(r.rank, 0u);
  EXPECT_EQ(r.kernel.dim(), 3u);
  EXPECT_EQ(r.image.dim(), 0u);
}

TEST(Reduce, Identity) {
  auto r = reduce(SparseMatrix::identity(4));
  EXPECT_EQ(r.rank, 4u);
  EXPECT_EQ(r.kernel.dim(), 0u);
}

TEST(Reduce, RankOneKernel) {
  // [[1,2],[2,4]]: hand elimination gives kernel spanned by (-2, 1).
  auto r = reduce(SparseMatrix::from_rows({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.rank, 1u);
  ASSERT_EQ(r.kernel.dim(), 1u);
  EXPECT_TRUE(r.kernel.contains(vec({{0, -2}, {1, 1}})));
  // canonical form: pivot at index 0 normalised to 1
  EXPECT_EQ(r.kernel.basis()[0], (SparseVector{{0, 1}, {1, Scalar(-1, 2)}}));
}

TEST(SolveAffine, IdentityReturnsRhs) {
  SparseVector b = vec({{0, 3}, {2, -1}});
  auto s = solve_affine(SparseMatrix::identity(3), b);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, b);
  EXPECT_EQ(s->kernel.dim(), 0u);
}

TEST(SolveAffine, ZeroSystem) {
  auto s = solve_affine(SparseMatrix(2, 3), {});
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->particular.empty());
  EXPECT_EQ(s->kernel.dim(), 3u);
}

TEST(SolveAffine, OneEquationTwoUnknowns) {
  // x + y = 1; enumeration over small integers finds (1,0) and direction (1,-1).
  auto s = solve_affine(SparseMatrix::from_rows({{1, 1}}), vec({{0, 1}}));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, vec({{0, 1}}));
  ASSERT_EQ(s->kernel.dim(), 1u);
  EXPECT_TRUE(s->kernel.contains(vec({{0, 1}, {1, -1}})));
}

TEST(SolveAffine, Inconsistent) {
  auto s = solve_affine(SparseMatrix::from_rows({{1, 1}, {2, 2}}), vec({{0, 1}, {1, 3}}));
  EXPECT_FALSE(s);
}

TEST(SolveAffine, DimensionMismatch) {
  EXPECT_THROW(solve_affine(SparseMatrix(2, 2), vec({{5, 1}})), InputError);
}

TEST(QuotientDims, Cases) {
  auto w = Subspace::whole(3);
  EXPECT_EQ(quotient_dims(w, w).dim, 0u);
  EXPECT_EQ(quotient_dims(w, Subspace(3)).dim, 3u);
  auto plane = Subspace::whole(2);
  auto diag = Subspace::span(2, {vec({{0, 1}, {1, 1}})});
  auto q = quotient_dims(plane, diag);
  EXPECT_EQ(q.dim, 1u);
  EXPECT_FALSE(diag.contains(q.representatives[0]));
}

TEST(QuotientDims, ContainmentError) {
  auto a = Subspace::span(2, {vec({{0, 1}})});
  auto b = Subspace::span(2, {vec({{1, 1}})});
  EXPECT_THROW(quotient_dims(a, b), InputError);
}

TEST(HomologyAt, Cases) {
  EXPECT_EQ(homology_at(SparseMatrix(2, 0), SparseMatrix(0, 2)).dim, 2u);
  // Q --(1,0)^t--> Q^2 --(0,1)--> Q: kernel of (0,1) is the x-axis = image.
  auto din = SparseMatrix::from_rows({{1}, {0}});
  auto dout = SparseMatrix::from_rows({{0, 1}});
  EXPECT_EQ(homology_at(din, dout).dim, 0u);
  // d_in surjective onto ker d_out
  EXPECT_EQ(homology_at(SparseMatrix::identity(2), SparseMatrix(0, 2)).dim, 0u);
}

TEST(HomologyAt, NotAComplex) {
  auto din = SparseMatrix::from_rows({{1}, {1}});
  auto dout = SparseMatrix::from_rows({{0, 1}});
  EXPECT_THROW(homology_at(din, dout), ValidationError);
}

TEST(Properties, RankNullityAndAffineCriterion) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
    auto m = random_matrix(rng, r, c, 40);
    auto red = reduce(m);
    EXPECT_EQ(red.rank + red.kernel.dim(), c);
    for (const auto& k : red.kernel.basis()) EXPECT_TRUE(m.apply(k).empty());

    // solve_affine is absent exactly when rank([A|b]) > rank(A)
    SparseVector b;
    for (std::size_t i = 0; i < r; ++i)
      if (rng() % 2) b[i] = static_cast<int>(rng() % 5) - 2;
    SparseMatrix aug(r, c + 1);
    for (std::size_t j = 0; j < c; ++j) aug.set_column(j, m.column(j));
    aug.set_column(c, b);
    auto s = solve_affine(m, b);
    EXPECT_EQ(!s.has_value(), rank(aug) > red.rank);
  }
}

TEST(Properties, CanonicalFormIndependentOfOrder) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SparseVector> vs;
    for (int k = 0; k < 5; ++k) {
      SparseVector v;
      for (std::size_t i = 0; i < 6; ++i)
        if (rng() % 3 == 0) v[i] = static_cast<int>(rng() % 7) - 3;
      vs.push_back(v);
    }
    auto a = Subspace::span(6, vs);
    std::shuffle(vs.begin(), vs.end(), rng);
    EXPECT_EQ(a, Subspace::span(6, vs));
  }
}

TEST(Properties, EulerCharacteristic) {
  // Random three-term complexes built as d_out * d_in = 0 by construction.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t c2 = 1 + rng() % 4, c1 = 2 + rng() % 4, c0 = 1 + rng() % 4;
    auto din = random_matrix(rng, c1, c2, 50);
    // d_out annihilates the image of d_in: rows of d_out from left kernel.
    auto left_kernel = reduce(din.transpose()).kernel;
    SparseMatrix dout(c0, c1);
    for (std::size_t i = 0; i < c0 && i < left_kernel.dim(); ++i)
      for (const auto& [j, x] : left_kernel.basis()[i]) dout.set(i, j, x);
    auto h2 = homology_at(SparseMatrix(c2, 0), din);
    auto h1 = homology_at(din, dout);
    auto h0 = homology_at(dout, SparseMatrix(0, c0));
    long chi_c = static_cast<long>(c2) - static_cast<long>(c1) + static_cast<long>(c0);
    long chi_h = static_cast<long>(h2.dim) - static_cast<long>(h1.dim) + static_cast<long>(h0.dim);
    EXPECT_EQ(chi_c, chi_h);
  }
}
