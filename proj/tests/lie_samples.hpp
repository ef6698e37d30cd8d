#pragma once

// Random finite graded Lie algebras g ⋉ M: g a Lie algebra of k x k upper
// triangular matrices in degree 0, M = Q^k in a chosen degree with the
// standard action, everything written in a random rational basis.

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "dglie/lie_table.hpp"

namespace samples {

using dglie::Echelon;
using dglie::FiniteLieData;
using dglie::Scalar;
using dglie::SparseVector;

using Matrix = std::vector<std::vector<Scalar>>;

inline Matrix zero(std::size_t k) { return Matrix(k, std::vector<Scalar>(k, 0)); }

inline Matrix mul(const Matrix& a, const Matrix& b) {
  const std::size_t k = a.size();
  Matrix c = zero(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < k; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) {
  Matrix x = mul(a, b), y = mul(b, a);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) x[i][j] -= y[i][j];
  return x;
}

inline SparseVector flatten(const Matrix& m) {
  SparseVector v;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != 0) v.emplace(i * m.size() + j, m[i][j]);
  return v;
}

struct Sample {
  FiniteLieData table;
  bool nilpotent_algebra = false;  // strictly upper triangular g
};

/// Coordinates of v in the basis `basis` (vectors in the same ambient space).
inline SparseVector coords(const std::vector<SparseVector>& basis, const SparseVector& v) {
  Echelon ech;
  for (std::size_t i = 0; i < basis.size(); ++i) ech.insert(basis[i], i);
  auto red = ech.reduce(v);
  dglie::check_invariant(red.residual.empty(), "vector outside the sampled algebra");
  return red.combination;
}

inline Scalar small(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  return Scalar(d(rng));
}

inline Sample random_sample(std::mt19937& rng, std::size_t max_total = 8) {
  std::uniform_int_distribution<int> kd(1, 3);
  const std::size_t k = static_cast<std::size_t>(kd(rng));
  const bool strict = std::bernoulli_distribution(0.5)(rng);
  // random set of matrix units, closed under commutators
  std::set<std::pair<std::size_t, std::size_t>> units;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = strict ? i + 1 : i; j < k; ++j)
      if (std::bernoulli_distribution(0.6)(rng)) units.insert({i, j});
  for (bool grew = true; grew;) {
    grew = false;
    for (auto [i, j] : std::vector(units.begin(), units.end()))
      for (auto [a, b] : std::vector(units.begin(), units.end()))
        if (j == a && i != b && units.insert({i, b}).second) grew = true;
  }
  std::vector<Matrix> gbasis;
  for (auto [i, j] : units) {
    Matrix m = zero(k);
    m[i][j] = 1;
    gbasis.push_back(m);
  }
  // random change of basis inside g (triangular, so it stays invertible)
  std::vector<Matrix> g;
  for (std::size_t a = 0; a < gbasis.size(); ++a) {
    Matrix m = gbasis[a];
    for (std::size_t b = a + 1; b < gbasis.size(); ++b) {
      Scalar c = small(rng);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] += c * gbasis[b][i][j];
    }
    g.push_back(m);
  }
  const std::size_t gdim = g.size();
  const bool with_module = gdim + k <= max_total && std::bernoulli_distribution(0.8)(rng);
  const int mdeg = std::uniform_int_distribution<int>(1, 2)(rng);
  const std::size_t mdim = with_module ? k : 0;
  // module basis: P e_j for a random unit upper triangular P
  Matrix P = zero(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) P[i][j] = i == j ? Scalar(1) : small(rng);
  std::vector<SparseVector> mbasis;
  for (std::size_t j = 0; j < mdim; ++j) {
    SparseVector v;
    for (std::size_t i = 0; i < k; ++i)
      if (P[i][j] != 0) v.emplace(i, P[i][j]);
    mbasis.push_back(v);
  }

  std::vector<std::string> names;
  std::vector<int> degrees;
  for (std::size_t a = 0; a < gdim; ++a) {
    names.push_back("g" + std::to_string(a));
    degrees.push_back(0);
  }
  for (std::size_t j = 0; j < mdim; ++j) {
    names.push_back("m" + std::to_string(j));
    degrees.push_back(mdeg);
  }
  const int maxdeg = mdim > 0 ? mdeg : 0;
  FiniteLieData t(names, degrees, maxdeg, true);
  std::vector<SparseVector> gflat;
  for (const auto& m : g) gflat.push_back(flatten(m));
  for (std::size_t a = 0; a < gdim; ++a)
    for (std::size_t b = a + 1; b < gdim; ++b) t.set_bracket(a, b, coords(gflat, flatten(commutator(g[a], g[b]))));
  for (std::size_t a = 0; a < gdim; ++a)
    for (std::size_t j = 0; j < mdim; ++j) {
      SparseVector img;
      for (const auto& [i, c] : mbasis[j])
        for (std::size_t r = 0; r < k; ++r)
          if (g[a][r][i] != 0) img[r] += g[a][r][i] * c;
      std::erase_if(img, [](const auto& e) { return e.second == 0; });
      SparseVector local = coords(mbasis, img);
      SparseVector shifted;
      for (const auto& [i, c] : local) shifted.emplace(gdim + i, c);
      t.set_bracket(a, gdim + j, shifted);
    }
  return Sample{std::move(t), strict};
}

}  // namespace samples
