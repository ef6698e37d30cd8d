#include <gtest/gtest.h>

#include <random>

#include "dglie/freelie.hpp"

using namespace dglie;

namespace {

// Witt necklace count (1/n) sum_{e|n} mu(e) k^{n/e}.
long witt(int k, int n) {
  auto mobius = [](int m) {
    int res = 1;
    for (int p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        res = -res;
      }
    return m > 1 ? -res : res;
  };
  long s = 0;
  for (int e = 1; e <= n; ++e)
    if (n % e == 0) {
      long pw = 1;
      for (int i = 0; i < n / e; ++i) pw *= k;
      s += mobius(e) * pw;
    }
  return s / n;
}

Tensor random_bracket(const FreeLie& f, std::mt19937& rng, int leaves) {
  if (leaves == 1) return f.generator(rng() % f.generators().size());
  int left = 1 + static_cast<int>(rng() % (leaves - 1));
  return f.bracket(random_bracket(f, rng, left), random_bracket(f, rng, leaves - left));
}

// Random homogeneous Lie element: a combination of same-shape brackets.
Tensor random_homogeneous(const FreeLie& f, std::mt19937& rng, int leaves) {
  Tensor t = random_bracket(f, rng, leaves);
  auto g = f.bigrade(t);
  for (int k = 0; k < 3; ++k) {
    Tensor s = random_bracket(f, rng, leaves);
    if (f.bigrade(s) == g) t.add(s, static_cast<int>(rng() % 5) - 2);
  }
  return t;
}

}  // namespace

TEST(GradedBracket, EvenCommutator) {
  FreeLie f(GeneratorSet({{"x", 0}, {"y", 0}}));
  auto b = f.bracket(f.generator("x"), f.generator("y"));
  Tensor expect;
  expect.add(Word::from_letters({0, 1}), 1);
  expect.add(Word::from_letters({1, 0}), -1);
  EXPECT_EQ(b, expect);
  EXPECT_TRUE(f.bracket(f.generator("x"), f.generator("x")).is_zero());
}

TEST(GradedBracket, OddSelfBracket) {
  FreeLie f(GeneratorSet({{"a", 1}}));
  auto b = f.bracket(f.generator("a"), f.generator("a"));
  EXPECT_EQ(b, Tensor(Word::from_letters({0, 0}), 2));
  // graded Jacobi forces [a,[a,a]] = 0
  EXPECT_TRUE(f.bracket(f.generator("a"), b).is_zero());
}

TEST(LieBasis, WittCountsTwoEvenGenerators) {
  FreeLie f(GeneratorSet({{"x", 0}, {"y", 0}}));
  const long expected[] = {2, 1, 2, 3, 6, 9, 18};
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(static_cast<long>(f.lie_basis(n, 0).size()), witt(2, n)) << n;
    EXPECT_EQ(static_cast<long>(f.lie_basis(n, 0).size()), expected[n - 1]) << n;
  }
}

TEST(LieBasis, WittCountsThreeEvenGenerators) {
  FreeLie f(GeneratorSet({{"a", 0}, {"b", 0}, {"c", 0}}));
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(static_cast<long>(f.lie_basis(n, 0).size()), witt(3, n)) << n;
}

TEST(LieBasis, OneOddGenerator) {
  FreeLie f(GeneratorSet({{"a", 1}}));
  // tensor-rank oracle: rank of the bracketing map on words
  for (int n = 1; n <= 4; ++n)
    EXPECT_EQ(f.lie_basis(n, n).size(), f.dynkin_image(n, n).dim()) << n;
  EXPECT_EQ(f.lie_basis(1, 1).size(), 1u);
  EXPECT_EQ(f.lie_basis(2, 2).size(), 1u);
  EXPECT_EQ(f.lie_basis(3, 3).size(), 0u);
}

TEST(LieBasis, LengthOneIsGenerators) {
  FreeLie f(GeneratorSet({{"x", 0}, {"a", 1}, {"b", 1}, {"c", 2}}));
  EXPECT_EQ(f.lie_basis(1, 1).size(), 2u);
  EXPECT_EQ(f.lie_basis(1, 2).size(), 1u);
  EXPECT_EQ(f.lie_basis(1, 3).size(), 0u);
}

TEST(LieBasis, AgreesWithDynkinImage) {
  FreeLie f(GeneratorSet({{"x", 0}, {"y", 0}, {"a", 1}, {"b", 2}}));
  for (std::size_t n = 1; n <= 4; ++n)
    for (int d = 0; d <= 5; ++d) EXPECT_EQ(f.lie_basis_span(n, d), f.dynkin_image(n, d)) << n << "," << d;
}

TEST(LieBasis, PbwEulerProduct) {
  // Poincare series of T(V) equals that of the free graded-commutative
  // algebra on L(V), coefficientwise up to length 5 and degree 8.
  const std::size_t N = 5;
  const int D = 8;
  for (auto gens : {std::vector<Generator>{{"x", 0}, {"a", 1}, {"b", 2}},
                    std::vector<Generator>{{"a", 1}, {"b", 1}, {"c", 3}},
                    std::vector<Generator>{{"x", 0}, {"y", 0}, {"u", 1}}}) {
    FreeLie f{GeneratorSet(gens)};
    using Series = std::vector<std::vector<long>>;
    Series tv(N + 1, std::vector<long>(D + 1, 0));
    tv[0][0] = 1;
    for (std::size_t n = 1; n <= N; ++n)
      for (int d = 0; d <= D; ++d)
        for (const auto& g : gens)
          if (d >= g.degree) tv[n][d] += tv[n - 1][d - g.degree];
    Series sym(N + 1, std::vector<long>(D + 1, 0));
    sym[0][0] = 1;
    auto binom = [](long a, long b) {
      if (b < 0 || b > a) return 0L;
      long r = 1;
      for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
      return r;
    };
    for (std::size_t n = 1; n <= N; ++n)
      for (int d = 0; d <= D; ++d) {
        long k = static_cast<long>(f.lie_basis(n, d).size());
        if (k == 0) continue;
        Series next(N + 1, std::vector<long>(D + 1, 0));
        for (std::size_t a = 0; a <= N; ++a)
          for (int b = 0; b <= D; ++b) {
            if (sym[a][b] == 0) continue;
            for (long j = 0; a + j * n <= N && b + j * d <= D; ++j) {
              long c = d % 2 == 0 ? binom(k + j - 1, j) : binom(k, j);
              if (c == 0) break;
              next[a + j * n][b + j * d] += sym[a][b] * c;
              if (d == 0 && n == 0) break;
            }
          }
        sym = next;
      }
    EXPECT_EQ(tv, sym);
  }
}

TEST(Dynkin, Examples) {
  FreeLie f(GeneratorSet({{"x", 0}, {"y", 0}}));
  auto x = f.generator("x");
  EXPECT_EQ(f.dynkin(x), x);
  auto w = f.bracket(x, f.generator("y"));
  EXPECT_EQ(f.dynkin(w), Scalar(2) * w);
  EXPECT_TRUE(f.dynkin(Tensor(Word::from_letters({0, 0}))).is_zero());
  EXPECT_THROW(f.dynkin(x + w), InputError);
}

TEST(Dynkin, ActsAsLengthOnBasis) {
  FreeLie f(GeneratorSet({{"x", 0}, {"a", 1}, {"b", 1}, {"c", 2}}));
  for (std::size_t n = 1; n <= 5; ++n)
    for (int d = 0; d <= 6; ++d)
      for (const auto& e : f.lie_basis(n, d).elements)
        EXPECT_EQ(f.dynkin(e), Scalar(static_cast<long>(n)) * e);
}

TEST(Properties, AntisymmetryJacobiDynkin) {
  FreeLie f(GeneratorSet({{"x", 0}, {"y", 0}, {"a", 1}, {"b", 2}}));
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    auto u = random_homogeneous(f, rng, 1 + rng() % 3);
    auto v = random_homogeneous(f, rng, 1 + rng() % 2);
    auto w = random_homogeneous(f, rng, 1 + rng() % 2);
    if (u.is_zero() || v.is_zero() || w.is_zero()) continue;
    // [u,v] + (-1)^{|u||v|} [v,u] = 0
    int s = (f.bigrade(u)->degree * f.bigrade(v)->degree) % 2 == 0 ? 1 : -1;
    EXPECT_TRUE((f.bracket(u, v) + Scalar(s) * f.bracket(v, u)).is_zero());
    // [u,[v,w]] = [[u,v],w] + (-1)^{|u||v|} [v,[u,w]]
    Tensor lhs = f.bracket(u, f.bracket(v, w));
    Tensor rhs = f.bracket(f.bracket(u, v), w) + Scalar(s) * f.bracket(v, f.bracket(u, w));
    EXPECT_EQ(lhs, rhs);
    // Dynkin certificate on every bracket expression
    auto uvw = f.bracket(u, f.bracket(v, w));
    for (const auto& [g, comp] : f.components(uvw))
      EXPECT_EQ(f.dynkin(comp), Scalar(static_cast<long>(g.length)) * comp);
    EXPECT_TRUE(f.is_lie(uvw));
  }
}

TEST(AdPower, CounterexampleGenerators) {
  FreeLie f(GeneratorSet({{"x", 0}, {"y", 0}, {"z", 1}}));
  auto y = f.generator("y"), z = f.generator("z");
  EXPECT_EQ(f.ad_power(y, z, 0), z);
  EXPECT_EQ(f.ad_power(y, z, 1), f.bracket(y, z));
  auto a2 = f.ad_power(y, z, 2);
  EXPECT_EQ(a2, f.bracket(y, f.bracket(y, z)));
  ASSERT_TRUE(f.bigrade(a2));
  EXPECT_EQ(*f.bigrade(a2), (Bigrade{3, 1}));
}

TEST(Coordinates, RoundTripAndRejection) {
  FreeLie f(GeneratorSet({{"x", 0}, {"y", 0}, {"z", 1}}));
  auto e = f.bracket(f.generator("y"), f.bracket(f.generator("x"), f.generator("z")));
  auto c = f.coordinates(e, 3, 1);
  EXPECT_EQ(f.from_coordinates(c, 3, 1), e);
  EXPECT_THROW(f.coordinates(Tensor(Word::from_letters({0, 2})), 2, 1), ValidationError);
  EXPECT_EQ(f.format(f.bracket(f.generator("x"), f.generator("y"))), "[x,y]");
}
