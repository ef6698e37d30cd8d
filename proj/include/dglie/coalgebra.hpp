#pragma once

// Connected cocommutative differential graded coalgebras (C = Q ⊕ C̄, C̄ in
// degrees >= 1), the dual coalgebra of a Sullivan algebra, Quillen's functor
// 𝓛 and Chevalley–Eilenberg chains 𝓒.
//
// Conventions. Tensor signs are Koszul: (f ⊗ g)(a ⊗ b) = f(a) g(b) when
// degrees match, τ(a ⊗ b) = (-1)^{|a||b|} b ⊗ a, (1 ⊗ δ)(a ⊗ b) =
// (-1)^{|a|} a ⊗ δb. The dual of ∧Z pairs monomials with their duals without
// extra signs. In 𝓛(C) the generator s^{-1}a has degree |a| - 1 and
//   d(s^{-1}a) = -s^{-1}δa - 1/2 Σ_{j,k} (-1)^{|e_j|} c^a_{jk} [s^{-1}e_j, s^{-1}e_k]
// where Δ̄a = Σ c^a_{jk} e_j ⊗ e_k; for Δ̄a = Σ_i a_i ⊗ a_i' + (-1)^{|a_i||a_i'|} a_i' ⊗ a_i
// the quadratic part equals -Σ_i (-1)^{|a_i|} [s^{-1}a_i, s^{-1}a_i'].
// In 𝓒(L) = ∧sL the coderivation is fixed by s x -> -s dx and
// s x ∧ s y -> (-1)^{|x|} s[x, y].

#include <cctype>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dglie/dgl.hpp"
#include "dglie/error.hpp"
#include "dglie/gcalg.hpp"
#include "dglie/lie_table.hpp"
#include "dglie/linalg.hpp"

namespace dglie {

using Tensor2 = std::map<std::pair<std::size_t, std::size_t>, Scalar>;
using Tensor3 = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar>;

inline void add_term(Tensor2& t, std::size_t a, std::size_t b, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = t.try_emplace({a, b}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

inline void add_term(Tensor3& t, std::size_t a, std::size_t b, std::size_t c3, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = t.try_emplace({a, b, c3}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

/// Degree-truncated cdgc: the basis of C̄ in degrees 1..window. Both the
/// reduced diagonal and δ stay inside the window, so the truncation is exact.
struct Cdgc {
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<SparseVector> delta;  // δ(e_i), degree -1
  std::vector<Tensor2> diagonal;    // Δ̄(e_i)
  int window = 0;

  std::size_t dim() const { return names.size(); }

  std::vector<std::size_t> basis_in_degree(int q) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degrees[i] == q) out.push_back(i);
    return out;
  }

  std::optional<std::size_t> find(const std::string& n) const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (names[i] == n) return i;
    return std::nullopt;
  }

  /// Throws ValidationError naming the first violated axiom.
  void check() const {
    const std::size_t n = dim();
    if (degrees.size() != n || delta.size() != n || diagonal.size() != n)
      throw InputError("coalgebra data has inconsistent sizes");
    for (std::size_t i = 0; i < n; ++i) {
      if (degrees[i] < 1) throw ValidationError("not connected: " + names[i] + " has degree < 1");
      if (degrees[i] > window) throw ValidationError(names[i] + " lies above the window");
      for (const auto& [j, c] : delta[i])
        if (degrees.at(j) != degrees[i] - 1) throw ValidationError("δ(" + names[i] + ") is not of degree -1");
      for (const auto& [jk, c] : diagonal[i])
        if (degrees.at(jk.first) + degrees.at(jk.second) != degrees[i])
          throw ValidationError("Δ̄(" + names[i] + ") is not homogeneous");
    }
    for (std::size_t i = 0; i < n; ++i) {
      SparseVector dd;
      for (const auto& [j, c] : delta[i]) axpy(dd, c, delta[j]);
      if (!dd.empty()) throw ValidationError("δ∘δ != 0 on " + names[i]);
      for (const auto& [jk, c] : diagonal[i]) {
        auto [j, k] = jk;
        auto it = diagonal[i].find({k, j});
        const Scalar other = it == diagonal[i].end() ? Scalar(0) : it->second;
        const Scalar sign = (degrees[j] % 2 != 0 && degrees[k] % 2 != 0) ? -1 : 1;
        if (other != sign * c) throw ValidationError("Δ̄ is not cocommutative on " + names[i]);
      }
      Tensor3 left, right;
      for (const auto& [jk, c] : diagonal[i]) {
        auto [j, k] = jk;
        for (const auto& [ab, x] : diagonal[j]) add_term(left, ab.first, ab.second, k, c * x);
        for (const auto& [ab, x] : diagonal[k]) add_term(right, j, ab.first, ab.second, c * x);
      }
      if (left != right) throw ValidationError("Δ̄ is not coassociative on " + names[i]);
      Tensor2 lhs, rhs;
      for (const auto& [j, c] : delta[i])
        for (const auto& [ab, x] : diagonal[j]) add_term(lhs, ab.first, ab.second, c * x);
      for (const auto& [jk, c] : diagonal[i]) {
        auto [j, k] = jk;
        for (const auto& [a, x] : delta[j]) add_term(rhs, a, k, c * x);
        const Scalar s = degrees[j] % 2 != 0 ? -1 : 1;
        for (const auto& [b, x] : delta[k]) add_term(rhs, j, b, s * c * x);
      }
      if (lhs != rhs) throw ValidationError("δ is not a coderivation on " + names[i]);
    }
  }

  /// Homology of (C̄, δ) in degree q (the counit contributes Q in degree 0).
  std::size_t homology_dim(int q) const {
    if (q == 0) return 1;
    auto mat = [&](int from) {
      auto src = basis_in_degree(from), dst = basis_in_degree(from - 1);
      std::map<std::size_t, std::size_t> pos;
      for (std::size_t r = 0; r < dst.size(); ++r) pos.emplace(dst[r], r);
      SparseMatrix m(dst.size(), src.size());
      for (std::size_t c = 0; c < src.size(); ++c)
        for (const auto& [j, x] : delta[src[c]])
          if (pos.count(j)) m.set(pos.at(j), c, x);
      return m;
    };
    if (q + 1 > window) throw WindowError("homology in degree " + std::to_string(q) + " needs window > q");
    return homology_at(mat(q + 1), mat(q)).dim;
  }
};

inline std::string identifier_for(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
      out += c;
    else if (c == '*')
      out += '_';
    else if (c == '^')
      out += 'p';
  }
  return out;
}

/// The graded dual (∧Z)^# truncated to degrees 1..window.
inline Cdgc dualize_sullivan(const SullivanAlgebra& S, int window) {
  const GcAlgebra& A = S.algebra();
  Cdgc C;
  C.window = window;
  std::map<Monomial, std::size_t> index;
  for (int q = 1; q <= window; ++q)
    for (const auto& m : A.monomials(q)) {
      index.emplace(m, C.names.size());
      C.names.push_back(A.format(m));
      C.degrees.push_back(q);
    }
  C.delta.assign(C.dim(), {});
  C.diagonal.assign(C.dim(), {});
  // δ(ρ#) = Σ_σ coeff_ρ(dσ) σ#
  for (const auto& [sigma, si] : index) {
    if (C.degrees[si] + 1 > window) continue;
    for (const auto& [rho, c] : S.d(Poly{{sigma, Scalar(1)}})) C.delta[index.at(rho)].emplace(si, c);
  }
  // Δ̄(ρ#) = Σ coeff_ρ(μν) μ# ⊗ ν#
  for (const auto& [mu, mi] : index)
    for (const auto& [nu, ni] : index) {
      if (C.degrees[mi] + C.degrees[ni] > window) continue;
      if (auto prod = A.multiply(mu, nu)) add_term(C.diagonal[index.at(prod->first)], mi, ni, prod->second);
    }
  C.check();
  return C;
}

/// Quillen's 𝓛(C) = (𝕃(s^{-1}C̄), d1 + d2).
inline Dgl quillen_L(const Cdgc& C) {
  C.check();
  if (C.dim() > GeneratorSet::kMaxGenerators)
    throw WindowError("coalgebra has more basis elements than supported generators");
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < C.dim(); ++i) gens.push_back({"u_" + identifier_for(C.names[i]), C.degrees[i] - 1});
  GeneratorSet gs(gens);
  FreeLie lie(gs);
  std::vector<Tensor> d(C.dim());
  for (std::size_t i = 0; i < C.dim(); ++i) {
    for (const auto& [j, c] : C.delta[i]) d[i].add(lie.generator(j), -c);
    for (const auto& [jk, c] : C.diagonal[i]) {
      const Scalar sign = C.degrees[jk.first] % 2 != 0 ? -1 : 1;
      d[i].add(lie.bracket(lie.generator(jk.first), lie.generator(jk.second)), Scalar(-sign * c / 2));
    }
  }
  return Dgl(gs, std::move(d));
}

/// The quadratic part of d(s^{-1}a) from an explicit symmetric decomposition
/// Δ̄a = Σ_i a_i ⊗ a_i' + (-1)^{|a_i||a_i'|} a_i' ⊗ a_i: pairs j < k taken once,
/// diagonal terms halved.
inline Tensor quadratic_part_from_decomposition(const Cdgc& C, const FreeLie& lie, std::size_t a) {
  Tensor out;
  for (const auto& [jk, c] : C.diagonal[a]) {
    auto [j, k] = jk;
    if (j > k) continue;
    const Scalar coeff = j == k ? Scalar(c / 2) : c;  // a_i = coeff * e_j, a_i' = e_k
    const Scalar sign = C.degrees[j] % 2 != 0 ? -1 : 1;
    out.add(lie.bracket(lie.generator(j), lie.generator(k)), Scalar(-sign * coeff));
  }
  return out;
}

/// A finite-dimensional dgl: bracket table plus differential (degree -1).
struct FiniteDgl {
  FiniteLieData table;
  std::vector<SparseVector> d;
};

/// Truncate 𝕃(V) with all generators in degree >= 1 to degrees <= max_degree.
inline FiniteDgl finite_dgl_from(const Dgl& L, int max_degree) {
  if (L.generators().size() > 0 && L.generators().min_degree() < 1)
    throw UnsupportedError("degree truncation needs all generators in degree >= 1");
  const FreeLie& lie = L.lie();
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<Tensor> elems;
  std::map<Bigrade, std::size_t> offset;
  for (int q = 1; q <= max_degree; ++q)
    for (std::size_t l = 1; l <= static_cast<std::size_t>(q); ++l) {
      offset[{l, q}] = names.size();
      const auto& b = lie.lie_basis(l, q);
      for (std::size_t i = 0; i < b.size(); ++i) {
        names.push_back(b.labels[i]);
        degrees.push_back(q);
        elems.push_back(b.elements[i]);
      }
    }
  auto coords = [&](const Tensor& t) {
    SparseVector v;
    for (const auto& [bg, comp] : lie.components(t)) {
      if (bg.degree > max_degree) throw InvariantError("element above the truncation");
      for (const auto& [k, c] : lie.coordinates(comp, bg.length, bg.degree)) v.emplace(offset.at(bg) + k, c);
    }
    return v;
  };
  FiniteDgl out{FiniteLieData(names, degrees, max_degree, false), {}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j)
      if (degrees[i] + degrees[j] <= max_degree) out.table.set_bracket(i, j, coords(lie.bracket(elems[i], elems[j])));
  for (const auto& e : elems) out.d.push_back(coords(L.apply(e)));
  return out;
}

/// Chevalley–Eilenberg chains ∧sL truncated to degrees <= window. Needs the
/// table to describe L in degrees <= window - 1.
inline Cdgc chevalley_chains(const FiniteLieData& L, const std::vector<SparseVector>& dL, int window) {
  if (!L.closed() && L.max_degree() < window - 1)
    throw WindowError("Lie data stops below degree " + std::to_string(window - 1));
  for (int q = 0; q <= std::min(L.max_degree(), window - 1); ++q)
    if (!L.complete(q)) throw WindowError("Lie data incomplete in degree " + std::to_string(q));
  L.validate();
  if (dL.size() != L.dim()) throw InputError("one differential image per basis element required");
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (std::size_t i = 0; i < L.dim(); ++i) {
    names.push_back("s" + L.names()[i]);
    degrees.push_back(L.degree(i) + 1);
  }
  GcAlgebra A(names, degrees);
  Cdgc C;
  C.window = window;
  std::map<Monomial, std::size_t> index;
  std::vector<Monomial> monos;
  for (int q = 1; q <= window; ++q)
    for (const auto& m : A.monomials(q)) {
      index.emplace(m, monos.size());
      monos.push_back(m);
      C.names.push_back(A.format(m));
      C.degrees.push_back(q);
    }
  auto to_vec = [&](const Poly& p) {
    SparseVector v;
    for (const auto& [m, c] : p) v.emplace(index.at(m), c);
    return v;
  };
  auto lift = [&](const SparseVector& x) {  // x ∈ L  ->  s x
    Poly p;
    for (const auto& [k, c] : x) add_term(p, Monomial{k}, c);
    return p;
  };
  std::vector<Poly> linear(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i) {
    linear[i] = lift(dL[i]);
    for (auto& [m, c] : linear[i]) c = -c;
  }
  for (const auto& m : monos) {
    Poly out = A.derivation(linear, Poly{{m, Scalar(1)}});
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        Monomial pair{m[i], m[j]}, rest;
        for (std::size_t k = 0; k < m.size(); ++k)
          if (k != i && k != j) rest.push_back(m[k]);
        auto moved = A.multiply(pair, rest);
        check_invariant(moved && moved->first == m, "unshuffle bookkeeping");
        const Scalar sign = Scalar(moved->second) * (L.degree(m[i]) % 2 != 0 ? -1 : 1);
        Poly br = lift(L.bracket_basis(m[i], m[j]));
        for (const auto& [mm, c] : A.multiply(br, Poly{{rest, Scalar(1)}})) add_term(out, mm, sign * c);
      }
    C.delta.push_back(to_vec(out));
    Tensor2 diag;
    const std::size_t k = m.size();
    for (unsigned long mask = 1; mask + 1 < (1ul << k); ++mask) {
      Monomial left, right;
      for (std::size_t b = 0; b < k; ++b) ((mask >> b) & 1 ? left : right).push_back(m[b]);
      auto prod = A.multiply(left, right);
      check_invariant(prod && prod->first == m, "unshuffle bookkeeping");
      add_term(diag, index.at(left), index.at(right), prod->second);
    }
    C.diagonal.push_back(std::move(diag));
  }
  C.check();
  return C;
}

/// Neisendorfer's model 𝓛((∧Z, d)^#) of a minimal Sullivan algebra, with the
/// dual coalgebra truncated to degrees <= window.
inline Dgl neisendorfer_model(const SullivanAlgebra& S, int window) {
  auto m = S.minimality_check();
  if (m.outcome == MinimalityReport::Outcome::NotMinimal)
    throw ValidationError("Sullivan algebra is not minimal: " + m.reason);
  return quillen_L(dualize_sullivan(S, window));
}

}  // namespace dglie
