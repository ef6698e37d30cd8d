#pragma once

// The Lie coalgebra 𝓔(∧Z, d): the bar construction on the augmentation ideal
// modulo shuffle-decomposables, truncated by word length and degree; the
// functor 𝓐 back to cdgas; the duality with Neisendorfer's model; and the
// quasi-isomorphism check (s^{-1}Z^#, 0) -> 𝓛((∧Z, d)^#).
//
// Grading is cohomological: the letter s^{-1}a has degree |a| - 1. The bar
// differential is the coderivation of the tensor coalgebra with
//   D(s^{-1}a) = -s^{-1}da,   D(s^{-1}a ⊗ s^{-1}b) = -(-1)^{|a|} s^{-1}(ab),
// which is the transpose of the Neisendorfer differential under the naive
// pairing of words in letters with words in the generators s^{-1}a^#.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dglie/coalgebra.hpp"
#include "dglie/error.hpp"
#include "dglie/gcalg.hpp"
#include "dglie/linalg.hpp"

namespace dglie {

using Letters = std::vector<std::size_t>;
using WordVec = std::map<Letters, Scalar>;  // same type as Poly; add_term is shared

struct CoalgebraAxioms {
  bool antisymmetric = true;     // (1 + τ)Δ = 0
  bool co_jacobi = true;         // (1 + σ + σ²)(1 ⊗ Δ)Δ = 0
  bool cobracket_descends = true;  // Δ kills shuffle-decomposables
  bool differential_descends = true;
  bool square_zero = true;       // D² = 0 below the top two degrees
  bool coderivation = true;      // ΔD = (D ⊗ 1 + 1 ⊗ D)Δ
  std::vector<std::string> failures;
  bool ok() const {
    return antisymmetric && co_jacobi && cobracket_descends && differential_descends && square_zero && coderivation;
  }
};

class LieCoalgebraTrunc {
 public:
  struct Piece {
    std::vector<Letters> words;
    std::map<Letters, std::size_t> pos;
    Echelon shuffles;
    std::size_t shuffle_rank = 0;
    std::map<std::size_t, std::size_t> basis_of_word;  // non-pivot word -> global basis index
  };

  /// 𝓔(∧Z, d) for words of length <= q_max and degree <= n_max.
  LieCoalgebraTrunc(const SullivanAlgebra& S, std::size_t q_max, int n_max)
      : S_(S), q_max_(q_max), n_max_(n_max) {
    if (q_max < 1) throw InputError("word length bound must be at least 1");
    const GcAlgebra& A = S.algebra();
    for (int q = 1; q <= n_max + 1; ++q)
      for (const auto& m : A.monomials(q)) {
        letter_index_.emplace(m, letters_.size());
        letters_.push_back(m);
        letter_degree_.push_back(q - 1);
      }
    for (std::size_t q = 1; q <= q_max; ++q)
      for (int n = 0; n <= n_max; ++n) build_piece(q, n);
    for (auto& [key, piece] : pieces_) {
      for (std::size_t i = 0; i < piece.words.size(); ++i) {
        if (std::binary_search(pivots_[key].begin(), pivots_[key].end(), i)) continue;
        piece.basis_of_word.emplace(i, basis_.size());
        basis_.push_back(piece.words[i]);
        degree_.push_back(key.second);
        length_.push_back(key.first);
      }
    }
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      cobracket_.push_back(cobracket_raw(basis_[b]));
      differential_.push_back(degree_[b] < n_max_ ? std::optional(normal_form(bar_differential(basis_[b])))
                                                  : std::nullopt);
    }
  }

  std::size_t q_max() const { return q_max_; }
  int n_max() const { return n_max_; }
  std::size_t dim() const { return basis_.size(); }
  const Letters& basis_word(std::size_t b) const { return basis_.at(b); }
  int degree(std::size_t b) const { return degree_.at(b); }
  std::size_t length(std::size_t b) const { return length_.at(b); }
  const Tensor2& cobracket(std::size_t b) const { return cobracket_.at(b); }
  const std::optional<SparseVector>& differential(std::size_t b) const { return differential_.at(b); }
  const std::vector<Monomial>& letters() const { return letters_; }
  int letter_degree(std::size_t l) const { return letter_degree_.at(l); }
  const SullivanAlgebra& algebra() const { return S_; }

  std::size_t piece_dim(std::size_t q, int n) const {
    auto it = pieces_.find({q, n});
    return it == pieces_.end() ? 0 : it->second.basis_of_word.size();
  }
  std::size_t words_dim(std::size_t q, int n) const {
    auto it = pieces_.find({q, n});
    return it == pieces_.end() ? 0 : it->second.words.size();
  }
  const Piece* piece(std::size_t q, int n) const {
    auto it = pieces_.find({q, n});
    return it == pieces_.end() ? nullptr : &it->second;
  }

  int word_degree(const Letters& w) const {
    int d = 0;
    for (auto l : w) d += letter_degree_[l];
    return d;
  }

  std::string format_word(const Letters& w) const {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += "|";
      s += S_.algebra().format(letters_[w[i]]);
    }
    return s;
  }

  /// Class of a word combination in the quotient, over the global basis.
  SparseVector normal_form(const WordVec& v) const {
    std::map<std::pair<std::size_t, int>, SparseVector> split;
    for (const auto& [w, c] : v) {
      std::pair<std::size_t, int> key{w.size(), word_degree(w)};
      auto it = pieces_.find(key);
      if (it == pieces_.end())
        throw WindowError("word of length " + std::to_string(key.first) + " and degree " +
                          std::to_string(key.second) + " lies outside the truncation");
      split[key].emplace(it->second.pos.at(w), c);
    }
    SparseVector out;
    for (const auto& [key, vec] : split) {
      const Piece& p = pieces_.at(key);
      for (const auto& [i, c] : p.shuffles.reduce(vec).residual) out.emplace(p.basis_of_word.at(i), c);
    }
    return out;
  }

  /// Graded shuffle product of two words.
  WordVec shuffle(const Letters& u, const Letters& v) const {
    WordVec out;
    Letters cur;
    std::function<void(std::size_t, std::size_t, int)> rec = [&](std::size_t i, std::size_t j, int sign) {
      if (i == u.size() && j == v.size()) {
        add_term(out, cur, Scalar(sign));
        return;
      }
      if (i < u.size()) {
        cur.push_back(u[i]);
        rec(i + 1, j, sign);
        cur.pop_back();
      }
      if (j < v.size()) {
        // v[j] jumps over the remaining letters u[i..]
        int rest = 0;
        for (std::size_t k = i; k < u.size(); ++k) rest += letter_degree_[u[k]];
        const int s = (rest % 2 != 0 && letter_degree_[v[j]] % 2 != 0) ? -sign : sign;
        cur.push_back(v[j]);
        rec(i, j + 1, s);
        cur.pop_back();
      }
    };
    rec(0, 0, 1);
    return out;
  }

  /// Bar differential on a single word, as a word combination.
  WordVec bar_differential(const Letters& w) const {
    const GcAlgebra& A = S_.algebra();
    WordVec out;
    int prefix = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Scalar ps = prefix % 2 != 0 ? -1 : 1;
      for (const auto& [m, c] : S_.d(Poly{{letters_[w[i]], Scalar(1)}})) {
        Letters nw = w;
        nw[i] = letter_at(m);
        add_term(out, nw, -ps * c);
      }
      if (i + 1 < w.size()) {
        if (auto prod = A.multiply(letters_[w[i]], letters_[w[i + 1]])) {
          Letters nw(w.begin(), w.begin() + static_cast<long>(i));
          nw.push_back(letter_at(prod->first));
          nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
          const int a = letter_degree_[w[i]] + 1;
          const Scalar s = (a % 2 != 0 ? Scalar(1) : Scalar(-1)) * prod->second;
          add_term(out, nw, ps * s);
        }
      }
      prefix += letter_degree_[w[i]];
    }
    return out;
  }

  /// Δ̄ - τΔ̄ on a word, both factors reduced to the quotient.
  Tensor2 cobracket_raw(const Letters& w) const {
    Tensor2 out;
    for (std::size_t i = 1; i < w.size(); ++i) {
      Letters u(w.begin(), w.begin() + static_cast<long>(i)), v(w.begin() + static_cast<long>(i), w.end());
      const SparseVector nu = normal_form(WordVec{{u, Scalar(1)}});
      const SparseVector nv = normal_form(WordVec{{v, Scalar(1)}});
      const int du = word_degree(u), dv = word_degree(v);
      const Scalar tau = (du % 2 != 0 && dv % 2 != 0) ? 1 : -1;
      for (const auto& [a, x] : nu)
        for (const auto& [b, y] : nv) {
          add_term(out, a, b, x * y);
          add_term(out, b, a, tau * x * y);
        }
    }
    return out;
  }

  Tensor2 cobracket_of(const SparseVector& x) const {
    Tensor2 out;
    for (const auto& [b, c] : x)
      for (const auto& [jk, y] : cobracket_[b]) add_term(out, jk.first, jk.second, c * y);
    return out;
  }

  CoalgebraAxioms check_axioms() const {
    CoalgebraAxioms ax;
    auto fail = [&](bool& flag, const std::string& what) {
      if (flag) ax.failures.push_back(what);
      flag = false;
    };
    for (std::size_t x = 0; x < dim(); ++x) {
      const Tensor2& c = cobracket_[x];
      for (const auto& [jk, v] : c) {
        auto [j, k] = jk;
        auto it = c.find({k, j});
        const Scalar other = it == c.end() ? Scalar(0) : it->second;
        const Scalar s = (degree_[j] % 2 != 0 && degree_[k] % 2 != 0) ? 1 : -1;
        if (other != s * v) fail(ax.antisymmetric, "(1+τ)Δ != 0 on " + format_word(basis_[x]));
      }
      Tensor3 t;
      for (const auto& [jk, v] : c)
        for (const auto& [ab, y] : cobracket_[jk.second]) add_term(t, jk.first, ab.first, ab.second, v * y);
      Tensor3 sum = t;
      for (int r = 0; r < 2; ++r) {
        Tensor3 next;
        for (const auto& [abc, v] : t) {
          auto [a, b, cc] = abc;
          const int da = degree_[a], dbc = degree_[b] + degree_[cc];
          add_term(next, b, cc, a, (da % 2 != 0 && dbc % 2 != 0) ? Scalar(-v) : v);
        }
        for (const auto& [abc, v] : next) add_term(sum, std::get<0>(abc), std::get<1>(abc), std::get<2>(abc), v);
        t = std::move(next);
      }
      if (!sum.empty()) fail(ax.co_jacobi, "co-Jacobi fails on " + format_word(basis_[x]));
      if (differential_[x]) {
        Tensor2 lhs = cobracket_of(*differential_[x]);
        Tensor2 rhs;
        for (const auto& [jk, v] : c) {
          auto [j, k] = jk;
          if (differential_[j])
            for (const auto& [a, y] : *differential_[j]) add_term(rhs, a, k, v * y);
          const Scalar s = degree_[j] % 2 != 0 ? -1 : 1;
          if (differential_[k])
            for (const auto& [b, y] : *differential_[k]) add_term(rhs, j, b, s * v * y);
        }
        if (lhs != rhs) fail(ax.coderivation, "ΔD != (D⊗1 + 1⊗D)Δ on " + format_word(basis_[x]));
      }
      if (degree_[x] + 2 <= n_max_) {
        SparseVector dd;
        for (const auto& [b, v] : *differential_[x]) axpy(dd, v, *differential_[b]);
        if (!dd.empty()) fail(ax.square_zero, "D² != 0 on " + format_word(basis_[x]));
      }
    }
    // shuffle-decomposables are killed by Δ and by D
    for (const auto& [key, piece] : pieces_) {
      auto [q, n] = key;
      for (const auto& [u, v] : shuffle_pairs(q, n)) {
        WordVec sh = shuffle(u, v);
        Tensor2 t;
        for (const auto& [w, c] : sh)
          for (const auto& [jk, y] : cobracket_raw(w)) add_term(t, jk.first, jk.second, c * y);
        if (!t.empty()) fail(ax.cobracket_descends, "Δ does not vanish on a shuffle in length " + std::to_string(q));
        if (n < n_max_) {
          WordVec dsh;
          for (const auto& [w, c] : sh)
            for (const auto& [w2, y] : bar_differential(w)) add_term(dsh, w2, c * y);
          if (!normal_form(dsh).empty())
            fail(ax.differential_descends, "D does not preserve shuffles in length " + std::to_string(q));
        }
      }
    }
    return ax;
  }

 private:
  std::size_t letter_at(const Monomial& m) const {
    auto it = letter_index_.find(m);
    if (it == letter_index_.end()) throw WindowError("letter outside the monomial window");
    return it->second;
  }

  std::vector<Letters> words(std::size_t q, int n) const {
    std::vector<Letters> out;
    Letters cur;
    std::function<void(int)> rec = [&](int rest) {
      if (cur.size() == q) {
        if (rest == 0) out.push_back(cur);
        return;
      }
      for (std::size_t l = 0; l < letters_.size(); ++l) {
        if (letter_degree_[l] > rest) continue;
        cur.push_back(l);
        rec(rest - letter_degree_[l]);
        cur.pop_back();
      }
    };
    rec(n);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::pair<Letters, Letters>> shuffle_pairs(std::size_t q, int n) const {
    std::vector<std::pair<Letters, Letters>> out;
    for (std::size_t i = 1; i < q; ++i)
      for (int a = 0; a <= n; ++a)
        for (const auto& u : words(i, a))
          for (const auto& v : words(q - i, n - a)) out.emplace_back(u, v);
    return out;
  }

  void build_piece(std::size_t q, int n) {
    Piece p;
    p.words = words(q, n);
    if (p.words.empty()) return;
    for (std::size_t i = 0; i < p.words.size(); ++i) p.pos.emplace(p.words[i], i);
    for (const auto& [u, v] : shuffle_pairs(q, n)) {
      SparseVector vec;
      for (const auto& [w, c] : shuffle(u, v)) vec.emplace(p.pos.at(w), c);
      p.shuffles.insert(vec);
    }
    p.shuffle_rank = p.shuffles.rank();
    pivots_[{q, n}] = p.shuffles.pivots();
    pieces_.emplace(std::make_pair(q, n), std::move(p));
  }

  SullivanAlgebra S_;
  std::size_t q_max_;
  int n_max_;
  std::vector<Monomial> letters_;
  std::vector<int> letter_degree_;
  std::map<Monomial, std::size_t> letter_index_;
  std::map<std::pair<std::size_t, int>, Piece> pieces_;
  std::map<std::pair<std::size_t, int>, std::vector<std::size_t>> pivots_;
  std::vector<Letters> basis_;
  std::vector<int> degree_;
  std::vector<std::size_t> length_;
  std::vector<Tensor2> cobracket_;
  std::vector<std::optional<SparseVector>> differential_;
};

inline LieCoalgebraTrunc bar_lie_coalgebra_E(const SullivanAlgebra& S, std::size_t q_max, int n_max) {
  return LieCoalgebraTrunc(S, q_max, n_max);
}

/// 𝓐(E) = (∧sE, D) with D(sx) = 1/2 Σ (-1)^{|x_i|} sx_i ∧ sx_i' - s dx, on the
/// cogenerators where the data of E determines D.
struct FunctorA {
  GcAlgebra algebra;
  std::vector<Poly> d;
  std::vector<bool> determined;  // D(sx) fully inside the truncation
  int checked_up_to = 0;         // D² = 0 verified on sx with |x| <= this
  bool square_zero = true;
};

inline FunctorA functor_A(const LieCoalgebraTrunc& E) {
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (std::size_t b = 0; b < E.dim(); ++b) {
    names.push_back("s[" + E.format_word(E.basis_word(b)) + "]");
    degrees.push_back(E.degree(b) + 1);
  }
  FunctorA out{GcAlgebra(names, degrees), std::vector<Poly>(E.dim()), std::vector<bool>(E.dim(), false), 0, true};
  const GcAlgebra& A = out.algebra;
  for (std::size_t b = 0; b < E.dim(); ++b) {
    Poly p;
    for (const auto& [jk, c] : E.cobracket(b)) {
      const Scalar sign = E.degree(jk.first) % 2 != 0 ? -1 : 1;
      if (auto m = A.multiply(Monomial{jk.first}, Monomial{jk.second}))
        add_term(p, m->first, sign * c * m->second / 2);
    }
    if (E.differential(b)) {
      for (const auto& [k, c] : *E.differential(b)) add_term(p, Monomial{k}, -c);
      out.determined[b] = true;
    }
    out.d[b] = std::move(p);
  }
  // D² on sx involves D on the letters of D(sx), all of degree <= |x| + 1.
  out.checked_up_to = E.n_max() - 2;
  for (std::size_t b = 0; b < E.dim(); ++b) {
    if (E.degree(b) > out.checked_up_to || E.length(b) > E.q_max() - 1) continue;
    if (!A.derivation(out.d, out.d[b]).empty()) out.square_zero = false;
  }
  return out;
}

struct DualityEntry {
  std::size_t q = 0;
  int n = 0;
  std::size_t dim_E = 0;
  std::size_t dim_L = 0;
  std::size_t pairing_rank = 0;
};

struct DualityReport {
  std::vector<DualityEntry> entries;
  std::map<int, std::pair<std::size_t, std::size_t>> totals;  // n -> (Σ_q dim E, Σ_q dim 𝕃^q)
  bool dims_match = true;
  bool pairing_perfect = true;
  bool differentials_match = true;
  std::vector<std::string> failures;
  bool ok() const { return dims_match && pairing_perfect && differentials_match; }
};

/// Compare 𝓔(∧Z, d) with Neisendorfer's model 𝓛((∧Z)^#): per (q, n) the
/// quotient of words by shuffles has the dimension of 𝕃^q(s^{-1}(∧Z)^#)_n,
/// the word pairing is perfect, and ⟨Dξ, w⟩ = ⟨ξ, d w⟩.
inline DualityReport duality_check(const SullivanAlgebra& S, int n_max, std::size_t q_max) {
  LieCoalgebraTrunc E(S, q_max, n_max);
  Dgl L = quillen_L(dualize_sullivan(S, n_max + 1));
  const FreeLie& lie = L.lie();
  check_invariant(L.generators().size() == E.letters().size(), "letters and generators differ");
  for (std::size_t l = 0; l < E.letters().size(); ++l)
    check_invariant(L.generators().degree(l) == E.letter_degree(l), "letter degrees differ");
  DualityReport rep;
  auto word_of = [](const Letters& w) {
    std::vector<std::size_t> v(w.begin(), w.end());
    return Word::from_letters(v);
  };
  auto pair = [&](const WordVec& xi, const Tensor& t) {
    Scalar s = 0;
    for (const auto& [w, c] : xi) s += c * t.coefficient(word_of(w));
    return s;
  };
  for (std::size_t q = 1; q <= q_max; ++q)
    for (int n = 0; n <= n_max; ++n) {
      DualityEntry e;
      e.q = q;
      e.n = n;
      e.dim_E = E.piece_dim(q, n);
      const auto& basis = lie.lie_basis(q, n);
      e.dim_L = basis.size();
      if (e.dim_E == 0 && e.dim_L == 0) continue;
      const auto* piece = E.piece(q, n);
      SparseMatrix P(e.dim_E, e.dim_L);
      if (piece) {
        std::size_t r = 0;
        for (const auto& [wi, b] : piece->basis_of_word) {
          for (std::size_t j = 0; j < basis.size(); ++j) {
            const Scalar c = basis.elements[j].coefficient(word_of(piece->words[wi]));
            if (c != 0) P.set(r, j, c);
          }
          ++r;
        }
      }
      e.pairing_rank = rank(P);
      if (e.dim_E != e.dim_L) {
        rep.dims_match = false;
        rep.failures.push_back("dimension mismatch at (q, n) = (" + std::to_string(q) + ", " + std::to_string(n) + ")");
      }
      if (e.pairing_rank != e.dim_E || e.pairing_rank != e.dim_L) {
        rep.pairing_perfect = false;
        rep.failures.push_back("degenerate pairing at (q, n) = (" + std::to_string(q) + ", " + std::to_string(n) + ")");
      }
      rep.totals[n].first += e.dim_E;
      rep.totals[n].second += e.dim_L;
      rep.entries.push_back(e);
    }
  for (std::size_t b = 0; b < E.dim(); ++b) {
    const int n = E.degree(b);
    if (n >= n_max) continue;
    const std::size_t q = E.length(b);
    const WordVec xi{{E.basis_word(b), Scalar(1)}};
    const WordVec dxi = E.bar_differential(E.basis_word(b));
    for (std::size_t lq = q > 1 ? q - 1 : 1; lq <= q; ++lq)
      for (const auto& w : lie.lie_basis(lq, n + 1).elements)
        if (pair(dxi, w) != pair(xi, L.apply(w))) {
          rep.differentials_match = false;
          rep.failures.push_back("⟨Dξ, w⟩ != ⟨ξ, dw⟩ for ξ = " + E.format_word(E.basis_word(b)));
        }
  }
  return rep;
}

struct QuasiIsoEntry {
  int degree = 0;
  std::size_t dim_H = 0;
  std::size_t dim_Z = 0;  // dim Z^{degree + 1}
};

struct QuasiIsoReport {
  std::vector<QuasiIsoEntry> entries;
  bool ok = true;
};

/// H(𝓛((∧Z, d)^#))_k against s^{-1}Z^# in degrees 1..max_degree; needs Z = Z^{>=2}.
inline QuasiIsoReport quasi_iso_check(const SullivanAlgebra& S, int max_degree) {
  const GcAlgebra& A = S.algebra();
  for (std::size_t g = 0; g < A.size(); ++g)
    if (A.degree(g) < 2) throw UnsupportedError("the check needs every generator in degree >= 2");
  QuasiIsoReport rep;
  if (A.size() == 0) {
    for (int k = 1; k <= max_degree; ++k) rep.entries.push_back({k, 0, 0});
    return rep;
  }
  Dgl L = neisendorfer_model(S, max_degree + 2);
  for (int k = 1; k <= max_degree; ++k) {
    QuasiIsoEntry e;
    e.degree = k;
    e.dim_H = L.exact_homology(k).dim;
    for (std::size_t g = 0; g < A.size(); ++g)
      if (A.degree(g) == k + 1) ++e.dim_Z;
    rep.ok = rep.ok && e.dim_H == e.dim_Z;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace dglie
