#pragma once

// Free graded-commutative algebras ∧Z on finitely many generators of
// positive degree, and Sullivan algebras (∧Z, d).

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dglie/error.hpp"
#include "dglie/expr.hpp"
#include "dglie/linalg.hpp"

namespace dglie {

/// Generator indices in non-decreasing order; odd generators appear at most once.
using Monomial = std::vector<std::size_t>;
using Poly = std::map<Monomial, Scalar>;

inline void add_term(Poly& p, const Monomial& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = p.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

class GcAlgebra {
 public:
  GcAlgebra() = default;
  GcAlgebra(std::vector<std::string> names, std::vector<int> degrees)
      : names_(std::move(names)), degrees_(std::move(degrees)) {
    if (names_.size() != degrees_.size()) throw InputError("names and degrees differ in length");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (degrees_[i] < 1) throw InputError("generator '" + names_[i] + "' must have positive degree");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw InputError("duplicate generator '" + names_[i] + "'");
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(std::size_t g) const { return degrees_.at(g); }
  bool odd(std::size_t g) const { return degrees_.at(g) % 2 != 0; }

  std::optional<std::size_t> find(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return i;
    return std::nullopt;
  }

  int degree(const Monomial& m) const {
    int d = 0;
    for (auto g : m) d += degrees_[g];
    return d;
  }

  /// a*b as (monomial, sign), or nullopt when an odd generator repeats.
  std::optional<std::pair<Monomial, int>> multiply(const Monomial& a, const Monomial& b) const {
    int sign = 1;
    for (auto j : b) {
      if (!odd(j)) continue;
      for (auto i : a) {
        if (!odd(i)) continue;
        if (i == j) return std::nullopt;
        if (i > j) sign = -sign;
      }
    }
    Monomial m;
    m.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
    return std::make_pair(std::move(m), sign);
  }

  Poly multiply(const Poly& p, const Poly& q) const {
    Poly out;
    for (const auto& [a, x] : p)
      for (const auto& [b, y] : q)
        if (auto r = multiply(a, b)) add_term(out, r->first, x * y * r->second);
    return out;
  }

  static Poly unit() { return Poly{{Monomial{}, Scalar(1)}}; }
  static Poly letter(std::size_t g) { return Poly{{Monomial{g}, Scalar(1)}}; }

  /// Apply the derivation of degree `deg` with generator images `images`.
  Poly derivation(const std::vector<Poly>& images, const Poly& p, int deg = 1) const {
    Poly out;
    for (const auto& [m, c] : p) {
      int prefix_degree = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        const Poly& dg = images.at(m[i]);
        if (!dg.empty()) {
          Monomial pre(m.begin(), m.begin() + static_cast<long>(i));
          Monomial suf(m.begin() + static_cast<long>(i) + 1, m.end());
          Poly t = multiply(multiply(Poly{{pre, Scalar(1)}}, dg), Poly{{suf, Scalar(1)}});
          const bool neg = (deg % 2 != 0) && (prefix_degree % 2 != 0);
          for (const auto& [mm, x] : t) add_term(out, mm, neg ? Scalar(-c * x) : Scalar(c * x));
        }
        prefix_degree += degrees_[m[i]];
      }
    }
    return out;
  }

  /// All monomials of exactly degree n (word length >= 1 when n >= 1).
  std::vector<Monomial> monomials(int n) const {
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t g, int rest) {
      if (rest == 0) {
        out.push_back(cur);
        return;
      }
      if (g == size()) return;
      const int d = degrees_[g];
      const int max_power = odd(g) ? 1 : rest / d;
      for (int k = std::min(max_power, rest / d); k >= 0; --k) {
        for (int i = 0; i < k; ++i) cur.push_back(g);
        rec(g + 1, rest - k * d);
        for (int i = 0; i < k; ++i) cur.pop_back();
      }
    };
    if (n >= 0) rec(0, n);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string format(const Monomial& m) const {
    if (m.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      if (!s.empty()) s += "*";
      s += names_[m[i]];
      if (j - i > 1) s += "^" + std::to_string(j - i);
      i = j;
    }
    return s;
  }

  std::string format(const Poly& p) const {
    if (p.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : p) {
      Scalar a = c;
      if (a < 0) {
        s += first ? "-" : " - ";
        a = -a;
      } else if (!first) {
        s += " + ";
      }
      if (m.empty())
        s += a.get_str();
      else {
        if (a != 1) s += a.get_str() + "*";
        s += format(m);
      }
      first = false;
    }
    return s;
  }

  Poly from_expr(const PolyExpr& e) const {
    Poly p;
    for (const auto& t : e.terms) {
      Poly term{{Monomial{}, t.coefficient}};
      for (const auto& [name, power] : t.factors) {
        auto g = find(name);
        if (!g) throw InputError("unknown generator '" + name + "'");
        for (int k = 0; k < power; ++k) term = multiply(term, letter(*g));
      }
      for (const auto& [m, c] : term) add_term(p, m, c);
    }
    return p;
  }

  PolyExpr to_expr(const Poly& p) const {
    PolyExpr e;
    for (const auto& [m, c] : p) {
      PolyTerm t;
      t.coefficient = c;
      for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        t.factors.emplace_back(names_[m[i]], static_cast<int>(j - i));
        i = j;
      }
      e.terms.push_back(std::move(t));
    }
    return e;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
};

struct MinimalityReport {
  enum class Outcome { Minimal, NotMinimal, Undetermined };
  Outcome outcome = Outcome::Undetermined;
  std::vector<std::vector<std::string>> filtration;  // generators added at each stage
  std::string reason;
};

inline std::string to_string(MinimalityReport::Outcome o) {
  switch (o) {
    case MinimalityReport::Outcome::Minimal: return "minimal";
    case MinimalityReport::Outcome::NotMinimal: return "not minimal";
    case MinimalityReport::Outcome::Undetermined: return "undetermined";
  }
  return "?";
}

/// (∧Z, d) with d of degree +1.
class SullivanAlgebra {
 public:
  SullivanAlgebra() = default;
  SullivanAlgebra(GcAlgebra alg, std::vector<Poly> d,
                  std::optional<std::vector<std::vector<std::string>>> filtration = std::nullopt)
      : alg_(std::move(alg)), d_(std::move(d)), filtration_(std::move(filtration)) {
    if (d_.size() != alg_.size()) throw InputError("differential must assign an image to every generator");
    for (std::size_t g = 0; g < d_.size(); ++g)
      for (const auto& [m, c] : d_[g])
        if (alg_.degree(m) != alg_.degree(g) + 1)
          throw ValidationError("d(" + alg_.names()[g] + ") is not of degree " +
                                std::to_string(alg_.degree(g) + 1));
    for (std::size_t g = 0; g < d_.size(); ++g)
      if (!alg_.derivation(d_, d_[g]).empty())
        throw ValidationError("d(d(" + alg_.names()[g] + ")) != 0");
  }

  const GcAlgebra& algebra() const { return alg_; }
  const std::vector<Poly>& differential() const { return d_; }
  const std::optional<std::vector<std::vector<std::string>>>& filtration() const { return filtration_; }

  Poly d(const Poly& p) const { return alg_.derivation(d_, p); }

  MinimalityReport minimality_check() const {
    MinimalityReport r;
    const auto& names = alg_.names();
    for (std::size_t g = 0; g < d_.size(); ++g)
      for (const auto& [m, c] : d_[g])
        if (m.size() < 2) {
          r.outcome = MinimalityReport::Outcome::NotMinimal;
          r.reason = "d(" + names[g] + ") has a linear part";
          return r;
        }
    if (filtration_) {
      std::set<std::size_t> earlier;
      std::set<std::size_t> seen;
      for (std::size_t n = 0; n < filtration_->size(); ++n) {
        std::set<std::size_t> stage = earlier;
        for (const auto& name : (*filtration_)[n]) {
          auto g = alg_.find(name);
          if (!g) throw InputError("filtration names unknown generator '" + name + "'");
          stage.insert(*g);
          seen.insert(*g);
        }
        for (auto g : stage) {
          if (earlier.count(g)) continue;
          for (const auto& [m, c] : d_[g])
            for (auto letter : m)
              if (n == 0 || !earlier.count(letter)) {
                r.outcome = MinimalityReport::Outcome::NotMinimal;
                r.reason = "d(" + names[g] + ") leaves the previous filtration stage";
                return r;
              }
        }
        earlier = std::move(stage);
      }
      if (seen.size() != alg_.size()) {
        r.reason = "the supplied filtration does not cover every generator";
        r.outcome = MinimalityReport::Outcome::NotMinimal;
        return r;
      }
      r.filtration = *filtration_;
      r.outcome = MinimalityReport::Outcome::Minimal;
      r.reason = "supplied filtration verified";
      return r;
    }
    // Canonical filtration T(0) = ker d ∩ Z, T(n) = {z : dz ∈ ∧T(n-1)}.
    // Computed exactly while every stage is spanned by generators.
    std::set<std::size_t> current;
    for (std::size_t stage = 0; current.size() < alg_.size(); ++stage) {
      std::set<std::size_t> next = current;
      std::vector<std::string> added;
      std::map<int, std::vector<std::size_t>> by_degree;
      for (std::size_t g = 0; g < alg_.size(); ++g)
        if (!current.count(g)) by_degree[alg_.degree(g)].push_back(g);
      for (const auto& [deg, gens] : by_degree) {
        // z = sum c_g g lies in T(stage) iff the part of dz involving letters
        // outside `current` (all of dz when stage = 0) vanishes
        std::map<Monomial, std::size_t> rows;
        SparseMatrix m(0, gens.size());
        std::vector<SparseVector> cols(gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j)
          for (const auto& [mono, c] : d_[gens[j]]) {
            const bool inside =
                stage > 0 && std::all_of(mono.begin(), mono.end(), [&](auto l) { return current.count(l) > 0; });
            if (inside) continue;
            auto it = rows.try_emplace(mono, rows.size()).first;
            cols[j].emplace(it->second, c);
          }
        SparseMatrix a(rows.size(), gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j) a.set_column(j, cols[j]);
        auto red = reduce(a);
        for (const auto& v : red.kernel.basis()) {
          if (v.size() != 1) {
            r.outcome = MinimalityReport::Outcome::Undetermined;
            r.reason = "canonical filtration stage " + std::to_string(stage) + " is not spanned by generators";
            return r;
          }
        }
        for (const auto& v : red.kernel.basis()) {
          next.insert(gens[v.begin()->first]);
          added.push_back(alg_.names()[gens[v.begin()->first]]);
        }
      }
      if (next.size() == current.size()) {
        r.outcome = MinimalityReport::Outcome::NotMinimal;
        r.reason = "canonical filtration stops before exhausting the generators";
        return r;
      }
      r.filtration.push_back(std::move(added));
      current = std::move(next);
    }
    r.outcome = MinimalityReport::Outcome::Minimal;
    r.reason = "canonical filtration exhausts the generators";
    return r;
  }

 private:
  GcAlgebra alg_;
  std::vector<Poly> d_;
  std::optional<std::vector<std::vector<std::string>>> filtration_;
};

}  // namespace dglie
