#pragma once

// Nilpotency of L_0, vanishing of the series G_p^n = [L_0, G_p^{n-1}], and
// pronilpotency of finite graded Lie algebras given by bracket tables.

#include <optional>
#include <string>
#include <vector>

#include "dglie/error.hpp"
#include "dglie/lie_table.hpp"
#include "dglie/linalg.hpp"

namespace dglie {

enum class Outcome { Holds, Fails, Undetermined };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds";
    case Outcome::Fails: return "fails";
    case Outcome::Undetermined: return "undetermined-within-bound";
  }
  return "?";
}

/// A nonzero bracket [left, right] = value that stays inside a stagnant
/// series term.
struct BracketWitness {
  SparseVector left;
  SparseVector right;
  SparseVector value;
};

struct Verdict {
  Outcome outcome = Outcome::Undetermined;
  std::string condition;
  std::optional<std::size_t> vanishing_index;  // first n with series term 0
  std::optional<std::size_t> nilpotency_class;
  std::optional<BracketWitness> witness;
  std::vector<std::size_t> dims;  // dims of the series terms 1, 2, ...
  std::size_t bound = 0;
  std::string note;
};

struct Lemma1Report {
  Verdict a;
  std::vector<Verdict> b;  // one per p = 1 .. max_degree
  Outcome combined = Outcome::Undetermined;
  std::string summary;
};

namespace detail {

inline std::vector<SparseVector> bracket_span(const FiniteLieData& L, const std::vector<SparseVector>& left,
                                              const std::vector<SparseVector>& right) {
  Echelon ech;
  for (const auto& a : left)
    for (const auto& b : right) ech.insert(L.bracket(a, b));
  return ech.reduced_basis();
}

inline std::vector<SparseVector> units(const std::vector<std::size_t>& idx) {
  std::vector<SparseVector> out;
  for (auto i : idx) out.push_back(unit_vector(i));
  return out;
}

/// Iterate S_{n+1} = [acting, S_n] from S_1 = start. S_{n+1} is always
/// contained in S_n, so equal dims mean the series is constant from there.
inline Verdict iterate_series(const FiniteLieData& L, const std::vector<SparseVector>& acting,
                              std::vector<SparseVector> start, std::size_t bound, std::string condition) {
  Verdict v;
  v.condition = std::move(condition);
  v.bound = bound;
  std::vector<SparseVector> cur = Subspace::span(L.dim(), start).basis();
  v.dims.push_back(cur.size());
  for (std::size_t n = 1;; ++n) {
    if (cur.empty()) {
      v.outcome = Outcome::Holds;
      v.vanishing_index = n;
      return v;
    }
    if (n >= bound) {
      v.note = "series still nonzero at the bound";
      return v;
    }
    std::vector<SparseVector> next = bracket_span(L, acting, cur);
    check_invariant(Subspace::span(L.dim(), cur).contains(Subspace::span(L.dim(), next)),
                    "series term not contained in its predecessor");
    v.dims.push_back(next.size());
    if (next.size() == cur.size()) {
      v.outcome = Outcome::Fails;
      for (const auto& a : acting)
        for (const auto& b : cur) {
          SparseVector val = L.bracket(a, b);
          if (!val.empty()) {
            v.witness = BracketWitness{a, b, val};
            break;
          }
        }
      check_invariant(v.witness.has_value(), "stagnant nonzero series without a nonzero bracket");
      v.note = "series is constant and nonzero from term " + std::to_string(n);
      return v;
    }
    cur = std::move(next);
  }
}

}  // namespace detail

/// Lower central series of L_0. Nilpotency class c means L_0^{c+1} = 0.
inline Verdict nilpotency_of_degree_zero(const FiniteLieData& L, std::size_t bound = 64) {
  L.validate();
  auto l0 = detail::units(L.basis_in_degree(0));
  Verdict v = detail::iterate_series(L, l0, l0, bound, "(a) L_0 nilpotent");
  if (v.outcome == Outcome::Holds) v.nilpotency_class = *v.vanishing_index - 1;
  if (!L.complete(0)) {
    if (v.outcome == Outcome::Fails && L.quotient_certified(0)) {
      v.note += "; degree 0 is a certified quotient, so the failure is sound";
    } else {
      v.note += "; degree 0 of the table is only truncation-accurate";
      v.outcome = Outcome::Undetermined;
    }
  }
  return v;
}

/// G_p^1 = L_p, G_p^n = [L_0, G_p^{n-1}].
inline std::vector<SparseVector> g_series(const FiniteLieData& L, int p, std::size_t n) {
  if (n < 1) throw InputError("series index starts at 1");
  if (p < 0 || p > L.max_degree()) throw InputError("degree outside the table");
  auto l0 = detail::units(L.basis_in_degree(0));
  std::vector<SparseVector> cur = Subspace::span(L.dim(), detail::units(L.basis_in_degree(p))).basis();
  for (std::size_t k = 1; k < n && !cur.empty(); ++k) cur = detail::bracket_span(L, l0, cur);
  return cur;
}

inline Verdict g_series_vanishing(const FiniteLieData& L, int p, std::size_t bound = 64) {
  if (p < 0 || p > L.max_degree()) throw InputError("degree outside the table");
  L.validate();
  Verdict v = detail::iterate_series(L, detail::units(L.basis_in_degree(0)), detail::units(L.basis_in_degree(p)),
                                     bound, "(b) G_" + std::to_string(p) + " vanishes");
  if (!L.complete(0) || !L.complete(p)) {
    v.note += "; degrees 0 and " + std::to_string(p) + " are not both complete";
    v.outcome = Outcome::Undetermined;
  }
  return v;
}

/// Conditions (a) and (b) for every positive degree in the table.
inline Lemma1Report lemma1_audit(const FiniteLieData& L, std::size_t bound = 64) {
  Lemma1Report r;
  r.a = nilpotency_of_degree_zero(L, bound);
  bool all_hold = r.a.outcome == Outcome::Holds;
  bool any_fail = r.a.outcome == Outcome::Fails;
  for (int p = 1; p <= L.max_degree(); ++p) {
    r.b.push_back(g_series_vanishing(L, p, bound));
    all_hold = all_hold && r.b.back().outcome == Outcome::Holds;
    any_fail = any_fail || r.b.back().outcome == Outcome::Fails;
  }
  if (any_fail) {
    r.combined = Outcome::Fails;
    r.summary = r.a.outcome == Outcome::Fails ? "fails (a)" : "fails (b)";
  } else if (all_hold) {
    r.combined = Outcome::Holds;
    r.summary = L.closed() ? "pronilpotent" : "pronilpotent-evidence up to degree " + std::to_string(L.max_degree());
  } else {
    r.summary = "undetermined within the table";
  }
  return r;
}

/// Oracle: a finite-dimensional L is pronilpotent iff its lower central
/// series L^1 = L, L^{p+1} = [L, L^p] reaches 0 (the tower L/L^p stabilizes
/// at L/L^infinity, so L -> lim L/L^p is bijective iff L^infinity = 0).
inline Verdict definitional_pronilpotency(const FiniteLieData& L, std::size_t bound = 64) {
  if (!L.closed()) throw UnsupportedError("the table does not describe the whole algebra");
  for (int q = 0; q <= L.max_degree(); ++q)
    if (!L.complete(q)) throw UnsupportedError("degree " + std::to_string(q) + " of the table is incomplete");
  L.validate();
  std::vector<SparseVector> all;
  for (std::size_t i = 0; i < L.dim(); ++i) all.push_back(unit_vector(i));
  Verdict v = detail::iterate_series(L, all, all, bound, "L -> lim L/L^p bijective");
  if (v.outcome == Outcome::Holds) v.nilpotency_class = *v.vanishing_index - 1;
  return v;
}

}  // namespace dglie
