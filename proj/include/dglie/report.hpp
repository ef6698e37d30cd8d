#pragma once

// Text and structured (JSON) renderings of computation results. Structured
// output uses insertion-ordered objects, so identical results serialize to
// identical bytes.

#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dglie/dgl.hpp"
#include "dglie/liecoalg.hpp"
#include "dglie/pronil.hpp"

namespace dglie {

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::string optional_text(const std::optional<T>& v, const std::string& none = "-") {
  return v ? std::to_string(*v) : none;
}

}  // namespace detail

inline Json to_json(const TowerReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"n", e.n}, {"dim_H", e.dim_h}, {"dim_image", detail::optional_json(e.dim_image)},
                       {"representatives", e.representatives}});
  return {{"degree", r.degree},
          {"entries", entries},
          {"stabilized_from", detail::optional_json(r.stabilized_from)},
          {"stab_suffix", r.stab_suffix}};
}

inline std::string to_text(const TowerReport& r) {
  std::ostringstream out;
  out << "degree " << r.degree << "\n";
  out << "  n  dim_H  dim_image  representatives\n";
  for (const auto& e : r.entries) {
    out << "  " << e.n << "  " << e.dim_h << "  " << detail::optional_text(e.dim_image) << "  ";
    for (std::size_t i = 0; i < e.representatives.size(); ++i) out << (i ? "; " : "") << e.representatives[i];
    out << "\n";
  }
  out << "stabilized_from " << detail::optional_text(r.stabilized_from, "none") << " (suffix " << r.stab_suffix
      << ")\n";
  return out.str();
}

inline Json to_json(const ExactHomology& h, const FreeLie& lie) {
  Json reps = Json::array();
  for (const auto& t : h.representatives) reps.push_back(lie.format(t));
  return {{"degree", h.degree}, {"dim_H", h.dim}, {"representatives", reps}};
}

inline std::string to_text(const ExactHomology& h, const FreeLie& lie) {
  std::string out = "H_" + std::to_string(h.degree) + " dim " + std::to_string(h.dim) + "\n";
  for (const auto& t : h.representatives) out += "  " + lie.format(t) + "\n";
  return out;
}

inline Json to_json(const FiniteLieData& L) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < L.dim(); ++i) basis.push_back({{"name", L.names()[i]}, {"degree", L.degree(i)}});
  Json brackets = Json::array();
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i; j < L.dim(); ++j) {
      const SparseVector v = L.bracket_basis(i, j);
      if (!v.empty())
        brackets.push_back({{"left", L.names()[i]}, {"right", L.names()[j]}, {"value", L.format(v)}});
    }
  Json complete = Json::array(), certified = Json::array();
  for (int q = 0; q <= L.max_degree(); ++q) {
    complete.push_back(L.complete(q));
    certified.push_back(L.quotient_certified(q));
  }
  return {{"max_degree", L.max_degree()}, {"closed", L.closed()},          {"basis", basis},
          {"brackets", brackets},         {"complete", complete},          {"quotient_certified", certified}};
}

inline Json to_json(const Verdict& v, const FiniteLieData& L) {
  Json w = nullptr;
  if (v.witness)
    w = {{"left", L.format(v.witness->left)}, {"right", L.format(v.witness->right)},
         {"value", L.format(v.witness->value)}};
  return {{"condition", v.condition},
          {"outcome", to_string(v.outcome)},
          {"dims", v.dims},
          {"vanishing_index", detail::optional_json(v.vanishing_index)},
          {"nilpotency_class", detail::optional_json(v.nilpotency_class)},
          {"witness", w},
          {"bound", v.bound},
          {"note", v.note}};
}

inline std::string to_text(const Verdict& v, const FiniteLieData& L) {
  std::ostringstream out;
  out << v.condition << ": " << to_string(v.outcome) << "; dims";
  for (auto d : v.dims) out << " " << d;
  if (v.nilpotency_class) out << "; class " << *v.nilpotency_class;
  if (v.witness)
    out << "; witness [" << L.format(v.witness->left) << ", " << L.format(v.witness->right)
        << "] = " << L.format(v.witness->value);
  if (!v.note.empty()) out << " (" << v.note << ")";
  out << "\n";
  return out.str();
}

inline Json to_json(const Lemma1Report& r, const FiniteLieData& L) {
  Json b = Json::array();
  for (const auto& v : r.b) b.push_back(to_json(v, L));
  return {{"summary", r.summary}, {"combined", to_string(r.combined)}, {"a", to_json(r.a, L)}, {"b", b}};
}

inline std::string to_text(const Lemma1Report& r, const FiniteLieData& L) {
  std::string out = "summary: " + r.summary + "\n" + to_text(r.a, L);
  for (const auto& v : r.b) out += to_text(v, L);
  return out;
}

inline Json to_json(const BoundaryResult& r, const FreeLie& lie) {
  return {{"sat", r.sat},
          {"witness", r.sat ? Json(lie.format(r.witness)) : Json(nullptr)},
          {"solution_space_dim", r.solution_space_dim},
          {"bound", r.bound},
          {"mode", r.truncated ? "truncated" : "exact"}};
}

inline std::string to_text(const BoundaryResult& r, const FreeLie& lie) {
  std::string out = std::string(r.truncated ? "in L/L^" : "with witness length <= ") + std::to_string(r.bound) + ": ";
  out += r.sat ? "boundary of " + lie.format(r.witness) : "not a boundary";
  return out + "\n";
}

inline Json to_json(const ObstructionCertificate& c) {
  Json lengths = Json::array();
  for (const auto& l : c.lengths)
    lengths.push_back(
        {{"length", l.length}, {"source_dim", l.source_dim}, {"rank", l.rank}, {"injective", l.injective()}});
  return {{"degree", c.degree}, {"certified", c.certified}, {"lengths", lengths}};
}

inline Json to_json(const ValidationReport& r) {
  Json issues = Json::array();
  for (const auto& i : r.issues)
    issues.push_back({{"generator", i.generator}, {"problem", i.problem}, {"length", i.length}, {"degree", i.degree}});
  return {{"ok", r.ok}, {"checked_below_length", r.checked_below_length}, {"issues", issues},
          {"soundness", r.soundness}};
}

inline Json to_json(const DualityReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"q", e.q}, {"n", e.n}, {"dim_E", e.dim_E}, {"dim_L", e.dim_L}, {"pairing_rank", e.pairing_rank}});
  return {{"ok", r.ok()},
          {"dims_match", r.dims_match},
          {"pairing_perfect", r.pairing_perfect},
          {"differentials_match", r.differentials_match},
          {"entries", entries},
          {"failures", r.failures}};
}

inline std::string to_text(const DualityReport& r) {
  std::ostringstream out;
  out << "  q  n  dim_E  dim_L  pairing_rank\n";
  for (const auto& e : r.entries)
    out << "  " << e.q << "  " << e.n << "  " << e.dim_E << "  " << e.dim_L << "  " << e.pairing_rank << "\n";
  out << "dims " << (r.dims_match ? "match" : "differ") << "; pairing "
      << (r.pairing_perfect ? "perfect" : "degenerate") << "; differentials "
      << (r.differentials_match ? "match" : "differ") << "\n";
  for (const auto& f : r.failures) out << "  " << f << "\n";
  return out.str();
}

inline Json to_json(const QuasiIsoReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back({{"degree", e.degree}, {"dim_H", e.dim_H}, {"dim_Z", e.dim_Z}});
  return {{"ok", r.ok}, {"entries", entries}};
}

inline std::string to_text(const QuasiIsoReport& r) {
  std::ostringstream out;
  out << "  degree  dim_H  dim_Z^(degree+1)\n";
  for (const auto& e : r.entries) out << "  " << e.degree << "  " << e.dim_H << "  " << e.dim_Z << "\n";
  out << (r.ok ? "quasi-isomorphism in the window\n" : "dimensions differ\n");
  return out.str();
}

}  // namespace dglie
