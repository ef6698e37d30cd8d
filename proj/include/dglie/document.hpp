#pragma once

// Line-oriented input documents:
//
//   # leading comment lines are kept
//   kind: dgl | sullivan | coalgebra | lie-table
//   window: 4                 (options, kind dependent)
//   [generators]
//   x : 0
//   [differential]
//   d z = x - [y,x]
//   [diagonal]                (coalgebra)
//   D c4 = c2|c2
//   [brackets]                (lie-table)
//   [Y,X] = X
//   [filtration]              (sullivan, optional; one stage per line)
//   x, y
//
// Blank lines and later comment lines are ignored.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dglie/coalgebra.hpp"
#include "dglie/dgl.hpp"
#include "dglie/expr.hpp"
#include "dglie/gcalg.hpp"
#include "dglie/lie_table.hpp"

namespace dglie {

enum class DocumentKind { Dgl, Sullivan, Coalgebra, LieTable };

inline std::string to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::Dgl: return "dgl";
    case DocumentKind::Sullivan: return "sullivan";
    case DocumentKind::Coalgebra: return "coalgebra";
    case DocumentKind::LieTable: return "lie-table";
  }
  return "";
}

struct LieDefinition {
  std::string name;
  BracketExpr value;
  friend bool operator==(const LieDefinition&, const LieDefinition&) = default;
};

struct PolyDefinition {
  std::string name;
  PolyExpr value;
  friend bool operator==(const PolyDefinition&, const PolyDefinition&) = default;
};

struct DiagonalDefinition {
  std::string name;
  TensorExpr value;
  friend bool operator==(const DiagonalDefinition&, const DiagonalDefinition&) = default;
};

struct BracketDefinition {
  std::string left;
  std::string right;
  PolyExpr value;  // linear in the basis names
  friend bool operator==(const BracketDefinition&, const BracketDefinition&) = default;
};

struct InputDocument {
  DocumentKind kind = DocumentKind::Dgl;
  std::vector<std::string> preamble;
  std::vector<std::pair<std::string, std::string>> options;
  std::vector<Generator> generators;
  std::vector<LieDefinition> lie_differential;    // dgl
  std::vector<PolyDefinition> poly_differential;  // sullivan, coalgebra
  std::vector<DiagonalDefinition> diagonal;       // coalgebra
  std::vector<BracketDefinition> brackets;        // lie-table
  std::vector<std::vector<std::string>> filtration;

  std::optional<std::string> option(const std::string& key) const {
    for (const auto& [k, v] : options)
      if (k == key) return v;
    return std::nullopt;
  }

  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

// 1-based column of the first whole-word occurrence of `name`, or `fallback`.
inline int column_of(const std::string& line, const std::string& name, std::size_t from, int fallback) {
  std::size_t p = line.find(name, from);
  while (p != std::string::npos) {
    const bool left_ok = p == 0 || !(std::isalnum(static_cast<unsigned char>(line[p - 1])) || line[p - 1] == '_');
    const std::size_t e = p + name.size();
    const bool right_ok =
        e >= line.size() || !(std::isalnum(static_cast<unsigned char>(line[e])) || line[e] == '_');
    if (left_ok && right_ok) return static_cast<int>(p) + 1;
    p = line.find(name, p + 1);
  }
  return fallback;
}

class DocumentParser {
 public:
  explicit DocumentParser(const std::string& text) {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      lines_.push_back(l);
    }
  }

  InputDocument parse() {
    InputDocument doc;
    std::size_t i = 0;
    for (; i < lines_.size(); ++i) {
      const std::string t = trim(lines_[i]);
      if (t.empty()) continue;
      if (t[0] != '#') break;
      doc.preamble.push_back(t);
    }
    if (i == lines_.size()) fail(ParseError::Kind::Structure, line_no(i), 1, "empty document", "'kind:'");
    {
      auto [key, value] = key_value(i);
      if (key != "kind") fail(ParseError::Kind::Structure, line_no(i), 1, "document must start with its kind", "'kind:'");
      if (value == "dgl")
        doc.kind = DocumentKind::Dgl;
      else if (value == "sullivan")
        doc.kind = DocumentKind::Sullivan;
      else if (value == "coalgebra")
        doc.kind = DocumentKind::Coalgebra;
      else if (value == "lie-table")
        doc.kind = DocumentKind::LieTable;
      else
        fail(ParseError::Kind::Syntax, line_no(i), value_column(i), "unknown kind '" + value + "'",
             "dgl, sullivan, coalgebra or lie-table");
      ++i;
    }
    std::string section;
    bool saw_generators = false;
    int generators_line = 0;
    for (; i < lines_.size(); ++i) {
      const std::string& raw = lines_[i];
      const std::string t = trim(raw);
      if (t.empty() || t[0] == '#') continue;
      if (t.front() == '[' && t.back() == ']' && t.find(',') == std::string::npos) {
        section = trim(t.substr(1, t.size() - 2));
        if (!allowed_section(doc.kind, section))
          fail(ParseError::Kind::Structure, line_no(i), indent(raw) + 1,
               "section [" + section + "] is not allowed in a " + to_string(doc.kind) + " document");
        if (!seen_sections_.insert(section).second)
          fail(ParseError::Kind::Structure, line_no(i), indent(raw) + 1, "repeated section [" + section + "]");
        if (section == "generators") {
          saw_generators = true;
          generators_line = line_no(i);
        } else if (!saw_generators) {
          fail(ParseError::Kind::Structure, line_no(i), indent(raw) + 1, "[generators] must come first");
        }
        continue;
      }
      if (section.empty()) {
        auto [key, value] = key_value(i);
        if (!allowed_option(doc.kind, key))
          fail(ParseError::Kind::Structure, line_no(i), indent(raw) + 1, "unknown option '" + key + "'");
        doc.options.emplace_back(key, value);
      } else if (section == "generators") {
        generator_line(doc, i);
      } else if (section == "differential") {
        differential_line(doc, i);
      } else if (section == "diagonal") {
        diagonal_line(doc, i);
      } else if (section == "brackets") {
        bracket_line(doc, i);
      } else if (section == "filtration") {
        filtration_line(doc, i);
      }
    }
    if (!saw_generators) fail(ParseError::Kind::Structure, line_no(lines_.size()), 1, "missing [generators] section");
    if (doc.generators.empty()) fail(ParseError::Kind::Structure, generators_line, 1, "no generators");
    return doc;
  }

 private:
  [[noreturn]] static void fail(ParseError::Kind k, int line, int col, const std::string& msg,
                                const std::string& expected = {}) {
    throw ParseError(k, line, col, msg, expected);
  }

  static int line_no(std::size_t i) { return static_cast<int>(i) + 1; }
  static int indent(const std::string& s) {
    int n = 0;
    while (n < static_cast<int>(s.size()) && std::isspace(static_cast<unsigned char>(s[n]))) ++n;
    return n;
  }

  static bool allowed_section(DocumentKind k, const std::string& s) {
    if (s == "generators") return true;
    switch (k) {
      case DocumentKind::Dgl: return s == "differential";
      case DocumentKind::Sullivan: return s == "differential" || s == "filtration";
      case DocumentKind::Coalgebra: return s == "differential" || s == "diagonal";
      case DocumentKind::LieTable: return s == "brackets";
    }
    return false;
  }

  static bool allowed_option(DocumentKind k, const std::string& key) {
    switch (k) {
      case DocumentKind::Coalgebra: return key == "window";
      case DocumentKind::LieTable: return key == "max-degree" || key == "closed";
      default: return false;
    }
  }

  std::pair<std::string, std::string> key_value(std::size_t i) {
    const std::string& raw = lines_[i];
    const auto colon = raw.find(':');
    if (colon == std::string::npos)
      fail(ParseError::Kind::Syntax, line_no(i), indent(raw) + 1, "expected 'key: value'", "':'");
    std::string key = trim(raw.substr(0, colon));
    std::string value = trim(raw.substr(colon + 1));
    if (!is_identifier_with_dash(key))
      fail(ParseError::Kind::Syntax, line_no(i), indent(raw) + 1, "malformed option name", "identifier");
    if (value.empty()) fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(colon) + 2, "missing value", "value");
    return {key, value};
  }

  int value_column(std::size_t i) const {
    const auto colon = lines_[i].find(':');
    int c = static_cast<int>(colon) + 1;
    while (c < static_cast<int>(lines_[i].size()) && std::isspace(static_cast<unsigned char>(lines_[i][c]))) ++c;
    return c + 1;
  }

  static bool is_identifier_with_dash(const std::string& s) {
    std::string t = s;
    for (char& c : t)
      if (c == '-') c = '_';
    return is_identifier(t);
  }

  std::optional<int> degree_of(const std::string& name) const {
    auto it = degrees_.find(name);
    if (it == degrees_.end()) return std::nullopt;
    return it->second;
  }

  int require_name(const std::string& name, std::size_t i, std::size_t from) const {
    auto d = degree_of(name);
    if (!d)
      fail(ParseError::Kind::UnknownName, line_no(i), column_of(lines_[i], name, from, static_cast<int>(from) + 1),
           "unknown name '" + name + "'");
    return *d;
  }

  void generator_line(InputDocument& doc, std::size_t i) {
    const std::string& raw = lines_[i];
    const auto colon = raw.find(':');
    if (colon == std::string::npos)
      fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(raw.size()) + 1, "expected 'name : degree'", "':'");
    const std::string name = trim(raw.substr(0, colon));
    if (!is_identifier(name))
      fail(ParseError::Kind::Syntax, line_no(i), indent(raw) + 1, "malformed generator name", "identifier");
    const std::string deg = trim(raw.substr(colon + 1));
    int d = 0;
    try {
      std::size_t used = 0;
      d = std::stoi(deg, &used);
      if (used != deg.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      fail(ParseError::Kind::Syntax, line_no(i), value_column(i), "malformed degree '" + deg + "'", "integer");
    }
    if (d < 0) fail(ParseError::Kind::Syntax, line_no(i), value_column(i), "negative degree", "non-negative integer");
    if (!degrees_.emplace(name, d).second)
      fail(ParseError::Kind::DuplicateName, line_no(i), indent(raw) + 1, "duplicate name '" + name + "'");
    doc.generators.push_back({name, d});
  }

  // "<prefix> name = rhs": returns (name, column of rhs)
  std::pair<std::string, std::size_t> definition_head(std::size_t i, char prefix) {
    const std::string& raw = lines_[i];
    std::size_t p = static_cast<std::size_t>(indent(raw));
    if (p >= raw.size() || raw[p] != prefix)
      fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(p) + 1, "definition must start with '" +
           std::string(1, prefix) + "'", "'" + std::string(1, prefix) + " name = ...'");
    ++p;
    const auto eq = raw.find('=', p);
    if (eq == std::string::npos)
      fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(raw.size()) + 1, "missing '='", "'='");
    const std::string name = trim(raw.substr(p, eq - p));
    if (!is_identifier(name))
      fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(p) + 2, "malformed name", "identifier");
    require_name(name, i, p);
    if (!defined_.insert(std::string(1, prefix) + name).second)
      fail(ParseError::Kind::DuplicateName, line_no(i), column_of(raw, name, p, 1),
           "'" + name + "' is defined twice");
    return {name, eq + 1};
  }

  std::optional<int> lie_degree(const BracketExpr& e, std::size_t i, std::size_t from) const {
    switch (e.kind) {
      case BracketExpr::Kind::Generator: return require_name(e.name, i, from);
      case BracketExpr::Kind::Bracket: {
        auto a = lie_degree(e.operands[0], i, from), b = lie_degree(e.operands[1], i, from);
        if (!a || !b) return std::nullopt;
        return *a + *b;
      }
      case BracketExpr::Kind::Sum: {
        std::optional<int> d;
        for (const auto& [c, t] : e.terms) {
          auto td = lie_degree(t, i, from);
          if (!td) continue;
          if (d && *d != *td)
            fail(ParseError::Kind::NonHomogeneous, line_no(i), static_cast<int>(from) + 1,
                 "expression mixes degrees " + std::to_string(*d) + " and " + std::to_string(*td));
          d = td;
        }
        return d;
      }
    }
    return std::nullopt;
  }

  void expect_degree(std::optional<int> got, int want, std::size_t i, std::size_t from) const {
    if (got && *got != want)
      fail(ParseError::Kind::NonHomogeneous, line_no(i), static_cast<int>(from) + 1,
           "expression has degree " + std::to_string(*got) + ", expected " + std::to_string(want));
  }

  std::optional<int> poly_degree(const PolyExpr& p, std::size_t i, std::size_t from) const {
    std::optional<int> d;
    for (const auto& t : p.terms) {
      if (t.factors.empty() && t.coefficient == 0) continue;
      int td = 0;
      for (const auto& [n, k] : t.factors) td += k * require_name(n, i, from);
      if (d && *d != td)
        fail(ParseError::Kind::NonHomogeneous, line_no(i), static_cast<int>(from) + 1,
             "expression mixes degrees " + std::to_string(*d) + " and " + std::to_string(td));
      d = td;
    }
    return d;
  }

  void require_linear(const PolyExpr& p, std::size_t i, std::size_t from) const {
    for (const auto& t : p.terms) {
      if (t.factors.empty() && t.coefficient == 0) continue;
      if (t.factors.size() != 1 || t.factors[0].second != 1)
        fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(from) + 1,
             "expected a linear combination of basis names");
    }
  }

  void differential_line(InputDocument& doc, std::size_t i) {
    auto [name, from] = definition_head(i, 'd');
    const std::string rhs = lines_[i].substr(from);
    const int col = static_cast<int>(from) + 1;
    const int g = *degree_of(name);
    if (doc.kind == DocumentKind::Dgl) {
      BracketExpr e = dglie::parse_bracket_expr(rhs, line_no(i), col);
      expect_degree(lie_degree(e, i, from), g - 1, i, from);
      doc.lie_differential.push_back({name, std::move(e)});
    } else {
      PolyExpr e = dglie::parse_poly_expr(rhs, line_no(i), col);
      if (doc.kind == DocumentKind::Coalgebra) require_linear(e, i, from);
      expect_degree(poly_degree(e, i, from), doc.kind == DocumentKind::Sullivan ? g + 1 : g - 1, i, from);
      doc.poly_differential.push_back({name, std::move(e)});
    }
  }

  void diagonal_line(InputDocument& doc, std::size_t i) {
    auto [name, from] = definition_head(i, 'D');
    TensorExpr e = dglie::parse_tensor_expr(lines_[i].substr(from), line_no(i), static_cast<int>(from) + 1);
    const int g = *degree_of(name);
    for (const auto& t : e.terms) {
      if (t.left.empty()) continue;
      const int d = require_name(t.left, i, from) + require_name(t.right, i, from);
      expect_degree(d, g, i, from);
    }
    doc.diagonal.push_back({name, std::move(e)});
  }

  void bracket_line(InputDocument& doc, std::size_t i) {
    const std::string& raw = lines_[i];
    const std::size_t open = static_cast<std::size_t>(indent(raw));
    const auto comma = raw.find(',', open);
    const auto close = raw.find(']', open);
    const auto eq = raw.find('=', open);
    if (raw[open] != '[' || comma == std::string::npos || close == std::string::npos || eq == std::string::npos ||
        !(comma < close && close < eq))
      fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(open) + 1, "expected '[a,b] = value'",
           "'[a,b] = value'");
    const std::string a = trim(raw.substr(open + 1, comma - open - 1));
    const std::string b = trim(raw.substr(comma + 1, close - comma - 1));
    if (!is_identifier(a) || !is_identifier(b))
      fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(open) + 2, "malformed basis name", "identifier");
    const int da = require_name(a, i, open), db = require_name(b, i, comma);
    if (!trim(raw.substr(close + 1, eq - close - 1)).empty())
      fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(close) + 2, "unexpected text", "'='");
    if (!defined_.insert("[" + a + "," + b + "]").second)
      fail(ParseError::Kind::DuplicateName, line_no(i), static_cast<int>(open) + 1,
           "bracket [" + a + "," + b + "] is defined twice");
    PolyExpr e = dglie::parse_poly_expr(raw.substr(eq + 1), line_no(i), static_cast<int>(eq) + 2);
    require_linear(e, i, eq + 1);
    expect_degree(poly_degree(e, i, eq + 1), da + db, i, eq + 1);
    doc.brackets.push_back({a, b, std::move(e)});
  }

  void filtration_line(InputDocument& doc, std::size_t i) {
    const std::string& raw = lines_[i];
    std::vector<std::string> stage;
    std::size_t p = 0;
    while (p <= raw.size()) {
      auto q = raw.find(',', p);
      if (q == std::string::npos) q = raw.size();
      const std::string name = trim(raw.substr(p, q - p));
      if (!is_identifier(name))
        fail(ParseError::Kind::Syntax, line_no(i), static_cast<int>(p) + 1, "malformed name in filtration stage",
             "identifier");
      require_name(name, i, p);
      stage.push_back(name);
      p = q + 1;
    }
    doc.filtration.push_back(std::move(stage));
  }

  std::vector<std::string> lines_;
  std::map<std::string, int> degrees_;
  std::set<std::string> seen_sections_;
  std::set<std::string> defined_;
};

}  // namespace detail

/// Parse a document; every failure is a ParseError with line and column.
inline InputDocument parse_document(const std::string& text) { return detail::DocumentParser(text).parse(); }

/// Canonical text of a document; parse_document(print_document(d)) == d.
inline std::string print_document(const InputDocument& doc) {
  std::string out;
  for (const auto& p : doc.preamble) out += p + "\n";
  out += "kind: " + to_string(doc.kind) + "\n";
  for (const auto& [k, v] : doc.options) out += k + ": " + v + "\n";
  out += "[generators]\n";
  for (const auto& g : doc.generators) out += g.name + " : " + std::to_string(g.degree) + "\n";
  if (!doc.lie_differential.empty() || !doc.poly_differential.empty()) {
    out += "[differential]\n";
    for (const auto& d : doc.lie_differential) out += "d " + d.name + " = " + to_string(d.value) + "\n";
    for (const auto& d : doc.poly_differential) out += "d " + d.name + " = " + to_string(d.value) + "\n";
  }
  if (!doc.diagonal.empty()) {
    out += "[diagonal]\n";
    for (const auto& d : doc.diagonal) out += "D " + d.name + " = " + to_string(d.value) + "\n";
  }
  if (!doc.brackets.empty()) {
    out += "[brackets]\n";
    for (const auto& b : doc.brackets) out += "[" + b.left + "," + b.right + "] = " + to_string(b.value) + "\n";
  }
  if (!doc.filtration.empty()) {
    out += "[filtration]\n";
    for (const auto& stage : doc.filtration) {
      for (std::size_t i = 0; i < stage.size(); ++i) out += (i ? ", " : "") + stage[i];
      out += "\n";
    }
  }
  return out;
}

namespace detail {

inline void require_kind(const InputDocument& doc, DocumentKind k) {
  if (doc.kind != k)
    throw InputError("expected a " + to_string(k) + " document, got " + to_string(doc.kind));
}

inline int int_option(const InputDocument& doc, const std::string& key, int fallback) {
  auto v = doc.option(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    int x = std::stoi(*v, &used);
    if (used == v->size()) return x;
  } catch (const std::exception&) {
  }
  throw InputError("option '" + key + "' must be an integer");
}

}  // namespace detail

inline Dgl to_dgl(const InputDocument& doc) {
  detail::require_kind(doc, DocumentKind::Dgl);
  std::vector<std::pair<std::string, BracketExpr>> d;
  for (const auto& def : doc.lie_differential) d.emplace_back(def.name, def.value);
  return Dgl::from_expressions(GeneratorSet(doc.generators), d);
}

inline SullivanAlgebra to_sullivan(const InputDocument& doc) {
  detail::require_kind(doc, DocumentKind::Sullivan);
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (const auto& g : doc.generators) {
    if (g.degree < 1) throw ValidationError("Sullivan generator '" + g.name + "' must have positive degree");
    names.push_back(g.name);
    degrees.push_back(g.degree);
  }
  GcAlgebra A(names, degrees);
  std::vector<Poly> images(A.size());
  for (const auto& def : doc.poly_differential) images[*A.find(def.name)] = A.from_expr(def.value);
  std::optional<std::vector<std::vector<std::string>>> filtration;
  if (!doc.filtration.empty()) filtration = doc.filtration;
  return SullivanAlgebra(A, images, filtration);
}

inline Cdgc to_coalgebra(const InputDocument& doc) {
  detail::require_kind(doc, DocumentKind::Coalgebra);
  Cdgc c;
  std::map<std::string, std::size_t> index;
  int top = 0;
  for (const auto& g : doc.generators) {
    index.emplace(g.name, c.names.size());
    c.names.push_back(g.name);
    c.degrees.push_back(g.degree);
    top = std::max(top, g.degree);
  }
  c.window = detail::int_option(doc, "window", top);
  c.delta.assign(c.dim(), {});
  c.diagonal.assign(c.dim(), {});
  for (const auto& def : doc.poly_differential)
    for (const auto& t : def.value.terms)
      if (!t.factors.empty()) axpy(c.delta[index.at(def.name)], t.coefficient, unit_vector(index.at(t.factors[0].first)));
  for (const auto& def : doc.diagonal)
    for (const auto& t : def.value.terms)
      if (!t.left.empty()) add_term(c.diagonal[index.at(def.name)], index.at(t.left), index.at(t.right), t.coefficient);
  c.check();
  return c;
}

inline FiniteLieData to_lie_table(const InputDocument& doc) {
  detail::require_kind(doc, DocumentKind::LieTable);
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::map<std::string, std::size_t> index;
  int top = 0;
  for (const auto& g : doc.generators) {
    index.emplace(g.name, names.size());
    names.push_back(g.name);
    degrees.push_back(g.degree);
    top = std::max(top, g.degree);
  }
  const int max_degree = detail::int_option(doc, "max-degree", top);
  bool closed = true;
  if (auto v = doc.option("closed")) {
    if (*v != "true" && *v != "false") throw InputError("option 'closed' must be true or false");
    closed = *v == "true";
  }
  FiniteLieData L(names, degrees, max_degree, closed);
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> given;
  for (const auto& b : doc.brackets) {
    SparseVector v;
    for (const auto& t : b.value.terms)
      if (!t.factors.empty()) axpy(v, t.coefficient, unit_vector(index.at(t.factors[0].first)));
    const std::size_t i = index.at(b.left), j = index.at(b.right);
    given[{i, j}] = v;
    L.set_bracket(i, j, v);
  }
  // both orders given: they must agree with graded antisymmetry
  for (const auto& [ij, v] : given) {
    if (L.bracket_basis(ij.first, ij.second) != v)
      throw ValidationError("brackets [" + names[ij.first] + "," + names[ij.second] + "] and [" +
                            names[ij.second] + "," + names[ij.first] + "] are not graded antisymmetric");
  }
  L.validate();
  return L;
}

/// The Lie table as a document (basis order kept; brackets with i < j, plus
/// squares of odd elements).
inline InputDocument lie_table_document(const FiniteLieData& L) {
  InputDocument doc;
  doc.kind = DocumentKind::LieTable;
  doc.options = {{"max-degree", std::to_string(L.max_degree())}, {"closed", L.closed() ? "true" : "false"}};
  for (std::size_t i = 0; i < L.dim(); ++i) doc.generators.push_back({L.names()[i], L.degree(i)});
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i; j < L.dim(); ++j) {
      const SparseVector v = L.bracket_basis(i, j);
      if (v.empty()) continue;
      PolyExpr e;
      for (const auto& [k, c] : v) e.terms.push_back({c, {{L.names()[k], 1}}});
      doc.brackets.push_back({L.names()[i], L.names()[j], std::move(e)});
    }
  return doc;
}

}  // namespace dglie
