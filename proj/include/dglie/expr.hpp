#pragma once

// Expression grammars shared by the file format and the command line.
//
//   Lie:        expr   := ['+'|'-'] term (('+'|'-') term)*
//               term   := coef ['*' atom] | atom
//               coef   := int ['/' int] | '(' int ['/' int] ')'
//               atom   := ident | '[' expr ',' expr ']' | '(' expr ')'
//   Polynomial: pterm  := coef ['*' factor ('*' factor)*] | factor ('*' factor)*
//               factor := ident ['^' int]
//   Tensor:     tterm  := [coef '*'] ident '|' ident
//
// Whitespace is insignificant. A term that is a bare coefficient is only
// allowed in Lie expressions when the coefficient is zero.

#include <cctype>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dglie/error.hpp"
#include "dglie/freelie.hpp"
#include "dglie/linalg.hpp"

namespace dglie {

/// Located parse failure. `kind` distinguishes the diagnostic classes.
struct ParseError : InputError {
  enum class Kind { Syntax, DuplicateName, UnknownName, NonHomogeneous, Structure };

  ParseError(Kind k, int line_no, int col, std::string msg, std::string exp = {})
      : InputError(format(line_no, col, msg, exp)),
        kind(k),
        line(line_no),
        column(col),
        message(std::move(msg)),
        expected(std::move(exp)) {}

  Kind kind;
  int line;
  int column;
  std::string message;
  std::string expected;

 private:
  static std::string format(int l, int c, const std::string& m, const std::string& e) {
    std::string s = "line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + m;
    if (!e.empty()) s += " (expected " + e + ")";
    return s;
  }
};

struct BracketExpr {
  enum class Kind { Generator, Bracket, Sum };

  Kind kind = Kind::Sum;
  std::string name;                                  // Generator
  std::vector<BracketExpr> operands;                 // Bracket: exactly two
  std::vector<std::pair<Scalar, BracketExpr>> terms;  // Sum

  static BracketExpr generator(std::string n) {
    BracketExpr e;
    e.kind = Kind::Generator;
    e.name = std::move(n);
    return e;
  }
  static BracketExpr bracket(BracketExpr a, BracketExpr b) {
    BracketExpr e;
    e.kind = Kind::Bracket;
    e.operands.push_back(std::move(a));
    e.operands.push_back(std::move(b));
    return e;
  }
  static BracketExpr zero() { return BracketExpr{}; }

  friend bool operator==(const BracketExpr&, const BracketExpr&) = default;
};

struct PolyTerm {
  Scalar coefficient = 1;
  std::vector<std::pair<std::string, int>> factors;  // (name, power)
  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

struct PolyExpr {
  std::vector<PolyTerm> terms;
  friend bool operator==(const PolyExpr&, const PolyExpr&) = default;
};

struct TensorTerm {
  Scalar coefficient = 1;
  std::string left;
  std::string right;
  friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
};

struct TensorExpr {
  std::vector<TensorTerm> terms;
  friend bool operator==(const TensorExpr&, const TensorExpr&) = default;
};

namespace detail {

class Cursor {
 public:
  Cursor(const std::string& text, int line, int column) : text_(text), line_(line), col0_(column) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char peek_after(char c) {
    // first significant char after the next one (which must be c)
    skip_ws();
    std::size_t p = pos_;
    if (p < text_.size() && text_[p] == c) ++p;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() ? text_[p] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("unexpected ") + describe_next(), std::string("'") + c + "'");
  }
  bool ident_next() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  bool digit_next() { return std::isdigit(static_cast<unsigned char>(peek())); }

  std::string ident() {
    if (!ident_next()) fail("unexpected " + describe_next(), "identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string integer() {
    if (!digit_next()) fail("unexpected " + describe_next(), "integer");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Scalar rational() {
    mpz_class num(integer());
    mpz_class den(1);
    if (accept('/')) {
      den = mpz_class(integer());
      if (den == 0) fail("zero denominator", "positive integer");
    }
    Scalar q(num, den);
    q.canonicalize();
    return q;
  }

  /// A coefficient: int['/'int] or '(' int['/'int] ')'.
  bool coefficient_next() {
    if (digit_next()) return true;
    return peek() == '(' && std::isdigit(static_cast<unsigned char>(peek_after('(')));
  }
  Scalar coefficient() {
    if (accept('(')) {
      Scalar q = rational();
      expect(')');
      return q;
    }
    return rational();
  }

  [[noreturn]] void fail(const std::string& msg, const std::string& expected = {}) {
    skip_ws();
    throw ParseError(ParseError::Kind::Syntax, line_, col0_ + static_cast<int>(pos_), msg, expected);
  }

  std::string describe_next() {
    if (at_end()) return "end of input";
    return std::string("'") + text_[pos_] + "'";
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
};

inline BracketExpr parse_lie_expr(Cursor& c);

inline BracketExpr parse_lie_atom(Cursor& c) {
  if (c.ident_next()) return BracketExpr::generator(c.ident());
  if (c.accept('[')) {
    BracketExpr a = parse_lie_expr(c);
    c.expect(',');
    BracketExpr b = parse_lie_expr(c);
    c.expect(']');
    return BracketExpr::bracket(std::move(a), std::move(b));
  }
  if (c.accept('(')) {
    BracketExpr e = parse_lie_expr(c);
    c.expect(')');
    return e;
  }
  c.fail("unexpected " + c.describe_next(), "identifier, '[' or '('");
}

inline BracketExpr parse_lie_expr(Cursor& c) {
  std::vector<std::pair<Scalar, BracketExpr>> terms;
  bool first = true;
  bool any = false;
  while (true) {
    Scalar sign = 1;
    if (c.accept('-'))
      sign = -1;
    else if (!c.accept('+') && !first)
      break;
    first = false;
    if (c.coefficient_next()) {
      Scalar k = c.coefficient();
      if (c.accept('*')) {
        terms.emplace_back(sign * k, parse_lie_atom(c));
      } else if (k != 0) {
        c.fail("a nonzero constant is not a Lie element", "'*'");
      }
    } else {
      terms.emplace_back(sign, parse_lie_atom(c));
    }
    any = true;
    char n = c.peek();
    if (n != '+' && n != '-') break;
  }
  if (!any) c.fail("empty expression", "term");
  if (terms.size() == 1 && terms.front().first == 1) return std::move(terms.front().second);
  BracketExpr s;
  s.kind = BracketExpr::Kind::Sum;
  s.terms = std::move(terms);
  return s;
}

inline PolyExpr parse_poly_expr(Cursor& c) {
  PolyExpr p;
  bool first = true;
  while (true) {
    Scalar sign = 1;
    if (c.accept('-'))
      sign = -1;
    else if (!c.accept('+') && !first)
      break;
    first = false;
    PolyTerm t;
    t.coefficient = sign;
    bool need_factor = true;
    if (c.coefficient_next()) {
      t.coefficient *= c.coefficient();
      need_factor = c.accept('*');
    }
    if (need_factor) {
      do {
        std::string name = c.ident();
        int power = 1;
        if (c.accept('^')) {
          power = std::stoi(c.integer());
          if (power < 1) c.fail("power must be positive", "positive integer");
        }
        t.factors.emplace_back(std::move(name), power);
      } while (c.accept('*'));
    }
    p.terms.push_back(std::move(t));
    char n = c.peek();
    if (n != '+' && n != '-') break;
  }
  return p;
}

inline TensorExpr parse_tensor_expr(Cursor& c) {
  TensorExpr e;
  bool first = true;
  while (true) {
    Scalar sign = 1;
    if (c.accept('-'))
      sign = -1;
    else if (!c.accept('+') && !first)
      break;
    first = false;
    TensorTerm t;
    t.coefficient = sign;
    if (c.coefficient_next()) {
      t.coefficient *= c.coefficient();
      if (!c.accept('*')) {
        if (t.coefficient == 0) {
          e.terms.push_back(std::move(t));
          char n = c.peek();
          if (n != '+' && n != '-') break;
          continue;
        }
        c.fail("unexpected " + c.describe_next(), "'*'");
      }
    }
    t.left = c.ident();
    c.expect('|');
    t.right = c.ident();
    e.terms.push_back(std::move(t));
    char n = c.peek();
    if (n != '+' && n != '-') break;
  }
  return e;
}

template <class F>
auto parse_whole(const std::string& text, int line, int column, F&& f) {
  Cursor c(text, line, column);
  auto r = f(c);
  if (!c.at_end()) c.fail("unexpected " + c.describe_next(), "end of expression or operator");
  return r;
}

inline std::string coef_prefix(const Scalar& k, bool first, bool has_body) {
  std::string out;
  Scalar a = k;
  if (a < 0) {
    out += first ? "-" : " - ";
    a = -a;
  } else if (!first) {
    out += " + ";
  }
  if (a != 1 || !has_body) out += a.get_str() + (has_body ? "*" : "");
  return out;
}

}  // namespace detail

inline BracketExpr parse_bracket_expr(const std::string& text, int line = 1, int column = 1) {
  return detail::parse_whole(text, line, column, [](detail::Cursor& c) { return detail::parse_lie_expr(c); });
}

inline PolyExpr parse_poly_expr(const std::string& text, int line = 1, int column = 1) {
  return detail::parse_whole(text, line, column, [](detail::Cursor& c) { return detail::parse_poly_expr(c); });
}

inline TensorExpr parse_tensor_expr(const std::string& text, int line = 1, int column = 1) {
  return detail::parse_whole(text, line, column,
                             [](detail::Cursor& c) { return detail::parse_tensor_expr(c); });
}

inline std::string to_string(const BracketExpr& e) {
  switch (e.kind) {
    case BracketExpr::Kind::Generator:
      return e.name;
    case BracketExpr::Kind::Bracket:
      return "[" + to_string(e.operands[0]) + ", " + to_string(e.operands[1]) + "]";
    case BracketExpr::Kind::Sum: {
      if (e.terms.empty()) return "0";
      std::string out;
      bool first = true;
      for (const auto& [k, t] : e.terms) {
        out += detail::coef_prefix(k, first, true);
        std::string body = to_string(t);
        out += t.kind == BracketExpr::Kind::Sum ? "(" + body + ")" : body;
        first = false;
      }
      return out;
    }
  }
  return {};
}

inline std::string to_string(const PolyExpr& p) {
  if (p.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms) {
    out += detail::coef_prefix(t.coefficient, first, !t.factors.empty());
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      if (i) out += "*";
      out += t.factors[i].first;
      if (t.factors[i].second != 1) out += "^" + std::to_string(t.factors[i].second);
    }
    first = false;
  }
  return out;
}

inline std::string to_string(const TensorExpr& e) {
  if (e.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms) {
    if (t.left.empty()) {
      out += detail::coef_prefix(t.coefficient, first, false);
    } else {
      out += detail::coef_prefix(t.coefficient, first, true);
      out += t.left + "|" + t.right;
    }
    first = false;
  }
  return out;
}

/// Names referenced by an expression, in order of appearance.
inline void collect_names(const BracketExpr& e, std::vector<std::string>& out) {
  switch (e.kind) {
    case BracketExpr::Kind::Generator:
      out.push_back(e.name);
      break;
    case BracketExpr::Kind::Bracket:
      for (const auto& o : e.operands) collect_names(o, out);
      break;
    case BracketExpr::Kind::Sum:
      for (const auto& [k, t] : e.terms) collect_names(t, out);
      break;
  }
}

/// Linear/bracket evaluation inside T(V). Unknown names raise InputError.
inline Tensor eval_bracket_expr(const FreeLie& lie, const BracketExpr& e,
                                std::size_t max_length = Word::kMaxLength) {
  switch (e.kind) {
    case BracketExpr::Kind::Generator: {
      auto i = lie.generators().find(e.name);
      if (!i) throw InputError("unknown generator '" + e.name + "'");
      return lie.generator(*i);
    }
    case BracketExpr::Kind::Bracket:
      return lie.bracket(eval_bracket_expr(lie, e.operands[0], max_length),
                         eval_bracket_expr(lie, e.operands[1], max_length), max_length);
    case BracketExpr::Kind::Sum: {
      Tensor t;
      for (const auto& [k, term] : e.terms) t.add(eval_bracket_expr(lie, term, max_length), k);
      return t;
    }
  }
  return {};
}

}  // namespace dglie
