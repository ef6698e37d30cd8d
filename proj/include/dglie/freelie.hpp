#pragma once

// Free graded Lie algebra L(V) realised inside the tensor algebra T(V).
//
// Elements are finite linear combinations of words over a fixed generator
// set. The bracket is the graded commutator, so every sign lives in one
// place. Bases of L^n(V)_d use standard bracketings of Lyndon words plus the
// squares [b(w), b(w)] of odd Lyndon words; each basis element has a distinct
// lexicographically smallest word (its lead), which makes coordinates a
// triangular back-substitution.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dglie/error.hpp"
#include "dglie/linalg.hpp"

namespace dglie {

struct Generator {
  std::string name;
  int degree = 0;
  friend bool operator==(const Generator&, const Generator&) = default;
};

class GeneratorSet {
 public:
  static constexpr std::size_t kMaxGenerators = 31;

  GeneratorSet() = default;
  explicit GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
    if (gens_.size() > kMaxGenerators)
      throw WindowError("at most " + std::to_string(kMaxGenerators) + " generators are supported");
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].degree < 0) throw InputError("generator '" + gens_[i].name + "' has negative degree");
      if (!index_.emplace(gens_[i].name, i).second)
        throw InputError("duplicate generator '" + gens_[i].name + "'");
    }
  }

  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_.at(i); }
  const std::vector<Generator>& all() const { return gens_; }
  int degree(std::size_t i) const { return gens_[i].degree; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int min_degree() const {
    int m = 0;
    bool first = true;
    for (const auto& g : gens_) {
      if (first || g.degree < m) m = g.degree;
      first = false;
    }
    return m;
  }

  int max_degree() const {
    int m = 0;
    for (const auto& g : gens_) m = std::max(m, g.degree);
    return m;
  }

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) { return a.gens_ == b.gens_; }

 private:
  std::vector<Generator> gens_;
  std::map<std::string, std::size_t> index_;
};

/// A word packed five bits per letter, first letter most significant, so
/// that numeric order on equal lengths is lexicographic order.
struct Word {
  static constexpr unsigned kBits = 5;
  static constexpr std::size_t kMaxLength = 12;

  std::uint64_t code = 0;
  std::uint8_t length = 0;

  static Word letter(std::size_t g) { return Word{g, 1}; }

  static Word from_letters(const std::vector<std::size_t>& letters) {
    if (letters.size() > kMaxLength)
      throw WindowError("words longer than " + std::to_string(kMaxLength) + " are not supported");
    Word w;
    for (auto l : letters) {
      w.code = (w.code << kBits) | l;
      ++w.length;
    }
    return w;
  }

  std::size_t at(std::size_t i) const {
    return static_cast<std::size_t>((code >> (kBits * (length - 1 - i))) & ((1u << kBits) - 1));
  }

  std::vector<std::size_t> letters() const {
    std::vector<std::size_t> out(length);
    for (std::size_t i = 0; i < length; ++i) out[i] = at(i);
    return out;
  }

  Word operator+(const Word& rhs) const {
    if (length + rhs.length > kMaxLength)
      throw WindowError("words longer than " + std::to_string(kMaxLength) + " are not supported");
    return Word{(code << (kBits * rhs.length)) | rhs.code,
                static_cast<std::uint8_t>(length + rhs.length)};
  }

  /// Letters [from, from+count).
  Word slice(std::size_t from, std::size_t count) const {
    const std::uint64_t shifted = code >> (kBits * (length - from - count));
    const std::uint64_t mask = count == 0 ? 0 : ((std::uint64_t{1} << (kBits * count)) - 1);
    return Word{shifted & mask, static_cast<std::uint8_t>(count)};
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (a.length != b.length) return a.length <=> b.length;
    return a.code <=> b.code;
  }
};

/// Finite linear combination of words: an element of T(V).
class Tensor {
 public:
  using Terms = std::map<Word, Scalar>;

  Tensor() = default;
  explicit Tensor(const Word& w, Scalar c = 1) {
    if (c != 0) terms_.emplace(w, std::move(c));
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add(const Word& w, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const Tensor& t, const Scalar& c = 1) {
    if (c == 0) return;
    for (const auto& [w, x] : t.terms_) add(w, c * x);
  }

  Tensor& operator+=(const Tensor& t) {
    add(t, 1);
    return *this;
  }
  Tensor& operator-=(const Tensor& t) {
    add(t, -1);
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Scalar& c, Tensor t) {
    if (c == 0) return Tensor{};
    for (auto& [w, x] : t.terms_) x *= c;
    return t;
  }
  Tensor operator-() const { return Scalar(-1) * *this; }

  /// Drop words longer than max_length.
  Tensor truncated(std::size_t max_length) const {
    Tensor out;
    for (const auto& [w, x] : terms_)
      if (w.length <= max_length) out.terms_.emplace(w, x);
    return out;
  }

  /// Component of word length n.
  Tensor length_component(std::size_t n) const {
    Tensor out;
    for (const auto& [w, x] : terms_)
      if (w.length == n) out.terms_.emplace(w, x);
    return out;
  }

  std::vector<std::size_t> lengths() const {
    std::vector<std::size_t> out;
    for (const auto& [w, x] : terms_)
      if (out.empty() || out.back() != w.length) out.push_back(w.length);
    return out;
  }

  std::size_t min_length() const { return terms_.empty() ? 0 : terms_.begin()->first.length; }
  std::size_t max_length() const { return terms_.empty() ? 0 : terms_.rbegin()->first.length; }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Terms terms_;
};

/// A Tensor known to lie in L(V).
using LieElement = Tensor;

/// Bigrade of a homogeneous element.
struct Bigrade {
  std::size_t length = 0;
  int degree = 0;
  friend bool operator==(const Bigrade&, const Bigrade&) = default;
  friend auto operator<=>(const Bigrade&, const Bigrade&) = default;
};

struct LieBasis {
  std::vector<Tensor> elements;
  std::vector<Word> leads;
  std::vector<Scalar> lead_coefficients;
  std::vector<std::string> labels;  // bracket notation, e.g. "[y,x]"
  std::map<Word, std::size_t> by_lead;

  std::size_t size() const { return elements.size(); }
};

class FreeLie {
 public:
  explicit FreeLie(GeneratorSet gens) : gens_(std::move(gens)) {
    letter_degree_.reserve(gens_.size());
    for (const auto& g : gens_.all()) letter_degree_.push_back(g.degree);
  }

  FreeLie(const FreeLie&) = delete;
  FreeLie& operator=(const FreeLie&) = delete;

  const GeneratorSet& generators() const { return gens_; }

  int degree(const Word& w) const {
    int d = 0;
    for (std::size_t i = 0; i < w.length; ++i) d += letter_degree_[w.at(i)];
    return d;
  }

  bool odd(const Word& w) const { return degree(w) % 2 != 0; }

  Tensor generator(std::size_t i) const { return Tensor(Word::letter(i)); }

  Tensor generator(const std::string& name) const {
    auto i = gens_.find(name);
    if (!i) throw InputError("unknown generator '" + name + "'");
    return generator(*i);
  }

  /// Concatenation product in T(V), dropping words longer than max_length.
  Tensor multiply(const Tensor& u, const Tensor& v,
                  std::size_t max_length = Word::kMaxLength) const {
    Tensor out;
    for (const auto& [a, x] : u.terms())
      for (const auto& [b, y] : v.terms()) {
        if (a.length + b.length > max_length) continue;
        out.add(a + b, x * y);
      }
    return out;
  }

  /// Graded commutator uv - (-1)^{|u||v|} vu, bilinear over words.
  Tensor bracket(const Tensor& u, const Tensor& v,
                 std::size_t max_length = Word::kMaxLength) const {
    Tensor out;
    for (const auto& [a, x] : u.terms()) {
      const bool oa = odd(a);
      for (const auto& [b, y] : v.terms()) {
        if (a.length + b.length > max_length) continue;
        const Scalar c = x * y;
        out.add(a + b, c);
        out.add(b + a, (oa && odd(b)) ? c : Scalar(-c));
      }
    }
    return out;
  }

  /// ad_y^q(z): ad^0 = z, ad^q = [y, ad^{q-1}].
  Tensor ad_power(const Tensor& y, const Tensor& z, std::size_t q,
                  std::size_t max_length = Word::kMaxLength) const {
    Tensor t = z;
    for (std::size_t i = 0; i < q; ++i) t = bracket(y, t, max_length);
    return t;
  }

  /// Right-nested bracketing w1...wn -> [w1,[w2,...[w_{n-1},w_n]...]] on a
  /// homogeneous-length element.
  Tensor dynkin(const Tensor& w) const {
    auto ls = w.lengths();
    if (ls.size() > 1) throw InputError("dynkin: element is not homogeneous in word length");
    Tensor out;
    for (const auto& [word, c] : w.terms()) out.add(dynkin_word(word), c);
    return out;
  }

  /// Bigrade of a nonzero homogeneous element, or absent if inhomogeneous.
  std::optional<Bigrade> bigrade(const Tensor& t) const {
    std::optional<Bigrade> g;
    for (const auto& [w, c] : t.terms()) {
      Bigrade b{w.length, degree(w)};
      if (g && *g != b) return std::nullopt;
      g = b;
    }
    return g;
  }

  /// Split into homogeneous (length, degree) components.
  std::map<Bigrade, Tensor> components(const Tensor& t) const {
    std::map<Bigrade, Tensor> out;
    for (const auto& [w, c] : t.terms()) out[Bigrade{w.length, degree(w)}].add(w, c);
    return out;
  }

  /// Degrees present in t (sorted, unique).
  std::vector<int> degrees(const Tensor& t) const {
    std::vector<int> out;
    for (const auto& [w, c] : t.terms()) out.push_back(degree(w));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// All words of length n and degree d in lexicographic order.
  std::vector<Word> words(std::size_t n, int d) const {
    std::vector<Word> out;
    if (n > Word::kMaxLength) throw WindowError("word length above the supported maximum");
    std::vector<std::size_t> buf;
    enumerate_words(n, d, buf, out);
    return out;
  }

  static bool is_lyndon(const Word& w) {
    const std::size_t n = w.length;
    if (n == 0) return false;
    for (std::size_t k = 1; k < n; ++k) {
      Word rot = w.slice(k, n - k) + w.slice(0, k);
      if (!(w < rot)) return false;
    }
    return true;
  }

  /// Standard bracketing of a Lyndon word, expanded in T(V).
  Tensor standard_bracketing(const Word& w) const {
    std::lock_guard lock(mutex_);
    return standard_bracketing_locked(w);
  }

  /// For the lead word of a basis element, the leads (u, v) with
  /// element = [b(u), b(v)]; squares [b(w), b(w)] give (w, w).
  std::pair<Word, Word> bracket_factors(const Word& lead) const {
    if (is_lyndon(lead)) return standard_factorization(lead);
    const Word half = lead.slice(0, lead.length / 2);
    if (lead.length % 2 != 0 || half + half != lead || !is_lyndon(half) || !odd(half))
      throw InputError("word is not the lead of a Lie basis element");
    return {half, half};
  }

  std::string standard_label(const Word& w) const {
    if (w.length == 1) return gens_[w.at(0)].name;
    auto [u, v] = standard_factorization(w);
    return "[" + standard_label(u) + "," + standard_label(v) + "]";
  }

  /// Basis of L^n(V)_d. Cached; safe to call concurrently.
  const LieBasis& lie_basis(std::size_t n, int d) const {
    if (n == 0) throw InputError("lie_basis: length must be at least 1");
    std::lock_guard lock(mutex_);
    auto key = Bigrade{n, d};
    auto it = basis_cache_.find(key);
    if (it != basis_cache_.end()) return *it->second;
    auto basis = std::make_unique<LieBasis>(build_basis(n, d));
    auto& ref = *basis;
    basis_cache_.emplace(key, std::move(basis));
    return ref;
  }

  /// Basis of L^n(V)_d as the reduced echelon span of the right-nested
  /// bracketings of all words, in coordinates over words(n, d).
  Subspace dynkin_image(std::size_t n, int d) const {
    auto ws = words(n, d);
    std::map<Word, std::size_t> pos;
    for (std::size_t i = 0; i < ws.size(); ++i) pos.emplace(ws[i], i);
    std::vector<SparseVector> images;
    images.reserve(ws.size());
    for (const auto& w : ws) images.push_back(word_coordinates(dynkin_word(w), pos));
    return Subspace::span(ws.size(), images);
  }

  /// The lie_basis elements written in coordinates over words(n, d).
  Subspace lie_basis_span(std::size_t n, int d) const {
    auto ws = words(n, d);
    std::map<Word, std::size_t> pos;
    for (std::size_t i = 0; i < ws.size(); ++i) pos.emplace(ws[i], i);
    std::vector<SparseVector> vs;
    for (const auto& e : lie_basis(n, d).elements) vs.push_back(word_coordinates(e, pos));
    return Subspace::span(ws.size(), vs);
  }

  /// Coordinates of a homogeneous element of L^n(V)_d in lie_basis(n, d).
  /// Throws if the element is not in L(V).
  SparseVector coordinates(const Tensor& t, std::size_t n, int d) const {
    const LieBasis& basis = lie_basis(n, d);
    SparseVector coords;
    Tensor rest = t;
    while (!rest.is_zero()) {
      const auto& [w, c] = *rest.terms().begin();
      if (w.length != n || degree(w) != d)
        throw InputError("coordinates: element is not homogeneous of the requested bigrade");
      auto it = basis.by_lead.find(w);
      if (it == basis.by_lead.end())
        throw ValidationError("element is not in the free Lie algebra (unmatched word)");
      const std::size_t i = it->second;
      const Scalar k = c / basis.lead_coefficients[i];
      axpy(coords, k, SparseVector{{i, Scalar(1)}});
      rest.add(basis.elements[i], -k);
    }
    return coords;
  }

  /// True iff every homogeneous component lies in L(V).
  bool is_lie(const Tensor& t) const {
    try {
      for (const auto& [g, comp] : components(t)) (void)coordinates(comp, g.length, g.degree);
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  }

  Tensor from_coordinates(const SparseVector& coords, std::size_t n, int d) const {
    const LieBasis& basis = lie_basis(n, d);
    Tensor t;
    for (const auto& [i, c] : coords) t.add(basis.elements.at(i), c);
    return t;
  }

  /// Render a Lie element in bracket notation over the Lyndon basis.
  std::string format(const Tensor& t) const {
    if (t.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [g, comp] : components(t)) {
      const auto& basis = lie_basis(g.length, g.degree);
      for (const auto& [i, c] : coordinates(comp, g.length, g.degree)) {
        Scalar a = c;
        if (a < 0) {
          out += first ? "-" : " - ";
          a = -a;
        } else if (!first) {
          out += " + ";
        }
        if (a != 1) out += a.get_str() + "*";
        out += basis.labels[i];
        first = false;
      }
    }
    return out;
  }

  /// Raw word expansion, e.g. "xy - yx".
  std::string format_words(const Tensor& t) const {
    if (t.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : t.terms()) {
      Scalar a = c;
      if (a < 0) {
        out += first ? "-" : " - ";
        a = -a;
      } else if (!first) {
        out += " + ";
      }
      if (a != 1) out += a.get_str() + "*";
      for (std::size_t i = 0; i < w.length; ++i) {
        if (i) out += ".";
        out += gens_[w.at(i)].name;
      }
      first = false;
    }
    return out;
  }

 private:
  Tensor dynkin_word(const Word& w) const {
    Tensor t(Word::letter(w.at(w.length - 1)));
    for (std::size_t i = w.length - 1; i-- > 0;) t = bracket(Tensor(Word::letter(w.at(i))), t);
    return t;
  }

  static SparseVector word_coordinates(const Tensor& t, const std::map<Word, std::size_t>& pos) {
    SparseVector v;
    for (const auto& [w, c] : t.terms()) v.emplace(pos.at(w), c);
    return v;
  }

  void enumerate_words(std::size_t n, int d, std::vector<std::size_t>& buf,
                       std::vector<Word>& out) const {
    if (n == 0) {
      if (d == 0) out.push_back(Word::from_letters(buf));
      return;
    }
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      const int rest = d - letter_degree_[g];
      if (rest < 0) continue;
      buf.push_back(g);
      enumerate_words(n - 1, rest, buf, out);
      buf.pop_back();
    }
  }

  static std::pair<Word, Word> standard_factorization(const Word& w) {
    for (std::size_t k = 1; k < w.length; ++k) {
      Word v = w.slice(k, w.length - k);
      if (is_lyndon(v)) return {w.slice(0, k), v};
    }
    throw InvariantError("standard factorization requested for a single letter");
  }

  Tensor standard_bracketing_locked(const Word& w) const {
    auto it = bracketing_cache_.find(w);
    if (it != bracketing_cache_.end()) return it->second;
    Tensor t;
    if (w.length == 1) {
      t = Tensor(w);
    } else {
      auto [u, v] = standard_factorization(w);
      t = bracket(standard_bracketing_locked(u), standard_bracketing_locked(v));
    }
    bracketing_cache_.emplace(w, t);
    return t;
  }

  LieBasis build_basis(std::size_t n, int d) const {
    LieBasis b;
    std::vector<std::pair<Word, std::pair<Tensor, std::string>>> items;
    for (const auto& w : words(n, d)) {
      if (!is_lyndon(w)) continue;
      items.push_back({w, {standard_bracketing_locked(w), standard_label(w)}});
    }
    // Squares of odd Lyndon words.
    if (n % 2 == 0 && d % 2 == 0 && (d / 2) % 2 != 0) {
      for (const auto& w : words(n / 2, d / 2)) {
        if (!is_lyndon(w)) continue;
        Tensor bw = standard_bracketing_locked(w);
        std::string lw = standard_label(w);
        items.push_back({w + w, {bracket(bw, bw), "[" + lw + "," + lw + "]"}});
      }
    }
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [lead, payload] : items) {
      auto& [t, label] = payload;
      check_invariant(!t.is_zero() && t.terms().begin()->first == lead,
                      "Lyndon bracketing does not have its word as smallest term");
      b.by_lead.emplace(lead, b.elements.size());
      b.leads.push_back(lead);
      b.lead_coefficients.push_back(t.terms().begin()->second);
      b.elements.push_back(std::move(t));
      b.labels.push_back(std::move(label));
    }
    return b;
  }

  GeneratorSet gens_;
  std::vector<int> letter_degree_;
  mutable std::mutex mutex_;
  mutable std::map<Word, Tensor> bracketing_cache_;
  mutable std::map<Bigrade, std::unique_ptr<LieBasis>> basis_cache_;
};

}  // namespace dglie
