#pragma once

// Exact linear algebra over Q.
//
// Vectors are sparse maps index -> nonzero rational. Every elimination uses
// the lowest nonzero index as pivot, so echelon forms (and therefore
// Subspace bases) are canonical and independent of insertion order.
// Plain Gaussian elimination on GMP rationals; no fraction-free tricks.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dglie/error.hpp"

namespace dglie {

using Scalar = mpq_class;
using SparseVector = std::map<std::size_t, Scalar>;

inline std::string to_string(const Scalar& s) { return s.get_str(); }

/// v += c * w, dropping cancelled entries.
inline void axpy(SparseVector& v, const Scalar& c, const SparseVector& w) {
  if (c == 0) return;
  for (const auto& [i, x] : w) {
    auto [it, inserted] = v.try_emplace(i, c * x);
    if (!inserted) {
      it->second += c * x;
      if (it->second == 0) v.erase(it);
    }
  }
}

inline void scale(SparseVector& v, const Scalar& c) {
  if (c == 0) {
    v.clear();
    return;
  }
  for (auto& [i, x] : v) x *= c;
}

inline SparseVector unit_vector(std::size_t i) { return SparseVector{{i, Scalar(1)}}; }

/// Column-major sparse matrix. No stored zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    columns_.resize(cols);
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  /// Dense row-major construction, mostly for tests.
  static SparseMatrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    SparseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Scalar& v) {
    if (r >= rows_ || c >= cols_) throw InputError("matrix index out of range");
    if (v == 0)
      columns_[c].erase(r);
    else
      columns_[c][r] = v;
  }

  Scalar at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw InputError("matrix index out of range");
    auto it = columns_[c].find(r);
    return it == columns_[c].end() ? Scalar(0) : it->second;
  }

  const SparseVector& column(std::size_t c) const { return columns_.at(c); }

  void set_column(std::size_t c, SparseVector v) {
    if (c >= cols_) throw InputError("matrix column out of range");
    for (auto it = v.begin(); it != v.end();) {
      if (it->first >= rows_) throw InputError("column entry exceeds row count");
      it = it->second == 0 ? v.erase(it) : std::next(it);
    }
    columns_[c] = std::move(v);
  }

  bool is_zero() const {
    for (const auto& c : columns_)
      if (!c.empty()) return false;
    return true;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  SparseVector apply(const SparseVector& x) const {
    SparseVector y;
    for (const auto& [j, v] : x) {
      if (j >= cols_) throw InputError("vector longer than matrix column count");
      axpy(y, v, columns_[j]);
    }
    return y;
  }

  /// this * rhs
  SparseMatrix compose(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InputError("matrix product dimension mismatch");
    SparseMatrix out(rows_, rhs.cols_);
    for (std::size_t j = 0; j < rhs.cols_; ++j) out.columns_[j] = apply(rhs.columns_[j]);
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) t.columns_[i][j] = v;
    return t;
  }

  /// Keep rows [0, r) and columns [0, c).
  SparseMatrix leading_block(std::size_t r, std::size_t c) const {
    SparseMatrix out(r, c);
    for (std::size_t j = 0; j < c && j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) {
        if (i >= r) break;
        out.columns_[j].emplace(i, v);
      }
    return out;
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> columns_;
};

/// Incremental row echelon form with optional tracking of how each stored
/// row was combined from the inserted vectors.
class Echelon {
 public:
  struct Reduction {
    SparseVector residual;
    SparseVector combination;  // residual = v - sum combination[k] * input_k
  };

  std::size_t rank() const { return rows_.size(); }

  /// Reduce v against the stored rows. Tracks input combinations.
  Reduction reduce(SparseVector v) const {
    std::erase_if(v, [](const auto& e) { return e.second == 0; });
    Reduction r;
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const std::size_t key = it->first;
      const Scalar c = it->second;
      axpy(v, -c, row->second.vec);
      axpy(r.combination, c, row->second.combo);
      it = v.upper_bound(key);
    }
    r.residual = std::move(v);
    return r;
  }

  bool contains(const SparseVector& v) const { return reduce(v).residual.empty(); }

  /// Insert the vector labelled `tag`. Returns the reduction; an empty
  /// residual means v was already in the span (combination then expresses a
  /// linear relation: v_tag = sum combination[k] * v_k).
  Reduction insert(const SparseVector& v, std::optional<std::size_t> tag = std::nullopt) {
    Reduction red = reduce(v);
    if (red.residual.empty()) return red;
    SparseVector combo;
    if (tag) combo.emplace(*tag, Scalar(1));
    axpy(combo, -1, red.combination);
    const std::size_t pivot = red.residual.begin()->first;
    const Scalar inv = 1 / red.residual.begin()->second;
    SparseVector vec = red.residual;
    scale(vec, inv);
    scale(combo, inv);
    rows_.emplace(pivot, Row{std::move(vec), std::move(combo)});
    return red;
  }

  /// Canonical reduced echelon basis of the span, sorted by pivot.
  std::vector<SparseVector> reduced_basis() const {
    std::map<std::size_t, SparseVector> done;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      SparseVector v = it->second.vec;
      for (const auto& [p, w] : done) {
        auto e = v.find(p);
        if (e != v.end()) {
          const Scalar c = e->second;
          axpy(v, -c, w);
        }
      }
      done.emplace(it->first, std::move(v));
    }
    std::vector<SparseVector> out;
    out.reserve(done.size());
    for (auto& [p, v] : done) out.push_back(std::move(v));
    return out;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (const auto& [k, row] : rows_) p.push_back(k);
    return p;
  }

 private:
  struct Row {
    SparseVector vec;
    SparseVector combo;
  };
  std::map<std::size_t, Row> rows_;
};

/// Subspace of Q^ambient with a canonical reduced echelon basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<SparseVector>& vectors) {
    Echelon e;
    for (const auto& v : vectors) {
      if (!v.empty() && v.rbegin()->first >= ambient)
        throw InputError("vector exceeds ambient dimension");
      e.insert(v);
    }
    Subspace s(ambient);
    s.basis_ = e.reduced_basis();
    return s;
  }

  static Subspace whole(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.basis_.push_back(unit_vector(i));
    return s;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseVector>& basis() const { return basis_; }

  bool contains(const SparseVector& v) const {
    Echelon e;
    for (const auto& b : basis_) e.insert(b);
    return e.contains(v);
  }

  bool contains(const Subspace& other) const {
    Echelon e;
    for (const auto& b : basis_) e.insert(b);
    for (const auto& v : other.basis_)
      if (!e.contains(v)) return false;
    return true;
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<SparseVector> basis_;
};

struct ReduceResult {
  std::size_t rank = 0;
  Subspace kernel;  // inside Q^cols
  Subspace image;   // inside Q^rows
};

inline ReduceResult reduce(const SparseMatrix& m) {
  Echelon e;
  std::vector<SparseVector> kernel;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto red = e.insert(m.column(j), j);
    if (red.residual.empty()) {
      SparseVector k = unit_vector(j);
      axpy(k, -1, red.combination);
      kernel.push_back(std::move(k));
    }
  }
  ReduceResult out;
  out.rank = e.rank();
  out.kernel = Subspace::span(m.cols(), kernel);
  out.image = Subspace::span(m.rows(), e.reduced_basis());
  check_invariant(out.rank + out.kernel.dim() == m.cols(), "rank-nullity violated");
  return out;
}

inline std::size_t rank(const SparseMatrix& m) {
  Echelon e;
  for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.column(j));
  return e.rank();
}

struct AffineSolution {
  SparseVector particular;
  Subspace kernel;
};

/// Solve A x = b. Absent exactly when b is outside the column span.
inline std::optional<AffineSolution> solve_affine(const SparseMatrix& a, const SparseVector& b) {
  if (!b.empty() && b.rbegin()->first >= a.rows())
    throw InputError("right-hand side longer than the matrix row count");
  Echelon e;
  std::vector<SparseVector> kernel;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    auto red = e.insert(a.column(j), j);
    if (red.residual.empty()) {
      SparseVector k = unit_vector(j);
      axpy(k, -1, red.combination);
      kernel.push_back(std::move(k));
    }
  }
  auto red = e.reduce(b);
  if (!red.residual.empty()) return std::nullopt;
  AffineSolution s{std::move(red.combination), Subspace::span(a.cols(), kernel)};
  SparseVector bb = b;
  std::erase_if(bb, [](const auto& x) { return x.second == 0; });
  check_invariant(a.apply(s.particular) == bb, "affine particular solution does not solve");
  return s;
}

struct QuotientResult {
  std::size_t dim = 0;
  std::vector<SparseVector> representatives;  // normal forms modulo U
};

/// dim W/U with representatives of a basis of the quotient.
inline QuotientResult quotient_dims(const Subspace& w, const Subspace& u) {
  if (w.ambient() != u.ambient()) throw InputError("subspaces live in different ambient spaces");
  if (!w.contains(u)) throw InputError("quotient requires U to be contained in W");
  Echelon e;
  for (const auto& v : u.basis()) e.insert(v);
  QuotientResult q;
  for (const auto& v : w.basis()) {
    auto red = e.insert(v);
    if (!red.residual.empty()) q.representatives.push_back(std::move(red.residual));
  }
  q.dim = q.representatives.size();
  check_invariant(q.dim == w.dim() - u.dim(), "quotient dimension mismatch");
  return q;
}

struct HomologyResult {
  std::size_t dim = 0;
  std::vector<SparseVector> representatives;
  Subspace cycles;
  Subspace boundaries;
};

/// Homology of C_{q+1} --d_in--> C_q --d_out--> C_{q-1} at C_q.
/// Representatives are cycle normal forms modulo the boundaries.
inline HomologyResult homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (d_in.rows() != d_out.cols())
    throw InputError("homology_at: middle dimensions disagree (" + std::to_string(d_in.rows()) +
                     " vs " + std::to_string(d_out.cols()) + ")");
  if (!d_out.compose(d_in).is_zero()) throw ValidationError("not a complex: d_out * d_in != 0");
  HomologyResult h;
  h.cycles = reduce(d_out).kernel;
  h.boundaries = reduce(d_in).image;
  auto q = quotient_dims(h.cycles, h.boundaries);
  h.dim = q.dim;
  h.representatives = std::move(q.representatives);
  return h;
}

inline std::string format_vector(const SparseVector& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, x] : v) {
    if (!first) os << ", ";
    os << i << ":" << x.get_str();
    first = false;
  }
  return os.str();
}

}  // namespace dglie
