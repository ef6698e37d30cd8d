#pragma once

// Finite graded Lie algebras given by structure constants.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dglie/error.hpp"
#include "dglie/linalg.hpp"

namespace dglie {

/// Basis elements up to degree `max_degree` and the brackets among them that
/// land in degrees <= max_degree. `closed` means the algebra is zero above
/// max_degree, so the table describes all of it.
class FiniteLieData {
 public:
  FiniteLieData() = default;
  FiniteLieData(std::vector<std::string> names, std::vector<int> degrees, int max_degree, bool closed)
      : names_(std::move(names)), degrees_(std::move(degrees)), max_degree_(max_degree), closed_(closed) {
    if (names_.size() != degrees_.size()) throw InputError("names and degrees differ in length");
    for (int d : degrees_) {
      if (d < 0) throw InputError("Lie table degrees must be non-negative");
      if (d > max_degree_) throw InputError("Lie table basis element above the maximal degree");
    }
    complete_.assign(static_cast<std::size_t>(max_degree_ + 1), true);
    quotient_.assign(static_cast<std::size_t>(max_degree_ + 1), false);
  }

  std::size_t dim() const { return names_.size(); }
  int max_degree() const { return max_degree_; }
  bool closed() const { return closed_; }
  const std::vector<std::string>& names() const { return names_; }
  int degree(std::size_t i) const { return degrees_.at(i); }

  bool complete(int q) const {
    return q >= 0 && q <= max_degree_ && complete_[static_cast<std::size_t>(q)];
  }
  void set_complete(int q, bool c) {
    if (q < 0 || q > max_degree_) throw InputError("degree outside the table");
    complete_[static_cast<std::size_t>(q)] = c;
  }

  /// The degree-q part is known to be a quotient of the algebra it
  /// describes (a surjection onto it was verified). Failures of nilpotency
  /// read off a quotient are sound even when the degree is not complete.
  bool quotient_certified(int q) const {
    return complete(q) || (q >= 0 && q <= max_degree_ && quotient_[static_cast<std::size_t>(q)]);
  }
  void set_quotient_certified(int q, bool c) {
    if (q < 0 || q > max_degree_) throw InputError("degree outside the table");
    quotient_[static_cast<std::size_t>(q)] = c;
  }

  /// Span of the iterated brackets of `gens` inside degree q = 0.
  std::vector<SparseVector> generated_subalgebra(const std::vector<SparseVector>& gens) const {
    Echelon ech;
    std::vector<SparseVector> basis;
    auto add = [&](const SparseVector& v) {
      if (!ech.insert(v).residual.empty()) basis.push_back(v);
    };
    for (const auto& g : gens) add(g);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        add(bracket(basis[i], basis[j]));
        add(bracket(basis[j], basis[i]));
      }
    return basis;
  }

  std::vector<std::size_t> basis_in_degree(int q) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degrees_[i] == q) out.push_back(i);
    return out;
  }

  /// Set [e_i, e_j]; the graded-antisymmetric partner is filled in.
  void set_bracket(std::size_t i, std::size_t j, SparseVector v) {
    if (i >= dim() || j >= dim()) throw InputError("bracket index out of range");
    const int target = degrees_[i] + degrees_[j];
    for (const auto& [k, c] : v) {
      if (k >= dim()) throw InputError("bracket value index out of range");
      if (degrees_[k] != target)
        throw ValidationError("bracket [" + names_[i] + "," + names_[j] +
                              "] is not of degree " + std::to_string(target));
    }
    std::erase_if(v, [](const auto& e) { return e.second == 0; });
    SparseVector partner = v;
    scale(partner, sign(i, j) == 1 ? Scalar(-1) : Scalar(1));
    store(i, j, std::move(v));
    if (i != j) store(j, i, std::move(partner));
  }

  SparseVector bracket_basis(std::size_t i, std::size_t j) const {
    auto it = table_.find({i, j});
    return it == table_.end() ? SparseVector{} : it->second;
  }

  SparseVector bracket(const SparseVector& u, const SparseVector& v) const {
    SparseVector out;
    for (const auto& [i, a] : u)
      for (const auto& [j, b] : v) axpy(out, a * b, bracket_basis(i, j));
    return out;
  }

  /// Graded antisymmetry, degree additivity and Jacobi on all basis triples
  /// whose brackets stay inside the table. Throws ValidationError.
  void validate() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) {
        SparseVector a = bracket_basis(i, j);
        SparseVector b = bracket_basis(j, i);
        axpy(a, sign(i, j) == 1 ? Scalar(1) : Scalar(-1), b);
        // [x,y] = -(-1)^{|x||y|}[y,x]
        if (!a.empty())
          throw ValidationError("antisymmetry fails on [" + names_[i] + "," + names_[j] + "]");
      }
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) {
          if (degrees_[i] + degrees_[j] + degrees_[k] > max_degree_) continue;
          // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
          SparseVector ex = unit_vector(i), ey = unit_vector(j), ez = unit_vector(k);
          SparseVector lhs = bracket(ex, bracket(ey, ez));
          SparseVector rhs = bracket(bracket(ex, ey), ez);
          axpy(rhs, Scalar(sign(i, j)), bracket(ey, bracket(ex, ez)));
          axpy(lhs, -1, rhs);
          if (!lhs.empty())
            throw ValidationError("Jacobi identity fails on (" + names_[i] + "," + names_[j] + "," +
                                  names_[k] + ")");
        }
  }

  std::string format(const SparseVector& v) const {
    if (v.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : v) {
      Scalar a = c;
      if (a < 0) {
        out += first ? "-" : " - ";
        a = -a;
      } else if (!first) {
        out += " + ";
      }
      if (a != 1) out += a.get_str() + "*";
      out += names_[i];
      first = false;
    }
    return out;
  }

  /// (-1)^{|e_i||e_j|}
  int sign(std::size_t i, std::size_t j) const {
    return (degrees_[i] % 2 != 0 && degrees_[j] % 2 != 0) ? -1 : 1;
  }

 private:
  void store(std::size_t i, std::size_t j, SparseVector v) {
    if (v.empty())
      table_.erase({i, j});
    else
      table_[{i, j}] = std::move(v);
  }

  std::vector<std::string> names_;
  std::vector<int> degrees_;
  int max_degree_ = 0;
  bool closed_ = true;
  std::vector<bool> complete_;
  std::vector<bool> quotient_;
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> table_;
};

}  // namespace dglie
