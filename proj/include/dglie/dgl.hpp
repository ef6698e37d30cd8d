#pragma once

// Differential graded Lie algebras (L(V), d) with L(V) free on finitely many
// generators of degree >= 0.
//
// The completion tower is indexed by word length: L/L^n keeps words of
// length < n. For a free Lie algebra the lower central series term L^p is
// exactly the span of brackets of length >= p, so the word-length tower and
// the lower-central-series tower coincide. Since every component of d(g) has
// length >= 1, d never lowers word length and each L^n is a d-ideal; the
// differential matrices below are block lower-triangular in length.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dglie/error.hpp"
#include "dglie/expr.hpp"
#include "dglie/freelie.hpp"
#include "dglie/lie_table.hpp"
#include "dglie/linalg.hpp"

namespace dglie {

struct Truncation {
  std::size_t n_max = 6;  // L/L^{n_max} is retained: word length <= n_max - 1
  int d_max = 4;
  int q_lo = 0;
  int q_hi = 1;
};

/// Apply the derivation of T(V) determined by `images` (one per generator)
/// to u, dropping words longer than max_length.
inline Tensor apply_derivation(const FreeLie& lie, const std::vector<Tensor>& images, const Tensor& u,
                               std::size_t max_length) {
  Tensor out;
  for (const auto& [w, c] : u.terms()) {
    int prefix_degree = 0;
    for (std::size_t i = 0; i < w.length; ++i) {
      const std::size_t g = w.at(i);
      const Tensor& dg = images[g];
      if (!dg.is_zero()) {
        const Word prefix = w.slice(0, i);
        const Word suffix = w.slice(i + 1, w.length - i - 1);
        const Scalar sign = prefix_degree % 2 == 0 ? Scalar(c) : Scalar(-c);
        for (const auto& [m, x] : dg.terms()) {
          if (static_cast<std::size_t>(w.length - 1 + m.length) > max_length) continue;
          out.add(prefix + m + suffix, sign * x);
        }
      }
      prefix_degree += lie.generators().degree(g);
    }
  }
  return out;
}

struct ValidationIssue {
  std::string generator;
  std::string problem;
  std::size_t length = 0;
  int degree = 0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
  std::size_t checked_below_length = 0;  // d^2 = 0 verified in L/L^n for this n
  std::vector<std::string> soundness;    // statements that are exact under this truncation
};

/// One finite-dimensional slice of the filtered complex: degrees [lo, hi],
/// word lengths 1..max_length, basis ordered by (length, Lyndon order).
class FilteredComplex {
 public:
  int lo = 0;
  int hi = 0;
  std::size_t max_length = 0;

  /// Number of basis elements of degree q with length < n.
  std::size_t dim(int q, std::size_t n) const {
    if (q < lo || q > hi) return 0;
    const auto& starts = length_start_.at(q);
    const std::size_t cap = std::min(n, max_length + 1);
    return cap == 0 ? 0 : starts[cap - 1];
  }
  std::size_t dim(int q) const { return dim(q, max_length + 1); }

  /// d : (L/L^n)_q -> (L/L^n)_{q-1}
  SparseMatrix differential(int q, std::size_t n) const {
    const std::size_t cols = dim(q, n), rows = dim(q - 1, n);
    if (cols == 0 || rows == 0) return SparseMatrix(rows, cols);
    return differentials_.at(q).leading_block(rows, cols);
  }

  HomologyResult homology(int q, std::size_t n) const {
    return homology_at(differential(q + 1, n), differential(q, n));
  }

  /// Basis element index -> (length, local index in lie_basis(length, q)).
  std::pair<std::size_t, std::size_t> locate(int q, std::size_t index) const {
    const auto& starts = length_start_.at(q);
    std::size_t len = 1;
    while (starts[len] <= index) ++len;
    return {len, index - starts[len - 1]};
  }

  std::size_t offset(int q, std::size_t length) const { return length_start_.at(q)[length - 1]; }

  std::map<int, std::vector<std::size_t>> length_start_;  // starts[l-1] = first index of length l
  std::map<int, SparseMatrix> differentials_;             // d_q: C_q -> C_{q-1}
};

struct TowerEntry {
  std::size_t n = 0;
  std::size_t dim_h = 0;
  std::optional<std::size_t> dim_image;  // image of H((L/L^{n+1}))_q -> H((L/L^n))_q
  std::vector<std::string> representatives;
};

struct TowerReport {
  int degree = 0;
  std::vector<TowerEntry> entries;
  std::optional<std::size_t> stabilized_from;
  std::size_t stab_suffix = 3;
};

struct ExactHomology {
  int degree = 0;
  std::size_t dim = 0;
  std::vector<Tensor> representatives;
};

struct LcsLayer {
  std::size_t p = 1;
  std::size_t n_max = 0;
  std::map<int, std::vector<Tensor>> basis;  // degree -> basis of (L^p / L^{n_max})_q
};

struct BoundaryResult {
  bool sat = false;
  Tensor witness;
  std::size_t solution_space_dim = 0;  // dimension of the kernel direction
  std::size_t bound = 0;               // truncation n, or maximal witness length
  bool truncated = true;               // solved in L/L^n (true) or in L (false)
};

struct LengthInjectivity {
  std::size_t length = 0;
  std::size_t source_dim = 0;
  std::size_t rank = 0;
  bool injective() const { return rank == source_dim; }
};

struct ObstructionCertificate {
  int degree = 0;
  std::vector<LengthInjectivity> lengths;
  bool certified = false;  // length-raising part injective on every listed length
};

struct CompletionCheck {
  bool verified = true;
  std::vector<std::size_t> checked;
  std::optional<std::size_t> failed_at;
};

/// Homology Lie algebra data with the truncation it was computed from.
struct HomologyLie {
  FiniteLieData table;
  std::vector<Tensor> representatives;  // one per table basis element
  std::string provenance;
};

class Dgl {
 public:
  Dgl(GeneratorSet gens, std::vector<Tensor> differential)
      : lie_(std::make_shared<FreeLie>(std::move(gens))), d_(std::move(differential)) {
    if (d_.size() != lie_->generators().size())
      throw InputError("differential must assign an image to every generator");
    for (std::size_t g = 0; g < d_.size(); ++g) {
      for (const auto& [w, c] : d_[g].terms())
        if (w.length == 0) throw ValidationError("d(" + name(g) + ") has a constant term");
      max_d_length_ = std::max(max_d_length_, d_[g].max_length());
    }
  }

  /// Differential given as bracket expressions; unlisted generators are cycles.
  static Dgl from_expressions(const GeneratorSet& gens,
                              const std::vector<std::pair<std::string, BracketExpr>>& d) {
    FreeLie scratch(gens);
    std::vector<Tensor> images(gens.size());
    for (const auto& [g, e] : d) {
      auto i = gens.find(g);
      if (!i) throw InputError("differential assigned to unknown generator '" + g + "'");
      images[*i] = eval_bracket_expr(scratch, e);
    }
    return Dgl(gens, std::move(images));
  }

  const FreeLie& lie() const { return *lie_; }
  const GeneratorSet& generators() const { return lie_->generators(); }
  const std::vector<Tensor>& differential() const { return d_; }
  const Tensor& d(std::size_t g) const { return d_.at(g); }
  std::size_t max_differential_length() const { return std::max<std::size_t>(max_d_length_, 1); }
  std::string name(std::size_t g) const { return generators()[g].name; }

  Tensor generator(const std::string& n) const { return lie_->generator(n); }

  /// d[a,b] = [da,b] + (-1)^{|a|}[a,db], extended linearly; words longer
  /// than max_length are dropped.
  Tensor apply(const Tensor& u, std::size_t max_length = Word::kMaxLength) const {
    return apply_derivation(*lie_, d_, u, max_length);
  }

  /// True when every d(g) has components of lengths 1 and 2 only.
  bool is_quadratic() const {
    for (const auto& t : d_)
      for (const auto& [w, c] : t.terms())
        if (w.length > 2) return false;
    return true;
  }

  ValidationReport validate(const Truncation& t) const {
    if (t.n_max < 2) throw InputError("truncation n_max must be at least 2");
    ValidationReport r;
    r.checked_below_length = t.n_max;
    const std::size_t keep = t.n_max - 1;
    for (std::size_t g = 0; g < d_.size(); ++g) {
      const int want = generators().degree(g) - 1;
      for (const auto& [bg, comp] : lie_->components(d_[g])) {
        if (bg.degree != want)
          r.issues.push_back({name(g), "d does not lower degree by one", bg.length, bg.degree});
        else if (!lie_->is_lie(comp))
          r.issues.push_back({name(g), "d(" + name(g) + ") is not a Lie element", bg.length, bg.degree});
      }
    }
    if (r.issues.empty()) {
      for (std::size_t g = 0; g < d_.size(); ++g) {
        Tensor dd = apply(d_[g].truncated(keep), keep);
        for (const auto& [bg, comp] : lie_->components(dd))
          r.issues.push_back({name(g), "d(d(" + name(g) + ")) != 0", bg.length, bg.degree});
      }
    }
    r.ok = r.issues.empty();
    r.soundness.push_back("H((L/L^n))_q is exact for every 2 <= n <= " + std::to_string(t.n_max));
    if (generators().min_degree() >= 1)
      r.soundness.push_back("all generators have degree >= 1: H(L)_q = H((L/L^n))_q for n > q");
    else
      r.soundness.push_back(
          "degree-0 generators present: untruncated statements need a top-length certificate");
    return r;
  }

  /// Filtered complex on degrees [lo, hi] with lengths <= max_length.
  FilteredComplex complex(int lo, int hi, std::size_t max_length) const {
    if (max_length > Word::kMaxLength) throw WindowError("word length above the supported maximum");
    FilteredComplex fc;
    fc.lo = lo;
    fc.hi = hi;
    fc.max_length = max_length;
    for (int q = lo; q <= hi; ++q) {
      std::vector<std::size_t> starts{0};
      for (std::size_t l = 1; l <= max_length; ++l)
        starts.push_back(starts.back() + (q < 0 ? 0 : lie_->lie_basis(l, q).size()));
      fc.length_start_[q] = std::move(starts);
    }
    for (int q = lo + 1; q <= hi; ++q) {
      SparseMatrix m(fc.dim(q - 1), fc.dim(q));
      if (q >= 0 && q - 1 >= 0) {
        for (std::size_t l = 1; l <= max_length; ++l) {
          const auto& basis = lie_->lie_basis(l, q);
          for (std::size_t i = 0; i < basis.size(); ++i) {
            Tensor db = apply(basis.elements[i], max_length);
            SparseVector col;
            for (const auto& [bg, comp] : lie_->components(db)) {
              check_invariant(bg.degree == q - 1, "differential does not have degree -1");
              check_invariant(bg.length >= l, "differential lowers word length");
              const std::size_t off = fc.offset(q - 1, bg.length);
              for (const auto& [k, c] : lie_->coordinates(comp, bg.length, bg.degree))
                col.emplace(off + k, c);
            }
            m.set_column(fc.offset(q, l) + i, std::move(col));
          }
        }
      }
      fc.differentials_.emplace(q, std::move(m));
    }
    for (int q = lo + 2; q <= hi; ++q)
      check_invariant(fc.differentials_.at(q - 1).compose(fc.differentials_.at(q)).is_zero(),
                      "d^2 != 0 on the truncated complex");
    return fc;
  }

  /// Chain complex of L/L^n on degrees q_lo-1 .. q_hi+1.
  FilteredComplex lcs_quotient_complex(std::size_t n, int q_lo, int q_hi) const {
    if (n < 1) throw InputError("n must be at least 1");
    return complex(q_lo - 1, q_hi + 1, n - 1);
  }

  /// Lie element of the filtered complex basis element `index` in degree q.
  Tensor basis_element(const FilteredComplex& fc, int q, std::size_t index) const {
    auto [len, local] = fc.locate(q, index);
    return lie_->lie_basis(len, q).elements.at(local);
  }

  Tensor to_element(const FilteredComplex& fc, int q, const SparseVector& v) const {
    Tensor t;
    for (const auto& [i, c] : v) t.add(basis_element(fc, q, i), c);
    return t;
  }

  SparseVector to_coordinates(const FilteredComplex& fc, int q, const Tensor& t) const {
    SparseVector v;
    for (const auto& [bg, comp] : lie_->components(t)) {
      if (bg.degree != q) throw InputError("element is not homogeneous of degree " + std::to_string(q));
      if (bg.length > fc.max_length) throw WindowError("element longer than the truncation");
      for (const auto& [k, c] : lie_->coordinates(comp, bg.length, bg.degree))
        v.emplace(fc.offset(q, bg.length) + k, c);
    }
    return v;
  }

  TowerReport homology_tower(int q, std::size_t n_lo, std::size_t n_hi, std::size_t stab_suffix = 3) const {
    if (n_lo < 1 || n_hi < n_lo) throw InputError("tower range must satisfy 1 <= lo <= hi");
    if (stab_suffix < 1) throw InputError("stabilization suffix must be positive");
    TowerReport rep;
    rep.degree = q;
    rep.stab_suffix = stab_suffix;
    FilteredComplex fc = complex(q - 1, q + 1, n_hi - 1);
    std::map<std::size_t, HomologyResult> hs;
    for (std::size_t n = n_lo; n <= n_hi; ++n) hs.emplace(n, fc.homology(q, n));
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
      const auto& h = hs.at(n);
      TowerEntry e;
      e.n = n;
      e.dim_h = h.dim;
      for (const auto& r : h.representatives) e.representatives.push_back(lie_->format(to_element(fc, q, r)));
      if (n < n_hi) {
        e.dim_image = image_dim(fc, q, h, hs.at(n + 1));
        check_invariant(*e.dim_image <= e.dim_h, "tower image larger than homology");
      }
      rep.entries.push_back(std::move(e));
    }
    // Smallest n0 such that [n0, n_hi] has >= stab_suffix entries with
    // constant dim and constant (defined) image dims.
    const auto& es = rep.entries;
    if (es.size() >= stab_suffix) {
      std::size_t start = es.size() - 1;
      auto same = [&](std::size_t i) {
        if (es[i].dim_h != es.back().dim_h) return false;
        if (es[i].dim_image && es[i + 1].dim_image && *es[i].dim_image != *es[i + 1].dim_image) return false;
        return true;
      };
      while (start > 0 && same(start - 1)) --start;
      if (es.size() - start >= stab_suffix) rep.stabilized_from = es[start].n;
    }
    return rep;
  }

  /// dim of the image of H((L/L^m))_q -> H((L/L^n))_q for m >= n. For fixed
  /// n these images decrease as m grows (the Mittag-Leffler images).
  std::size_t tower_image_dim(int q, std::size_t n, std::size_t m) const {
    if (n < 1 || m < n) throw InputError("need 1 <= n <= m");
    FilteredComplex fc = complex(q - 1, q + 1, m - 1);
    return image_dim(fc, q, fc.homology(q, n), fc.homology(q, m));
  }

  /// Exact H(L)_q; requires every generator to have degree >= 1 so that L_q
  /// only contains words of length <= q.
  ExactHomology exact_homology(int q) const {
    if (generators().size() > 0 && generators().min_degree() < 1)
      throw UnsupportedError(
          "exact homology needs all generators in degree >= 1; use the completion tower instead");
    ExactHomology out;
    out.degree = q;
    if (q < 1) return out;
    const std::size_t full = static_cast<std::size_t>(q) + 1;
    FilteredComplex fc = complex(q - 1, q + 1, full);
    HomologyResult h = fc.homology(q, full + 1);
    out.dim = h.dim;
    for (const auto& r : h.representatives) out.representatives.push_back(to_element(fc, q, r));
    // L and its completion agree degreewise: the truncation at n = q + 1 already sees everything.
    for (std::size_t n = static_cast<std::size_t>(q) + 1; n <= full + 1; ++n)
      check_invariant(fc.homology(q, n).dim == h.dim, "H(L)_q differs from H((L/L^n))_q for n > q");
    return out;
  }

  LcsLayer lcs_basis(std::size_t p, const Truncation& t) const {
    if (p < 1 || p > t.n_max) throw InputError("lcs index must satisfy 1 <= p <= n_max");
    LcsLayer layer;
    layer.p = p;
    layer.n_max = t.n_max;
    for (int q = 0; q <= t.d_max; ++q) {
      auto& b = layer.basis[q];
      for (std::size_t l = p; l < t.n_max; ++l)
        for (const auto& e : lie_->lie_basis(l, q).elements) b.push_back(e);
    }
    return layer;
  }

  /// Solve du = target in L/L^n.
  BoundaryResult boundary_solve_truncated(const Tensor& target, std::size_t n) const {
    if (n < 2) throw InputError("boundary_solve needs n >= 2");
    const int q = homogeneous_degree(target);
    const std::size_t keep = n - 1;
    Tensor tgt = target.truncated(keep);
    if (!apply(tgt, keep).is_zero()) throw InputError("target is not a cycle in L/L^n");
    FilteredComplex fc = complex(q, q + 1, keep);
    BoundaryResult r;
    r.bound = n;
    r.truncated = true;
    auto s = solve_affine(fc.differential(q + 1, n), to_coordinates(fc, q, tgt));
    if (!s) return r;
    r.sat = true;
    r.witness = to_element(fc, q + 1, s->particular);
    r.solution_space_dim = s->kernel.dim();
    check_invariant(apply(r.witness, keep) == tgt, "boundary witness does not verify");
    return r;
  }

  /// Search for u in L of word length <= max_length with du = target exactly.
  BoundaryResult boundary_solve_exact(const Tensor& target, std::size_t max_length) const {
    const int q = homogeneous_degree(target);
    if (!apply(target).is_zero()) throw InputError("target is not a cycle");
    const std::size_t reach = max_length + max_differential_length() - 1;
    if (target.max_length() > reach) {
      BoundaryResult r;
      r.bound = max_length;
      r.truncated = false;
      return r;
    }
    FilteredComplex fc = complex(q, q + 1, reach);
    SparseMatrix d = fc.differential(q + 1, reach + 1);
    // restrict the source to lengths <= max_length
    SparseMatrix src(d.rows(), fc.dim(q + 1, max_length + 1));
    for (std::size_t j = 0; j < src.cols(); ++j) src.set_column(j, d.column(j));
    BoundaryResult r;
    r.bound = max_length;
    r.truncated = false;
    auto s = solve_affine(src, to_coordinates(fc, q, target));
    if (!s) return r;
    r.sat = true;
    r.witness = to_element(fc, q + 1, s->particular);
    r.solution_space_dim = s->kernel.dim();
    check_invariant(apply(r.witness) == target, "boundary witness does not verify");
    return r;
  }

  /// Injectivity of the length-raising (quadratic) part of d on L_q of each
  /// word length in [1, max_length].
  ObstructionCertificate top_length_obstruction(int q, std::size_t max_length) const {
    if (!is_quadratic())
      throw UnsupportedError("top-length analysis needs d with linear and quadratic parts only");
    std::vector<Tensor> raising(d_.size());
    for (std::size_t g = 0; g < d_.size(); ++g) raising[g] = d_[g].length_component(2);
    ObstructionCertificate cert;
    cert.degree = q;
    cert.certified = true;
    for (std::size_t l = 1; l <= max_length; ++l) {
      LengthInjectivity li;
      li.length = l;
      if (q >= 0) {
        const auto& basis = lie_->lie_basis(l, q);
        li.source_dim = basis.size();
        SparseMatrix m(q >= 1 ? lie_->lie_basis(l + 1, q - 1).size() : 0, basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
          Tensor img = apply_derivation(*lie_, raising, basis.elements[i], l + 1);
          if (!img.is_zero()) m.set_column(i, lie_->coordinates(img, l + 1, q - 1));
        }
        li.rank = dglie::rank(m);
      }
      cert.certified = cert.certified && li.injective();
      cert.lengths.push_back(li);
    }
    return cert;
  }

  /// Check that d(sum_k series(k)) = target holds in L/L^n for n = 2..N.
  CompletionCheck completion_boundary_check(const std::function<Tensor(std::size_t)>& series,
                                            const Tensor& target, std::size_t N) const {
    std::vector<Tensor> terms;
    std::size_t last_min = 0;
    bool have_last = false;
    for (std::size_t k = 0; k < N; ++k) {
      Tensor t = series(k);
      if (!t.is_zero()) {
        if (have_last && t.min_length() <= last_min)
          throw InputError("series is not length-escalating at term " + std::to_string(k));
        last_min = t.min_length();
        have_last = true;
      }
      terms.push_back(std::move(t));
    }
    CompletionCheck out;
    for (std::size_t n = 2; n <= N; ++n) {
      const std::size_t keep = n - 1;
      Tensor partial;
      for (const auto& t : terms) partial += t.truncated(keep);
      out.checked.push_back(n);
      if (apply(partial, keep) != target.truncated(keep)) {
        out.verified = false;
        out.failed_at = n;
        break;
      }
    }
    return out;
  }

  /// Bracket table of H((L/L^n))_q for degrees 0..max_degree. Brackets are
  /// computed on cycle representatives inside L/L^n.
  HomologyLie truncated_homology_lie(std::size_t n, int max_degree) const {
    if (n < 2) throw InputError("n must be at least 2");
    const std::size_t keep = n - 1;
    FilteredComplex fc = complex(-1, max_degree + 1, keep);
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<Tensor> reps;
    std::map<int, std::pair<Echelon, std::size_t>> reducers;  // degree -> (echelon, boundary count)
    std::map<int, std::vector<std::size_t>> class_index;
    for (int q = 0; q <= max_degree; ++q) {
      HomologyResult h = fc.homology(q, n);
      auto& [ech, nb] = reducers[q];
      nb = h.boundaries.dim();
      std::size_t tag = 0;
      for (const auto& b : h.boundaries.basis()) ech.insert(b, tag++);
      for (const auto& r : h.representatives) {
        ech.insert(r, tag++);
        class_index[q].push_back(names.size());
        names.push_back("h" + std::to_string(q) + "_" + std::to_string(class_index[q].size() - 1));
        degrees.push_back(q);
        reps.push_back(to_element(fc, q, r));
      }
    }
    FiniteLieData table(names, degrees, max_degree, false);
    for (int q = 0; q <= max_degree; ++q) table.set_complete(q, false);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j) {
        const int q = degrees[i] + degrees[j];
        if (q > max_degree) continue;
        Tensor br = lie_->bracket(reps[i], reps[j], keep);
        auto& [ech, nb] = reducers.at(q);
        auto red = ech.reduce(to_coordinates(fc, q, br));
        check_invariant(red.residual.empty(), "bracket of cycles is not a cycle");
        SparseVector v;
        for (const auto& [tag, c] : red.combination)
          if (tag >= nb) v.emplace(class_index.at(q).at(tag - nb), c);
        table.set_bracket(i, j, std::move(v));
      }
    HomologyLie out{std::move(table), std::move(reps),
                    "H((L/L^" + std::to_string(n) + ")) in degrees 0.." + std::to_string(max_degree)};
    return out;
  }

  /// Bracket table of the image of H((L/L^m)) -> H((L/L^n)) in degrees
  /// 0..max_degree (a Lie subalgebra, being the image of a morphism). This is
  /// the Mittag-Leffler part of the tower as seen from L/L^n. Degree q is
  /// marked complete when the image already has the same dimension from
  /// L/L^{m-1}; that is stabilization evidence, not a proof.
  HomologyLie stable_homology_lie(std::size_t n, std::size_t m, int max_degree) const {
    if (n < 2 || m < n + 1) throw InputError("need 2 <= n < m");
    const std::size_t keep = n - 1;
    FilteredComplex fc = complex(-1, max_degree + 1, m - 1);
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<Tensor> reps;
    std::map<int, std::pair<Echelon, std::size_t>> reducers;
    std::map<int, std::vector<std::size_t>> class_index;
    std::map<int, bool> settled;
    for (int q = 0; q <= max_degree; ++q) {
      HomologyResult low = fc.homology(q, n);
      const std::size_t ambient = low.cycles.ambient();
      auto& [ech, nb] = reducers[q];
      nb = low.boundaries.dim();
      std::size_t tag = 0;
      for (const auto& b : low.boundaries.basis()) ech.insert(b, tag++);
      const HomologyResult high = fc.homology(q, m);
      for (const auto& z : high.cycles.basis()) {
        SparseVector proj;
        for (const auto& [i, c] : z)
          if (i < ambient) proj.emplace(i, c);
        if (ech.insert(proj, tag).residual.empty()) continue;
        ++tag;
        class_index[q].push_back(names.size());
        names.push_back("h" + std::to_string(q) + "_" + std::to_string(class_index[q].size() - 1));
        degrees.push_back(q);
        reps.push_back(to_element(fc, q, proj));
      }
      settled[q] = class_index[q].size() == image_dim(fc, q, low, fc.homology(q, m - 1));
    }
    FiniteLieData table(names, degrees, max_degree, false);
    for (int q = 0; q <= max_degree; ++q) table.set_complete(q, settled[q]);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j) {
        const int q = degrees[i] + degrees[j];
        if (q > max_degree) continue;
        Tensor br = lie_->bracket(reps[i], reps[j], keep);
        auto& [ech, nb] = reducers.at(q);
        auto red = ech.reduce(to_coordinates(fc, q, br));
        check_invariant(red.residual.empty(), "bracket of stable classes left the stable image");
        SparseVector v;
        for (const auto& [tag, c] : red.combination)
          if (tag >= nb) v.emplace(class_index.at(q).at(tag - nb), c);
        table.set_bracket(i, j, std::move(v));
      }
    return HomologyLie{std::move(table), std::move(reps),
                       "image of H((L/L^" + std::to_string(m) + ")) in H((L/L^" + std::to_string(n) +
                           ")), degrees 0.." + std::to_string(max_degree)};
  }

  /// Degree-0 part of H(L) computed in L itself: classes of elements of
  /// length <= m modulo boundaries d(u) with u of length <= 2m - 1. Exact
  /// (up to witnesses of top length above 2m - 1) when the length-raising
  /// part of d is injective on L_1 for lengths 1 .. 2m - 1; the table is
  /// marked complete only then, and only if classes of length <= m already
  /// exhaust length <= 2m.
  HomologyLie filtered_homology_lie_degree0(std::size_t m) const {
    if (m < 1) throw InputError("m must be at least 1");
    const std::size_t big = 2 * m;
    ObstructionCertificate cert = top_length_obstruction(1, big - 1);
    FilteredComplex fc = complex(0, 1, big);
    SparseMatrix d = fc.differential(1, big + 1);
    // boundaries of witnesses with length <= big - 1; their images have length <= big
    Echelon ech;
    std::size_t tag = 0;
    for (std::size_t j = 0; j < fc.dim(1, big); ++j) ech.insert(d.column(j), tag++);
    const std::size_t nb = tag;
    std::vector<Tensor> reps;
    std::vector<std::string> names;
    std::map<std::size_t, std::size_t> tag_to_class;
    for (std::size_t i = 0; i < fc.dim(0, m + 1); ++i, ++tag) {
      auto red = ech.insert(unit_vector(i), tag);
      if (red.residual.empty()) continue;
      tag_to_class.emplace(tag, reps.size());
      reps.push_back(basis_element(fc, 0, i));
      names.push_back(lie_->format(reps.back()));
    }
    Echelon all = ech;
    for (std::size_t i = fc.dim(0, m + 1); i < fc.dim(0); ++i) all.insert(unit_vector(i));
    const bool exhausted = all.rank() == ech.rank();

    FiniteLieData table(names, std::vector<int>(names.size(), 0), 0, false);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j) {
        Tensor br = lie_->bracket(reps[i], reps[j]);
        auto red = ech.reduce(to_coordinates(fc, 0, br));
        if (!red.residual.empty())
          throw WindowError("bracket of low-length classes leaves the computed filtration");
        SparseVector v;
        for (const auto& [t, c] : red.combination) {
          if (t < nb) continue;
          auto it = tag_to_class.find(t);
          if (it == tag_to_class.end()) throw InvariantError("unexpected tag in class reduction");
          axpy(v, c, unit_vector(it->second));
        }
        table.set_bracket(i, j, std::move(v));
      }
    table.set_complete(0, cert.certified && exhausted);
    // Send degree-0 generators to their classes and the rest to 0. When this
    // is a dgl map onto the table, H(L)_0 surjects onto the table.
    std::vector<SparseVector> images(generators().size());
    for (std::size_t g = 0; g < images.size(); ++g) {
      if (generators().degree(g) != 0) continue;
      auto red = ech.reduce(to_coordinates(fc, 0, lie_->generator(g)));
      check_invariant(red.residual.empty(), "generator class not found");
      for (const auto& [t, c] : red.combination)
        if (t >= nb) axpy(images[g], c, unit_vector(tag_to_class.at(t)));
    }
    const bool surjects = is_morphism_to(table, images) &&
                          table.generated_subalgebra(images).size() == table.dim();
    table.set_quotient_certified(0, surjects);
    std::string how = cert.certified ? " (top-length certificate holds)" : " (no top-length certificate)";
    if (surjects) how += "; H(L)_0 surjects onto this table";
    return HomologyLie{std::move(table), std::move(reps),
                       "H(L)_0 from lengths <= " + std::to_string(m) + " modulo boundaries of witnesses of length <= " +
                           std::to_string(big - 1) + how};
  }

  /// Image of a Lie element under the Lie morphism L -> table fixed by
  /// generator images.
  SparseVector evaluate_in(const FiniteLieData& table, const std::vector<SparseVector>& images,
                           const Tensor& t) const {
    if (images.size() != generators().size()) throw InputError("one image per generator required");
    std::map<Word, SparseVector> memo;
    std::function<SparseVector(const Word&)> value = [&](const Word& w) -> SparseVector {
      if (w.length == 1) return images[w.at(0)];
      auto it = memo.find(w);
      if (it != memo.end()) return it->second;
      auto [u, v] = lie_->bracket_factors(w);
      SparseVector r = table.bracket(value(u), value(v));
      memo.emplace(w, r);
      return r;
    };
    SparseVector out;
    for (const auto& [bg, comp] : lie_->components(t)) {
      const auto& basis = lie_->lie_basis(bg.length, bg.degree);
      for (const auto& [i, c] : lie_->coordinates(comp, bg.length, bg.degree))
        axpy(out, c, value(basis.leads[i]));
    }
    return out;
  }

  /// True when generator images respect degrees and d maps to zero, i.e. the
  /// assignment is a dgl map into the table with zero differential.
  bool is_morphism_to(const FiniteLieData& table, const std::vector<SparseVector>& images) const {
    for (std::size_t g = 0; g < images.size(); ++g)
      for (const auto& [k, c] : images[g])
        if (table.degree(k) != generators().degree(g)) return false;
    for (std::size_t g = 0; g < images.size(); ++g)
      if (!evaluate_in(table, images, d_[g]).empty()) return false;
    return true;
  }

 private:
  static std::size_t image_dim(const FilteredComplex&, int, const HomologyResult& low,
                               const HomologyResult& high) {
    const std::size_t keep = low.cycles.ambient();
    Echelon ech;
    for (const auto& b : low.boundaries.basis()) ech.insert(b);
    const std::size_t base = ech.rank();
    for (const auto& z : high.cycles.basis()) {
      SparseVector proj;
      for (const auto& [i, c] : z)
        if (i < keep) proj.emplace(i, c);
      ech.insert(proj);
    }
    return ech.rank() - base;
  }

  int homogeneous_degree(const Tensor& t) const {
    auto ds = lie_->degrees(t);
    if (ds.size() > 1) throw InputError("target is not homogeneous in degree");
    if (ds.empty()) throw InputError("target is zero; pass a degree explicitly");
    return ds.front();
  }

  std::shared_ptr<const FreeLie> lie_;
  std::vector<Tensor> d_;
  std::size_t max_d_length_ = 0;
};

/// Mark degree q of a truncated homology table complete when its tower
/// stabilized no later than the truncation n the table was built at.
inline void mark_stabilized(HomologyLie& h, const std::vector<TowerReport>& towers, std::size_t n) {
  for (const auto& t : towers) {
    if (t.degree < 0 || t.degree > h.table.max_degree()) continue;
    h.table.set_complete(t.degree, t.stabilized_from && *t.stabilized_from <= n &&
                                       n <= t.entries.back().n);
  }
}

}  // namespace dglie
