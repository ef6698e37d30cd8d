// Acceptance run: one PASS/FAIL line per criterion, with indented details.
// Exit status is 0 when every criterion passes or fails only for a reason
// listed in kUnattainable (a claim shown false by an independent check).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dglie/document.hpp"
#include "dglie/liecoalg.hpp"
#include "dglie/pronil.hpp"
#include "dglie/report.hpp"
#include "lie_samples.hpp"
#include "models.hpp"

using namespace dglie;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  bool unattainable = false;  // the only failure is a claim refuted by an oracle
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dgl load_dgl(const std::string& file) { return to_dgl(parse_document(slurp(fs::path(DGLIE_MODELS_DIR) / file))); }
SullivanAlgebra load_sullivan(const std::string& file) {
  return to_sullivan(parse_document(slurp(fs::path(DGLIE_MODELS_DIR) / file)));
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------------------

Check counterexample_tower_and_boundaries() {
  Check c;
  Dgl L = load_dgl("counterexample.dgl");
  const FreeLie& f = L.lie();
  TowerReport t = L.homology_tower(0, 2, 6);
  bool tower_ok = true;
  for (const auto& e : t.entries)
    tower_ok = tower_ok && e.dim_h == 1 && e.representatives.size() == 1 && e.representatives[0] == "y";
  c.require(tower_ok, "dim H((L/L^n))_0 = 1 spanned by y for n = 2..6");
  c.note("tower H_0 for n = 2..6: dims 1 with representative y: " + std::string(tower_ok ? "yes" : "no"));

  const Tensor x = L.generator("x"), y = L.generator("y"), z = L.generator("z");
  bool series_ok = true;
  for (std::size_t n = 2; n <= 6; ++n) {
    BoundaryResult r = L.boundary_solve_truncated(x, n);
    Tensor expected;
    for (std::size_t q = 0; q + 2 <= n; ++q) expected = expected + f.ad_power(y, z, q);
    series_ok = series_ok && r.sat && r.witness == expected;
  }
  c.require(series_ok, "boundary_solve returns the ad_y series witness for x in every L/L^n, n = 2..6");
  c.note("truncated witnesses equal sum_{q<=n-2} ad_y^q(z): " + std::string(series_ok ? "yes" : "no"));

  BoundaryResult exact = L.boundary_solve_exact(x, 5);
  c.require(!exact.sat, "no witness of length <= 5 in L");
  c.note("exhaustive solve in L, witness length <= 5: " + std::string(exact.sat ? "SAT" : "UNSAT"));

  ObstructionCertificate cert = L.top_length_obstruction(1, 5);
  std::string ranks;
  for (const auto& l : cert.lengths)
    ranks += " " + std::to_string(l.length) + ":" + std::to_string(l.rank) + "/" + std::to_string(l.source_dim);
  c.note("length-raising part on degree 1, rank/source per length:" + ranks);
  c.require(cert.certified, "length-raising part injective on degree 1 for lengths 1..5");
  if (!cert.certified) {
    // Independent refutation: z -> -[y,x] sends [[y,x],z] to -[[y,x],[y,x]] = 0,
    // and for length 3 the source is larger than the target.
    Tensor yx = f.bracket(y, x);
    Tensor kernel_element = f.bracket(yx, z);
    std::vector<Tensor> raising{Tensor{}, Tensor{}, Scalar(-1) * yx};
    Tensor image = apply_derivation(f, raising, kernel_element, Word::kMaxLength);
    const bool refuted = !kernel_element.is_zero() && image.is_zero() &&
                         f.lie_basis(3, 1).size() > f.lie_basis(4, 0).size();
    c.note("oracle: [[y,x],z] != 0 maps to 0; dim L_1 at length 3 = " + std::to_string(f.lie_basis(3, 1).size()) +
           " > dim L_0 at length 4 = " + std::to_string(f.lie_basis(4, 0).size()));
    c.unattainable = refuted && tower_ok && series_ok && !exact.sat;
  }
  return c;
}

Check pronilpotent_example() {
  Check c;
  Dgl L = neisendorfer_model(load_sullivan("heisenberg.sullivan"), 3);
  TowerReport t = L.homology_tower(0, 4, 8);
  std::vector<std::size_t> dims;
  for (const auto& e : t.entries) dims.push_back(e.dim_h);
  c.note("H_0 tower dims for n = 4..8: " + join(dims) + ", stabilized from " +
         (t.stabilized_from ? std::to_string(*t.stabilized_from) : "none"));
  c.require(dims == std::vector<std::size_t>(5, 3) && t.stabilized_from == 4u, "H_0 tower constant 3 on n = 4..8");
  HomologyLie h = L.stable_homology_lie(4, 7, 2);
  Lemma1Report r = lemma1_audit(h.table);
  c.note("stable table (" + h.provenance + "): dim " + std::to_string(h.table.dim()) + "; audit: " + r.summary);
  c.require(r.summary.rfind("pronilpotent-evidence", 0) == 0, "audit returns pronilpotent-evidence");
  c.require(r.a.nilpotency_class == 2u, "nilpotency class 2");
  // Oracle: the degree-0 part is the Heisenberg algebra, so the full lower
  // central series of that part has dims 3, 1, 0.
  c.require(r.a.dims == std::vector<std::size_t>({3, 1, 0}), "lower central series dims 3,1,0 in degree 0");
  return c;
}

Check counterexample_audit() {
  Check c;
  Dgl L = load_dgl("counterexample.dgl");
  HomologyLie h = L.filtered_homology_lie_degree0(3);
  const FiniteLieData& T = h.table;
  c.note("table: " + h.provenance);
  c.require(T.dim() == 2, "degree-0 table has dimension 2");
  if (T.dim() == 2) {
    const std::size_t ix = T.names()[0] == "x" ? 0 : 1, iy = 1 - ix;
    c.note("[y,x] = " + T.format(T.bracket_basis(iy, ix)));
    c.require(T.bracket_basis(iy, ix) == unit_vector(ix), "bracket [y,x] = x on classes");
  }
  Lemma1Report r = lemma1_audit(T);
  c.note("audit: " + r.summary);
  c.require(r.summary == "fails (a)" && r.a.witness.has_value(), "audit fails (a) with a witness");
  if (r.a.witness)
    c.note("witness [" + T.format(r.a.witness->left) + ", " + T.format(r.a.witness->right) +
           "] = " + T.format(r.a.witness->value));
  bool flagged = false;
  try {
    L.exact_homology(0);
  } catch (const UnsupportedError& e) {
    flagged = true;
    c.note(std::string("exact mode: ") + e.what());
  }
  c.require(flagged, "exact homology refuses generators of degree 0");
  return c;
}

Check quasi_isomorphism() {
  Check c;
  QuasiIsoReport e = quasi_iso_check(load_sullivan("e2.sullivan"), 4);
  QuasiIsoReport s = quasi_iso_check(load_sullivan("s2.sullivan"), 4);
  std::vector<std::size_t> de, ds;
  for (const auto& x : e.entries) de.push_back(x.dim_H);
  for (const auto& x : s.entries) ds.push_back(x.dim_H);
  c.note("free on e2: dims H_1..H_4 = " + join(de));
  c.note("sphere model: dims H_1..H_4 = " + join(ds));
  c.require(e.ok && de == std::vector<std::size_t>({1, 0, 0, 0}), "free on e2 matches the desuspended generators");
  c.require(s.ok && ds == std::vector<std::size_t>({1, 1, 0, 0}), "sphere model gives 1,1,0,0");
  return c;
}

// Dims of the free graded Lie algebra on letters of the given degrees, by
// peeling factors off the PBW product for the tensor algebra series.
std::vector<std::vector<long>> free_lie_dims_from_product(const std::vector<int>& letters, std::size_t N, int D) {
  std::vector<std::vector<long>> tv(N + 1, std::vector<long>(D + 1, 0)), partial = tv, k = tv;
  tv[0][0] = 1;
  partial[0][0] = 1;
  for (std::size_t q = 1; q <= N; ++q)
    for (int n = 0; n <= D; ++n)
      for (int l : letters)
        if (l >= 0 && n >= l) tv[q][n] += tv[q - 1][n - l];
  for (std::size_t q = 1; q <= N; ++q) {
    for (int n = 0; n <= D; ++n) k[q][n] = tv[q][n] - partial[q][n];
    for (int n = 0; n <= D; ++n)
      for (long rep = 0; rep < k[q][n]; ++rep) {
        if (n % 2 == 0) {
          for (std::size_t a = q; a <= N; ++a)
            for (int b = n; b <= D; ++b) partial[a][b] += partial[a - q][b - n];
        } else {
          for (std::size_t a = N; a >= q; --a)
            for (int b = D; b >= n; --b) partial[a][b] += partial[a - q][b - n];
        }
      }
  }
  return k;
}

Check duality() {
  Check c;
  DualityReport r = duality_check(load_sullivan("s2.sullivan"), 6, 3);
  std::string totals;
  for (const auto& [n, p] : r.totals) totals += " " + std::to_string(n) + ":" + std::to_string(p.first);
  c.note("dims per degree (q <= 3):" + totals);
  c.require(r.dims_match, "truncated dims agree with the free Lie algebra");
  c.require(r.pairing_perfect, "word pairing is perfect");
  c.require(r.differentials_match, "differentials match under the pairing");
  // Oracle: the free Lie algebra on the desuspended monomials of the sphere
  // model (e2^k e3^e, degree <= 7) has dims given by inverting the product
  // T(V) = prod (1 - s^q t^n)^{-k} (n even) * prod (1 + s^q t^n)^{k} (n odd).
  std::vector<int> letters;
  for (int k = 0; 2 * k <= 7; ++k)
    for (int e = 0; e <= 1; ++e)
      if (k + e > 0 && 2 * k + 3 * e <= 7) letters.push_back(2 * k + 3 * e - 1);
  const auto product_dims = free_lie_dims_from_product(letters, 3, 6);
  bool product_ok = true;
  for (const auto& e : r.entries)
    if (e.n >= 0 && e.n <= 6) product_ok = product_ok && e.q <= 3 && static_cast<long>(e.dim_E) == product_dims[e.q][e.n];
  c.require(product_ok, "dims agree with the product formula");
  c.note("product-formula dims checked for " + std::to_string(r.entries.size()) + " (length, degree) pieces");
  return c;
}

// Property suites ----------------------------------------------------------

Tensor random_bracket(const FreeLie& f, std::mt19937& rng, int leaves) {
  if (leaves == 1) return f.generator(f.generators()[rng() % f.generators().size()].name);
  const int left = 1 + static_cast<int>(rng() % static_cast<unsigned>(leaves - 1));
  return f.bracket(random_bracket(f, rng, left), random_bracket(f, rng, leaves - left));
}

bool square_zero_everywhere(const FilteredComplex& fc) {
  for (int q = fc.lo + 1; q < fc.hi; ++q)
    if (!fc.differential(q, fc.max_length + 1).compose(fc.differential(q + 1, fc.max_length + 1)).is_zero())
      return false;
  return true;
}

Check property_suites() {
  Check c;
  // d^2 = 0 on every constructed complex
  {
    std::vector<Dgl> dgls{load_dgl("counterexample.dgl"), load_dgl("acyclic.dgl"),
                          neisendorfer_model(models::heisenberg(), 3), neisendorfer_model(models::s2(), 6)};
    std::mt19937 rng(11);
    for (int i = 0; i < 40 && dgls.size() < 14; ++i) {
      auto s = samples::random_sample(rng, 4);
      if (s.table.dim() == 0) continue;
      Cdgc C = chevalley_chains(s.table, std::vector<SparseVector>(s.table.dim()), 3);
      if (C.dim() > GeneratorSet::kMaxGenerators) continue;
      dgls.push_back(quillen_L(C));
    }
    std::size_t complexes = 0;
    bool ok = true;
    for (const auto& L : dgls) {
      ok = ok && square_zero_everywhere(L.complex(-1, 3, 4));
      ok = ok && square_zero_everywhere(L.lcs_quotient_complex(4, -1, 3));
      complexes += 2;
    }
    c.require(ok, "d^2 = 0 on every constructed complex");
    c.note("d^2 = 0 on " + std::to_string(complexes) + " complexes from " + std::to_string(dgls.size()) + " dgls");
  }
  // Dynkin n*id, antisymmetry and Jacobi on random elements
  {
    FreeLie f(GeneratorSet({{"x", 0}, {"y", 0}, {"a", 1}, {"b", 2}}));
    std::mt19937 rng(2024);
    int triples = 0;
    bool ok = true;
    for (int trial = 0; trial < 80; ++trial) {
      Tensor u = random_bracket(f, rng, 1 + static_cast<int>(rng() % 3));
      Tensor v = random_bracket(f, rng, 1 + static_cast<int>(rng() % 2));
      Tensor w = random_bracket(f, rng, 1 + static_cast<int>(rng() % 2));
      if (u.is_zero() || v.is_zero() || w.is_zero()) continue;
      const int s = (f.bigrade(u)->degree * f.bigrade(v)->degree) % 2 == 0 ? 1 : -1;
      ok = ok && (f.bracket(u, v) + Scalar(s) * f.bracket(v, u)).is_zero();
      ok = ok && f.bracket(u, f.bracket(v, w)) ==
                     f.bracket(f.bracket(u, v), w) + Scalar(s) * f.bracket(v, f.bracket(u, w));
      Tensor uvw = f.bracket(u, f.bracket(v, w));
      for (const auto& [g, comp] : f.components(uvw))
        ok = ok && f.dynkin(comp) == Scalar(static_cast<long>(g.length)) * comp;
      ++triples;
    }
    for (std::size_t n = 1; n <= 5; ++n)
      for (int d = 0; d <= 6; ++d)
        for (const auto& e : f.lie_basis(n, d).elements) ok = ok && f.dynkin(e) == Scalar(static_cast<long>(n)) * e;
    c.require(ok && triples >= 50, "graded antisymmetry, Jacobi and Dynkin n*id");
    c.note("antisymmetry/Jacobi/Dynkin on " + std::to_string(triples) + " random triples and every basis element up to length 5");
  }
  // PBW: Poincare series of T(V) = free graded-commutative algebra on L(V)
  {
    const std::size_t N = 5;
    const int D = 8;
    bool ok = true;
    for (auto gens : {std::vector<Generator>{{"x", 0}, {"a", 1}, {"b", 2}},
                      std::vector<Generator>{{"a", 1}, {"b", 1}, {"c", 3}}}) {
      FreeLie f{GeneratorSet(gens)};
      std::vector<std::vector<mpz_class>> tv(N + 1, std::vector<mpz_class>(D + 1, 0)), sym = tv;
      tv[0][0] = 1;
      for (std::size_t n = 1; n <= N; ++n)
        for (int d = 0; d <= D; ++d)
          for (const auto& g : gens)
            if (d >= g.degree) tv[n][d] += tv[n - 1][d - g.degree];
      sym[0][0] = 1;
      for (std::size_t n = 1; n <= N; ++n)
        for (int d = 0; d <= D; ++d) {
          const unsigned long k = f.lie_basis(n, d).size();
          // multiply by (1 - s^n t^d)^{-k} (d even) or (1 + s^n t^d)^k (d odd)
          for (unsigned long rep = 0; rep < k; ++rep) {
            if (d % 2 == 0) {
              for (std::size_t a = n; a <= N; ++a)
                for (int b = d; b <= D; ++b) sym[a][b] += sym[a - n][b - d];
            } else {
              for (std::size_t a = N; a >= n; --a)
                for (int b = D; b >= d; --b) sym[a][b] += sym[a - n][b - d];
            }
          }
        }
      ok = ok && tv == sym;
    }
    c.require(ok, "PBW Euler product up to length 5, degree 8");
    c.note("PBW Euler product matches up to (5, 8) for two generator sets");
  }
  // Lie coalgebra axioms on every constructed coalgebra
  {
    std::vector<std::pair<std::string, LieCoalgebraTrunc>> Es;
    Es.emplace_back("free on e2", LieCoalgebraTrunc(models::e2(), 3, 6));
    Es.emplace_back("sphere", LieCoalgebraTrunc(models::s2(), 3, 6));
    Es.emplace_back("free on e3", LieCoalgebraTrunc(models::sullivan({"e3"}, {3}, {}), 3, 6));
    Es.emplace_back("projective plane",
                    LieCoalgebraTrunc(models::sullivan({"e2", "e5"}, {2, 5}, {{"e5", "e2^3"}}), 3, 6));
    Es.emplace_back("Heisenberg", LieCoalgebraTrunc(models::heisenberg(), 3, 2));
    bool ok = true;
    std::string names;
    for (const auto& [name, E] : Es) {
      CoalgebraAxioms ax = E.check_axioms();
      ok = ok && ax.ok();
      names += (names.empty() ? "" : ", ") + name;
      if (!ax.ok()) c.note(name + ": " + ax.failures.front());
    }
    c.require(ok, "Lie coalgebra axioms on every coalgebra");
    c.note("Lie coalgebra axioms hold for: " + names);
  }
  // lemma1_audit agrees with the definitional oracle on random tables
  {
    std::mt19937 rng(20240607);
    int agree = 0, total = 0;
    for (int i = 0; i < 60; ++i) {
      samples::Sample s = samples::random_sample(rng, 8);
      Lemma1Report audit = lemma1_audit(s.table);
      Verdict oracle = definitional_pronilpotency(s.table);
      ++total;
      if (audit.combined == oracle.outcome) ++agree;
    }
    c.require(agree == total && total >= 50, "audit agrees with the definitional oracle");
    c.note("audit = oracle on " + std::to_string(agree) + "/" + std::to_string(total) + " random tables");
  }
  // Witt counts
  {
    FreeLie f(GeneratorSet({{"x", 0}, {"y", 0}}));
    std::vector<std::size_t> w;
    for (std::size_t n = 1; n <= 5; ++n) w.push_back(f.lie_basis(n, 0).size());
    c.require(w == std::vector<std::size_t>({2, 1, 2, 3, 6}), "Witt counts 2,1,2,3,6");
    c.note("Witt counts for two degree-0 generators: " + join(w));
  }
  return c;
}

Check cli_contract() {
  Check c;
  std::size_t files = 0;
  bool round_trip = true;
  for (const auto& entry : fs::directory_iterator(DGLIE_MODELS_DIR)) {
    const std::string text = slurp(entry.path());
    const InputDocument doc = parse_document(text);
    round_trip = round_trip && print_document(doc) == text && parse_document(print_document(doc)) == doc;
    ++files;
  }
  c.require(round_trip && files > 0, "parse/print identity on every shipped file");
  c.note("round trip on " + std::to_string(files) + " shipped files");

  const fs::path dir = fs::temp_directory_path() / "dglie_acceptance";
  fs::create_directories(dir);
  const std::string models = DGLIE_MODELS_DIR;
  const std::vector<std::string> runs{
      "tower " + models + "/counterexample.dgl --degrees 0..1 --tower 2..6",
      "pronil " + models + "/counterexample.dgl",
      "pronil " + models + "/affine.lie",
      "tower " + models + "/heisenberg.sullivan --max-degree 1 --degrees 0..0 --tower 4..6",
      "quasi-iso " + models + "/s2.sullivan --max-degree 4",
      "duality " + models + "/s2.sullivan --max-degree 4 --max-length 3",
      "boundary " + models + "/counterexample.dgl --target x --tower 2..5"};
  bool stable = true;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string out[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path p = dir / ("run" + std::to_string(i) + "_" + std::to_string(k) + ".json");
      const std::string cmd = std::string(DGLIE_CLI) + " " + runs[i] + " --format json --out " + p.string();
      const int status = std::system(cmd.c_str());
      c.require(status == 0, "exit status 0 for: " + runs[i]);
      out[k] = slurp(p);
    }
    stable = stable && !out[0].empty() && out[0] == out[1];
  }
  c.require(stable, "structured reports are byte-identical across runs");
  c.note("byte-identical JSON across two runs for " + std::to_string(runs.size()) + " commands");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "counterexample dgl: tower, truncated witnesses, top-length certificate", 10, counterexample_tower_and_boundaries},
      {2, "Heisenberg model: stable H_0 and pronilpotent evidence", 60, pronilpotent_example},
      {3, "counterexample dgl: degree-0 homology table fails nilpotency", 10, counterexample_audit},
      {4, "Neisendorfer model homology matches desuspended generators", 30, quasi_isomorphism},
      {5, "Lie coalgebra of the sphere model is dual to its Neisendorfer model", 120, duality},
      {6, "property suites", 600, property_suites},
      {7, "CLI round trip and deterministic structured reports", 120, cli_contract}};
  int hard_failures = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note(std::string("FAILED: exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.budget_seconds) c.require(false, "runtime " + std::to_string(secs) + " s over budget");
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (c.ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << " (" << secs << " s)";
    if (!c.ok && c.unattainable) line << " [claim refuted by an independent check; see details]";
    std::cout << line.str() << "\n";
    for (const auto& n : c.notes) std::cout << "    " << n << "\n";
    if (!c.ok && !c.unattainable) ++hard_failures;
  }
  return hard_failures == 0 ? 0 : 1;
}
