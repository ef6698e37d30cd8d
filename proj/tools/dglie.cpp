// Command-line front end: parse an input document, run one computation,
// print a text or JSON report.
//
// Exit codes: 0 success; 2 parse, validation or unsupported input (including
// a check that ran and failed); 3 computation window too small; 4 internal
// invariant breach.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dglie/document.hpp"
#include "dglie/report.hpp"

using namespace dglie;

namespace {

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& s, const std::string& flag) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InputError(flag + " expects A..B, got '" + s + "'");
  }
}

struct RunConfig {
  std::string command;
  std::string input = "-";
  std::size_t max_length = 6;
  int max_degree = 4;
  std::string degrees = "0..1";
  std::optional<std::string> tower;
  std::size_t stab_suffix = 3;
  std::string format = "text";
  std::optional<std::string> out;
  std::optional<std::string> target;
  bool exact = false;
  std::string table = "auto";
};

struct Result {
  std::string text;
  Json json;
  bool ok = true;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dgl dgl_of(const InputDocument& doc, const RunConfig& cfg) {
  if (doc.kind == DocumentKind::Dgl) return to_dgl(doc);
  if (doc.kind == DocumentKind::Sullivan) return neisendorfer_model(to_sullivan(doc), cfg.max_degree + 2);
  throw InputError("this command needs a dgl or sullivan document");
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

Result run_validate(const InputDocument& doc, const RunConfig& cfg) {
  Result o;
  std::vector<std::string> gens;
  Json jg = Json::array();
  for (const auto& g : doc.generators) {
    gens.push_back(g.name + ":" + std::to_string(g.degree));
    jg.push_back({{"name", g.name}, {"degree", g.degree}});
  }
  o.text = to_string(doc.kind) + " with " + std::to_string(doc.generators.size()) + " generators (" +
           join(gens, ", ") + ")\n";
  o.json = {{"kind", to_string(doc.kind)}, {"generators", jg}};
  switch (doc.kind) {
    case DocumentKind::Dgl: {
      const Range d = parse_range(cfg.degrees, "--degrees");
      Truncation t{cfg.max_length, cfg.max_degree, d.lo, d.hi};
      ValidationReport r = to_dgl(doc).validate(t);
      o.ok = r.ok;
      o.json["validation"] = to_json(r);
      o.text += r.ok ? "d^2 = 0 in L/L^" + std::to_string(r.checked_below_length) + "\n" : "invalid:\n";
      for (const auto& i : r.issues) o.text += "  " + i.generator + ": " + i.problem + "\n";
      break;
    }
    case DocumentKind::Sullivan: {
      MinimalityReport m = to_sullivan(doc).minimality_check();
      o.json["minimality"] = {{"outcome", to_string(m.outcome)}, {"reason", m.reason}};
      o.text += "d^2 = 0; minimality: " + to_string(m.outcome) + (m.reason.empty() ? "" : " (" + m.reason + ")") + "\n";
      break;
    }
    case DocumentKind::Coalgebra:
      to_coalgebra(doc);
      o.text += "coalgebra axioms hold\n";
      o.json["axioms"] = true;
      break;
    case DocumentKind::LieTable: {
      FiniteLieData L = to_lie_table(doc);
      o.text += "antisymmetry and Jacobi hold; dim " + std::to_string(L.dim()) + "\n";
      o.json["table"] = to_json(L);
      break;
    }
  }
  return o;
}

Result run_tower(const InputDocument& doc, const RunConfig& cfg) {
  Dgl L = dgl_of(doc, cfg);
  const Range d = parse_range(cfg.degrees, "--degrees");
  const Range t = parse_range(cfg.tower.value_or("2.." + std::to_string(cfg.max_length)), "--tower");
  if (t.lo < 2 || t.hi < t.lo) throw InputError("--tower range must satisfy 2 <= A <= B");
  Result o;
  o.json = {{"towers", Json::array()}};
  for (int q = d.lo; q <= d.hi; ++q) {
    TowerReport r = L.homology_tower(q, static_cast<std::size_t>(t.lo), static_cast<std::size_t>(t.hi), cfg.stab_suffix);
    o.text += to_text(r);
    o.json["towers"].push_back(to_json(r));
  }
  return o;
}

Result run_homology(const InputDocument& doc, const RunConfig& cfg) {
  Dgl L = dgl_of(doc, cfg);
  const Range d = parse_range(cfg.degrees, "--degrees");
  Result o;
  o.json = {{"homology", Json::array()}};
  for (int q = d.lo; q <= d.hi; ++q) {
    ExactHomology h = L.exact_homology(q);
    o.text += to_text(h, L.lie());
    o.json["homology"].push_back(to_json(h, L.lie()));
  }
  return o;
}

Result run_pronil(const InputDocument& doc, const RunConfig& cfg) {
  Result o;
  auto audit = [&](const FiniteLieData& table, const std::string& provenance) {
    Lemma1Report r = lemma1_audit(table);
    o.text = provenance.empty() ? "" : "table: " + provenance + "\n";
    o.text += to_text(r, table);
    o.json = {{"table", to_json(table)}, {"audit", to_json(r, table)}};
    if (!provenance.empty()) o.json["provenance"] = provenance;
  };
  if (doc.kind == DocumentKind::LieTable) {
    audit(to_lie_table(doc), "");
    return o;
  }
  Dgl L = dgl_of(doc, cfg);
  std::string table = cfg.table;
  if (table == "auto") table = doc.kind == DocumentKind::Dgl ? "filtered" : "stable";
  HomologyLie h;
  if (table == "filtered") {
    h = L.filtered_homology_lie_degree0(std::max<std::size_t>(1, cfg.max_length / 2));
  } else if (table == "stable") {
    const Range t = parse_range(cfg.tower.value_or("4..7"), "--tower");
    h = L.stable_homology_lie(static_cast<std::size_t>(t.lo), static_cast<std::size_t>(t.hi), cfg.max_degree);
  } else {
    throw InputError("--table must be filtered, stable or auto");
  }
  audit(h.table, h.provenance);
  Json reps = Json::array();
  for (std::size_t i = 0; i < h.representatives.size(); ++i) {
    reps.push_back({{"class", h.table.names()[i]}, {"representative", L.lie().format(h.representatives[i])}});
    o.text += "  " + h.table.names()[i] + ": class of " + L.lie().format(h.representatives[i]) + "\n";
  }
  o.json["representatives"] = reps;
  return o;
}

Result run_neisendorfer(const InputDocument& doc, const RunConfig& cfg) {
  if (doc.kind != DocumentKind::Sullivan) throw InputError("neisendorfer needs a sullivan document");
  Dgl L = neisendorfer_model(to_sullivan(doc), cfg.max_degree + 2);
  InputDocument out;
  out.kind = DocumentKind::Dgl;
  out.preamble.push_back("# model in degrees <= " + std::to_string(cfg.max_degree + 1));
  std::vector<Json> gens, diffs;
  for (std::size_t g = 0; g < L.generators().size(); ++g) {
    out.generators.push_back(L.generators()[g]);
    gens.push_back({{"name", L.name(g)}, {"degree", L.generators().degree(g)}});
    if (L.d(g).is_zero()) continue;
    const std::string e = L.lie().format(L.d(g));
    out.lie_differential.push_back({L.name(g), parse_bracket_expr(e)});
    diffs.push_back({{"generator", L.name(g)}, {"value", e}});
  }
  Result o;
  o.text = print_document(out);
  o.json = {{"generators", gens}, {"differential", diffs}};
  return o;
}

Result run_duality(const InputDocument& doc, const RunConfig& cfg) {
  if (doc.kind != DocumentKind::Sullivan) throw InputError("duality needs a sullivan document");
  DualityReport r = duality_check(to_sullivan(doc), cfg.max_degree, cfg.max_length);
  return {to_text(r), to_json(r), r.ok()};
}

Result run_quasi_iso(const InputDocument& doc, const RunConfig& cfg) {
  if (doc.kind != DocumentKind::Sullivan) throw InputError("quasi-iso needs a sullivan document");
  QuasiIsoReport r = quasi_iso_check(to_sullivan(doc), cfg.max_degree);
  return {to_text(r), to_json(r), r.ok};
}

Result run_boundary(const InputDocument& doc, const RunConfig& cfg) {
  if (!cfg.target) throw InputError("boundary needs --target EXPR");
  Dgl L = dgl_of(doc, cfg);
  const Tensor target = eval_bracket_expr(L.lie(), parse_bracket_expr(*cfg.target));
  Result o;
  o.json = {{"target", L.lie().format(target)}, {"results", Json::array()}};
  auto add = [&](const BoundaryResult& r) {
    o.text += to_text(r, L.lie());
    o.json["results"].push_back(to_json(r, L.lie()));
  };
  if (cfg.exact) {
    add(L.boundary_solve_exact(target, cfg.max_length));
  } else {
    const Range t = parse_range(cfg.tower.value_or("2.." + std::to_string(cfg.max_length)), "--tower");
    if (t.lo < 2 || t.hi < t.lo) throw InputError("--tower range must satisfy 2 <= A <= B");
    for (int n = t.lo; n <= t.hi; ++n) add(L.boundary_solve_truncated(target, static_cast<std::size_t>(n)));
  }
  return o;
}

Result dispatch(const RunConfig& cfg) {
  const InputDocument doc = parse_document(read_input(cfg.input));
  if (cfg.command == "validate") return run_validate(doc, cfg);
  if (cfg.command == "tower") return run_tower(doc, cfg);
  if (cfg.command == "homology") return run_homology(doc, cfg);
  if (cfg.command == "pronil") return run_pronil(doc, cfg);
  if (cfg.command == "neisendorfer") return run_neisendorfer(doc, cfg);
  if (cfg.command == "duality") return run_duality(doc, cfg);
  if (cfg.command == "quasi-iso") return run_quasi_iso(doc, cfg);
  if (cfg.command == "boundary") return run_boundary(doc, cfg);
  throw InputError("unknown command '" + cfg.command + "'");
}

void emit(const RunConfig& cfg, const Result& o) {
  const std::string body = cfg.format == "json" ? o.json.dump(2) + "\n" : o.text;
  if (cfg.out) {
    std::ofstream f(*cfg.out, std::ios::binary);
    if (!f) throw InputError("cannot write '" + *cfg.out + "'");
    f << body;
  } else {
    std::cout << body;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with free differential graded Lie algebras"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check a document and summarize it"},
      {"tower", "homology of the truncation tower L/L^n"},
      {"homology", "exact homology (generators of degree >= 1)"},
      {"pronil", "nilpotency audit of a homology Lie algebra or bracket table"},
      {"neisendorfer", "Neisendorfer's dgl model of a Sullivan algebra"},
      {"duality", "compare the Lie coalgebra of a Sullivan algebra with its dgl model"},
      {"quasi-iso", "compare H of the Neisendorfer model with the desuspended generators"},
      {"boundary", "solve d u = target, truncated or exactly"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", cfg.input, "input document, '-' for standard input");
    sub->add_option("--max-length", cfg.max_length, "maximal word length")->check(CLI::PositiveNumber);
    sub->add_option("--max-degree", cfg.max_degree, "maximal degree")->check(CLI::PositiveNumber);
    sub->add_option("--degrees", cfg.degrees, "degree window A..B");
    sub->add_option("--tower", cfg.tower, "tower range A..B");
    sub->add_option("--stab-suffix", cfg.stab_suffix, "equal entries needed to call a tower stable")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", cfg.out, "write the report to PATH");
    if (name == "boundary") {
      sub->add_option("--target", cfg.target, "bracket expression to hit")->required();
      sub->add_flag("--exact", cfg.exact, "search witnesses in L up to --max-length");
    }
    if (name == "pronil") sub->add_option("--table", cfg.table, "filtered, stable or auto");
    sub->callback([&cfg, n = name] { cfg.command = n; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    Result o = dispatch(cfg);
    emit(cfg, o);
    return o.ok ? 0 : 2;
  } catch (const WindowError& e) {
    std::cerr << "window: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
