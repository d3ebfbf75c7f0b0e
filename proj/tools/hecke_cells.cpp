// hecke-cells: build a Coxeter system, its KL basis and a p-canonical table,
// then compute cells and run the verifiers.  Reports go to files under --out;
// stdout only gets a summary table.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "heckecells/canonical.hpp"
#include "heckecells/cells.hpp"
#include "heckecells/cellular.hpp"
#include "heckecells/coxeter.hpp"
#include "heckecells/error.hpp"
#include "heckecells/hecke.hpp"
#include "heckecells/perron.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace heckecells;

namespace {

enum Exit { kPass = 0, kBuild = 2, kValidation = 3, kVerification = 4, kUnsupported = 5 };

// Which pipeline stage an error came from decides its exit code.
struct StageError {
  int code;
  std::string message;
};

struct RunConfig {
  std::string system = "A2";
  std::string cartan;
  std::string table;
  std::string p = "kl";
  std::string weights = "uniform";
  std::optional<std::uint64_t> seed;
  std::string out = "hecke-cells-out";
  std::vector<std::string> formats{"json"};
  double tol = 1e-9;
  unsigned jobs = 1;
  std::string config;

  bool wants(const std::string& f) const {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  }
};

json read_json(const std::string& path, int code) {
  std::ifstream in(path);
  if (!in) throw StageError{code, "cannot open " + path};
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw StageError{code, path + ": " + e.what()};
  }
}

// Fills every option the command line left unset from the config file.
void apply_config(RunConfig& cfg, const CLI::App& app) {
  if (cfg.config.empty()) return;
  const json doc = read_json(cfg.config, kBuild);
  if (!doc.is_object()) throw StageError{kBuild, cfg.config + ": expected an object"};
  auto unset = [&](const char* flag) { return app.get_option(flag)->count() == 0; };
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "system" && unset("--system")) cfg.system = value.get<std::string>();
      else if (key == "cartan" && unset("--cartan")) cfg.cartan = value.get<std::string>();
      else if (key == "table" && unset("--table")) cfg.table = value.get<std::string>();
      else if (key == "p" && unset("--p"))
        cfg.p = value.is_string() ? value.get<std::string>() : std::to_string(value.get<int>());
      else if (key == "weights" && unset("--weights")) cfg.weights = value.get<std::string>();
      else if (key == "seed" && unset("--seed")) cfg.seed = value.get<std::uint64_t>();
      else if (key == "out" && unset("--out")) cfg.out = value.get<std::string>();
      else if (key == "format" && unset("--format"))
        cfg.formats = value.is_string() ? std::vector<std::string>{value.get<std::string>()}
                                        : value.get<std::vector<std::string>>();
      else if (key == "tol" && unset("--tol")) cfg.tol = value.get<double>();
      else if (key == "jobs" && unset("--jobs")) cfg.jobs = value.get<unsigned>();
      else if (key != "system" && key != "cartan" && key != "table" && key != "p" &&
               key != "weights" && key != "seed" && key != "out" && key != "format" &&
               key != "tol" && key != "jobs")
        throw StageError{kBuild, cfg.config + ": unknown key '" + key + "'"};
    }
  } catch (const json::exception& e) {
    throw StageError{kBuild, cfg.config + ": " + e.what()};
  }
  if (!(cfg.tol > 0)) throw StageError{kBuild, "tolerance must be positive"};
  if (cfg.jobs < 1) throw StageError{kBuild, "--jobs must be at least 1"};
  for (const auto& f : cfg.formats) {
    if (f != "json" && f != "csv" && f != "dot") throw StageError{kBuild, "unknown format " + f};
  }
}

fs::path write_file(const RunConfig& cfg, const std::string& name, const std::string& text) {
  fs::create_directories(cfg.out);
  const fs::path path = fs::path(cfg.out) / name;
  std::ofstream f(path);
  f << text;
  if (!f) throw StageError{kBuild, "cannot write " + path.string()};
  return path;
}

fs::path write_json(const RunConfig& cfg, const std::string& name, const json& doc) {
  return write_file(cfg, name, doc.dump(2) + "\n");
}

// The whole pipeline up to the cell atlas, built lazily so that `kl` does
// not pay for a table.
struct Pipeline {
  const RunConfig& cfg;
  std::unique_ptr<CoxeterSystem> sys;
  std::unique_ptr<KLBasis> kl;
  std::unique_ptr<ValidatedTable> table;
  std::unique_ptr<CellAtlas> atlas;
  json validation;

  explicit Pipeline(const RunConfig& c) : cfg(c) {
    try {
      const CartanSpec spec =
          cfg.cartan.empty() ? cartan_preset(cfg.system) : cartan_from_json(read_json(cfg.cartan, kBuild));
      sys = std::make_unique<CoxeterSystem>(CoxeterSystem::build(spec));
      kl = std::make_unique<KLBasis>(*sys);
    } catch (const Error& e) {
      throw StageError{e.kind() == ErrorKind::UnsupportedType ? kUnsupported : kBuild, e.what()};
    }
  }

  void load_table() {
    std::optional<int> p;
    if (cfg.p != "kl") {
      try {
        p = std::stoi(cfg.p);
      } catch (const std::exception&) {
        throw StageError{kBuild, "--p must be 'kl' or an integer"};
      }
    }
    try {
      CanonicalBasisTable t;
      if (!cfg.table.empty()) {
        t = heckecells::load_table(read_json(cfg.table, kValidation), *kl);
        if (p && *p != t.p) {
          throw StageError{kValidation, "table has p = " + std::to_string(t.p) + ", not " + cfg.p};
        }
      } else if (!p || *p == 0) {
        t = kl_table(*kl);
      } else if (*p == 2 && sys->name() == "B2") {
        t = heckecells::load_table(b2_p2_document(), *kl);
      } else {
        throw StageError{kUnsupported, "no built-in table for " + sys->name() + " at p = " + cfg.p +
                                           "; pass one with --table"};
      }
      ValidationReport rep;
      try {
        table = std::make_unique<ValidatedTable>(ValidatedTable::from(std::move(t), &rep));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ValidationFailed) throw;
        const auto path = write_json(cfg, "validation.json", rep.to_json());
        throw StageError{kValidation, std::string(e.what()) + " (see " + path.string() + ")"};
      }
      validation = rep.to_json();
    } catch (const Error& e) {
      throw StageError{kValidation, e.what()};
    }
    atlas = std::make_unique<CellAtlas>(*table);
  }

  PerronOptions perron_options() const {
    PerronOptions o;
    o.crosscheck_tol = cfg.tol;
    o.zero_tol = cfg.tol;
    return o;
  }

  WeightVector weights() const {
    std::string spec = cfg.weights;
    if (spec == "random") spec = "random:" + std::to_string(cfg.seed.value_or(1));
    try {
      return WeightVector::parse(spec, *sys);
    } catch (const Error& e) {
      throw StageError{kBuild, e.what()};
    }
  }

  json header(const std::string& command) const {
    json h = {{"tool", "hecke-cells"},
              {"command", command},
              {"system", sys->name()},
              {"cartan", cartan_to_json(sys->spec())},
              {"order", sys->size()}};
    if (table) {
      h["p"] = table->p();
      h["table"] = table->table().provenance;
    }
    const PerronOptions o = perron_options();
    h["weights"] = cfg.weights;
    h["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
    h["tolerances"] = {{"pass", cfg.tol},
                       {"crosscheck", o.crosscheck_tol},
                       {"zero", o.zero_tol},
                       {"power_iteration_residual", o.residual_tol},
                       {"power_iteration_max_steps", o.max_iterations},
                       {"projection", o.projection_tol}};
    return h;
  }
};

void row(const std::string& a, const std::string& b, const std::string& c = "") {
  std::cout << std::left << std::setw(44) << a << std::setw(6) << b << c << "\n";
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

// ---- kl

int cmd_kl(const RunConfig& cfg) {
  Pipeline pl(cfg);
  pl.kl->compute_all();
  json doc = {{"header", pl.header("kl")}, {"kl", pl.kl->report()}};
  const auto path = write_json(cfg, "kl.json", doc);
  row("system " + pl.sys->name(), "ok", std::to_string(pl.sys->size()) + " elements");
  row("KL basis", "ok", path.string());
  return kPass;
}

// ---- cells

int cmd_cells(const RunConfig& cfg) {
  Pipeline pl(cfg);
  pl.load_table();
  const CellAtlas& at = *pl.atlas;
  const CoxeterSystem& sys = *pl.sys;
  json doc = {{"header", pl.header("cells")},
              {"validation", pl.validation},
              {"left", at.left().to_json(sys)},
              {"right", at.right().to_json(sys)},
              {"two_sided", at.two_sided().to_json(sys)}};
  int code = kPass;
  std::string rs_verdict = "n/a";
  if (sys.is_type_a()) {
    try {
      rs_cross_check(at);
      doc["rs_cross_check"] = {{"passed", true}};
      rs_verdict = "pass";
    } catch (const Error& e) {
      doc["rs_cross_check"] = {{"passed", false}, {"detail", e.what()}};
      rs_verdict = "FAIL";
      code = kVerification;
    }
  }
  const auto path = write_json(cfg, "cells.json", doc);
  if (cfg.wants("dot")) {
    write_file(cfg, "cells-left.dot", at.left().to_dot(sys));
    write_file(cfg, "cells-right.dot", at.right().to_dot(sys));
    write_file(cfg, "cells-two-sided.dot", at.two_sided().to_dot(sys));
  }
  if (cfg.wants("csv")) {
    std::ostringstream csv;
    csv << "element,left,right,two_sided\n";
    for (ElementId w = 0; w < sys.size(); ++w) {
      csv << sys.element_name(w) << "," << at.left().cell_of(w) << "," << at.right().cell_of(w)
          << "," << at.two_sided().cell_of(w) << "\n";
    }
    write_file(cfg, "cells.csv", csv.str());
  }
  row("system " + sys.name() + ", p = " + std::to_string(at.table().p()), "ok",
      std::to_string(sys.size()) + " elements");
  row("left cells", "ok", std::to_string(at.left().num_cells()));
  row("right cells", "ok", std::to_string(at.right().num_cells()));
  row("two-sided cells", "ok", std::to_string(at.two_sided().num_cells()));
  if (sys.is_type_a()) row("RS cross-check", rs_verdict);
  row("report", "", path.string());
  return code;
}

// ---- verify

struct Section {
  std::string name;
  json report;
  bool passed = true;
  bool skipped = false;
  std::string summary;
  std::string witness;  // JSON pointer inside the section to the first witness
};

Section from_verification(const std::string& name, const VerificationReport& r) {
  Section s{name, r.to_json(), r.passed()};
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    if (!r.checks[i].passed && s.witness.empty()) {
      s.witness = "/checks/" + std::to_string(i) + "/witness";
      s.summary = r.checks[i].name + ": " + r.checks[i].detail;
    }
  }
  if (s.passed) s.summary = std::to_string(r.checks.size()) + " checks";
  return s;
}

Section unsupported(const std::string& name, const Error& e) {
  Section s{name, {{"skipped", e.what()}}, true, true};
  s.summary = "skipped: not type A";
  return s;
}

Section run_perron(Pipeline& pl) {
  const RunConfig& cfg = pl.cfg;
  const CellAtlas& at = *pl.atlas;
  const PerronReport rep = perron_report(at, pl.weights(), pl.perron_options(), cfg.jobs);
  Section s{"perron", rep.to_json(at), rep.passed(cfg.tol)};
  // The apex of every cell module.
  json apexes = json::array();
  bool own = true;
  for (std::size_t c = 0; c < at.left().num_cells(); ++c) {
    try {
      const ApexResult a = apex(at, c);
      apexes.push_back({{"left_cell", c}, {"apex", a.apex}, {"is_own_cell", a.is_own_cell}});
      own = own && a.is_own_cell;
    } catch (const Error& e) {
      apexes.push_back({{"left_cell", c}, {"error", e.what()}});
      own = false;
    }
  }
  s.report["apex"] = apexes;
  s.passed = s.passed && own;
  if (cfg.wants("csv")) write_file(cfg, "perron.csv", rep.to_csv(at));

  const CoxeterSystem& sys = *pl.sys;
  for (const auto& c : rep.cells) {
    std::string members;
    for (ElementId w : at.left().members(c.cell)) members += (members.empty() ? "" : " ") + sys.element_name(w);
    if (members.size() > 30) members = members.substr(0, 27) + "...";
    std::string detail = "lambda = " + fmt(c.data.lambda) + ", full = " + fmt(c.full_lambda);
    if (rep.special[&c - rep.cells.data()]) detail += ", L_C = " + rep.special[&c - rep.cells.data()]->name;
    row("  left cell {" + members + "}", "", detail);
  }
  for (const auto& id : rep.idempotents) {
    std::string d;
    for (std::size_t i = 0; i < id.basis.size() && i < 6; ++i) {
      d += (d.empty() ? "" : ", ") + sys.element_name(id.basis[i]) + ": " + fmt(id.d[i]);
    }
    if (id.basis.size() > 6) d += ", ...";
    row("  e_J for two-sided cell " + std::to_string(id.cell), id.passed(cfg.tol) ? "pass" : "FAIL", d);
  }
  if (rep.idempotents.empty()) row("  e_J", "", "skipped above order 120");
  if (!s.passed) {
    s.summary = own ? "a Perron-Frobenius check failed" : "some apex is not the cell's own";
    s.witness = own ? "/passed" : "/apex";
  } else {
    s.summary = std::to_string(rep.cells.size()) + " left cells";
  }
  return s;
}

Section run_conjecture(Pipeline& pl) {
  const CellAtlas& at = *pl.atlas;
  std::optional<CharacterTable> chars;
  try {
    chars = irreducible_characters(*pl.sys);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedType) throw;
  }
  std::vector<WeightVector> alternatives;
  if (chars) {
    const std::uint64_t base = pl.cfg.seed.value_or(1);
    for (std::uint64_t k = 0; k < 20; ++k) alternatives.push_back(WeightVector::random(pl.sys->size(), base + k));
  }
  const ConjectureReport rep = conjecture_check(at, pl.weights(), pl.perron_options(),
                                                chars ? &*chars : nullptr, alternatives);
  Section s{"conjecture", rep.to_json(*pl.sys, at), rep.passed(pl.cfg.tol)};
  if (s.passed) {
    s.summary = std::to_string(rep.pairs.size()) + " comparable pairs";
  } else if (!rep.constant(pl.cfg.tol)) {
    s.summary = "not constant on two-sided cells";
    s.witness = "/constancy_defect";
  } else if (!rep.monotone()) {
    s.summary = "not monotone along <=_2";
    s.witness = "/pairs";
  } else {
    s.summary = "L_C changed under other weights";
    s.witness = "/lc_changes";
  }
  return s;
}

int cmd_verify(const RunConfig& cfg, const std::string& which) {
  Pipeline pl(cfg);
  pl.load_table();
  const CellAtlas& at = *pl.atlas;
  const bool all = which == "all";
  std::vector<Section> sections;

  auto type_a = [&](const std::string& name, auto&& run) {
    try {
      sections.push_back(from_verification(name, run()));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnsupportedType || !all) throw;
      sections.push_back(unsupported(name, e));
    }
  };
  try {
    if (all || which == "axioms") type_a("axioms", [&] { return verify_axioms(build_cell_datum(at.table()), at); });
    if (all || which == "property-a") sections.push_back(from_verification("property-a", verify_property_a(at)));
    if (all || which == "orders") type_a("orders", [&] { return verify_orders(at); });
    if (all || which == "independence") type_a("independence", [&] { return struct_coeff_independence(at); });
    if (all || which == "conjecture") sections.push_back(run_conjecture(pl));
    if (all || which == "perron") sections.push_back(run_perron(pl));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnsupportedType) throw StageError{kUnsupported, e.what()};
    throw StageError{kVerification, e.what()};
  }

  json doc = {{"header", pl.header("verify " + which)}, {"validation", pl.validation}};
  json reports = json::object();
  bool passed = true;
  for (const auto& s : sections) {
    reports[s.name] = s.report;
    passed = passed && s.passed;
  }
  doc["reports"] = reports;
  doc["passed"] = passed;
  const std::string file = "verify-" + which + ".json";
  const auto path = write_json(cfg, file, doc);

  row("system " + pl.sys->name() + ", p = " + std::to_string(at.table().p()), "",
      "weights " + cfg.weights);
  for (const auto& s : sections) row(s.name, s.skipped ? "skip" : s.passed ? "pass" : "FAIL", s.summary);
  row("report", "", path.string());
  for (const auto& s : sections) {
    if (!s.passed) {
      std::cerr << "first failure: " << path.string() << "#/reports/" << s.name << s.witness << "\n";
      return kVerification;
    }
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cells, p-canonical bases and Perron-Frobenius checks for finite Coxeter groups"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--system", cfg.system, "preset: A1..A7, B2, B3");
  app.add_option("--cartan", cfg.cartan, "Cartan matrix JSON file (overrides --system)");
  app.add_option("--table", cfg.table, "p-canonical table JSON file");
  app.add_option("--p", cfg.p, "'kl' or the characteristic");
  app.add_option("--weights", cfg.weights, "uniform | random | random:SEED | FILE");
  app.add_option("--seed", cfg.seed, "seed for random weights and the weight-invariance check");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--format", cfg.formats, "json, csv, dot (json is always written)")
      ->check(CLI::IsMember({"json", "csv", "dot"}))
      ->delimiter(',');
  app.add_option("--tol", cfg.tol, "verification tolerance")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1U, 1024U));
  app.add_option("--config", cfg.config, "JSON file with any of the options above");

  auto* kl = app.add_subcommand("kl", "write the KL basis");
  auto* cells = app.add_subcommand("cells", "left, right and two-sided cells");
  auto* verify = app.add_subcommand("verify", "run verifiers");
  std::string which;
  verify->add_option("which", which)
      ->required()
      ->check(CLI::IsMember(
          {"axioms", "property-a", "orders", "independence", "conjecture", "perron", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kBuild;
  }

  try {
    apply_config(cfg, app);
    if (kl->parsed()) return cmd_kl(cfg);
    if (cells->parsed()) return cmd_cells(cfg);
    return cmd_verify(cfg, which);
  } catch (const StageError& e) {
    std::cerr << "hecke-cells: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << "hecke-cells: " << e.what() << "\n";
    return e.kind() == ErrorKind::UnsupportedType ? kUnsupported : kVerification;
  } catch (const std::exception& e) {
    std::cerr << "hecke-cells: " << e.what() << "\n";
    return kBuild;
  }
}
