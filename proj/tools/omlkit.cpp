// omlkit -- exact finite quantum-logic toolkit.
//
// Subcommands:
//   check  validate lattice predicates on a file or generated lattice
//   gen    write a lattice file from a generator spec
//   demo   run one of the built-in demonstrations
//
// Exit codes: 0 all requested checks pass, 1 a checked claim failed,
// 2 usage or parse error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "omlkit/demos.hpp"
#include "omlkit/io.hpp"
#include "omlkit/predicates.hpp"
#include "omlkit/report.hpp"

namespace {

using namespace omlkit;

size_t closure_cap_from_env() {
  if (const char* cap = std::getenv("OMLKIT_CLOSURE_CAP")) {
    return static_cast<size_t>(std::stoull(cap));
  }
  return kDefaultClosureCap;
}

/// "boolean:3", "mo:2", "o6" or "closure:<rayseed file>".
FiniteOML lattice_from_generator(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  if (kind == "o6") return FiniteOML::o6();
  if (kind == "boolean" || kind == "mo") {
    if (colon == std::string::npos) throw ParseError("generator '" + kind + "' needs :n");
    int n = std::stoi(spec.substr(colon + 1));
    return kind == "boolean" ? FiniteOML::boolean(n) : FiniteOML::mo(n);
  }
  if (kind == "closure") {
    if (colon == std::string::npos) throw ParseError("closure generator needs :<rayseed file>");
    RaySeed seed = load_rayseed_file(spec.substr(colon + 1));
    seed.cap = closure_cap_from_env();
    return subspace_lattice_closure(seed).lattice;
  }
  throw ParseError("unknown generator '" + spec + "'");
}

std::string witness_names(const FiniteOML& l, const std::vector<std::vector<int>>& ws,
                          size_t limit = 4) {
  std::string out;
  for (size_t i = 0; i < ws.size() && i < limit; ++i) {
    if (i) out += "; ";
    out += "(";
    for (size_t j = 0; j < ws[i].size(); ++j) {
      if (j) out += ",";
      out += l.name(ws[i][j]);
    }
    out += ")";
  }
  if (ws.size() > limit) out += "; ... " + std::to_string(ws.size()) + " total";
  return out;
}

int run_check(const std::string& file, const std::string& gen, bool orthomodular, bool csym,
              bool piron, bool atomic, bool irreducible, bool covering, bool as_json) {
  FiniteOML l = gen.empty() ? load_lattice_file(file) : lattice_from_generator(gen);
  Report rep;
  rep.demo_name = "check";
  rep.anchor = "lattice-predicates";
  bool any = orthomodular || csym || piron || atomic || irreducible || covering;
  if (!any) piron = true;

  if (orthomodular || piron) {
    auto r = check_orthomodular(l);
    rep.add("check_orthomodular", "a <= b implies b = a OR (b AND a')", r.ok,
            r.ok ? "" : witness_names(l, r.witnesses));
  }
  if (csym) {
    auto r = check_commutation_symmetry(l);
    rep.add("check_commutation_symmetry", "aCb iff bCa", r.ok,
            r.ok ? "" : witness_names(l, r.witnesses));
  }
  if (piron || atomic || irreducible || covering) {
    auto pr = check_piron(l);
    if (atomic || piron) {
      rep.add("check_piron", "every nonzero element dominates an atom", pr.is_atomic,
              pr.is_atomic ? "" : witness_names(l, pr.atomic_witnesses));
    }
    if (piron) {
      rep.add("check_piron", "meets and joins are everywhere defined (finite lattice)",
              pr.is_complete);
    }
    if (irreducible || piron) {
      rep.add("check_piron", "only 0 and 1 commute with every element", pr.is_irreducible,
              pr.is_irreducible ? "" : witness_names(l, pr.irreducible_witnesses));
    }
    if (covering || piron) {
      rep.add("check_piron", "atoms cover: nothing lies strictly between q and p OR q",
              pr.satisfies_covering,
              pr.satisfies_covering ? "" : witness_names(l, pr.covering_witnesses));
    }
  }
  std::cout << (as_json ? rep.to_json().dump(2) + "\n" : rep.render_text());
  return rep.verdict() ? 0 : 1;
}

int run_gen(const std::string& spec, const std::string& out) {
  FiniteOML l = lattice_from_generator(spec);
  save_lattice_file(out, l);
  std::cout << "wrote " << out << " (" << l.size() << " elements)\n";
  return 0;
}

int run_demo_cmd(const std::string& name, const std::string& config, double theta, bool as_json) {
  Report rep;
  if (name == "sequential-povm") {
    rep = demos::sequential_povm_demo(theta);
  } else if (name == "prbox-quantum" && !config.empty()) {
    auto j = parse_json_text(read_text_file(config), config);
    PrBoxConfig cfg;
    if (j.contains("a1")) cfg.a1 = vec_from_json(j.at("a1"));
    if (j.contains("a2")) cfg.a2 = vec_from_json(j.at("a2"));
    if (j.contains("b1")) cfg.b1 = vec_from_json(j.at("b1"));
    if (j.contains("b2")) cfg.b2 = vec_from_json(j.at("b2"));
    if (j.contains("anti_index")) cfg.anti_index = j.at("anti_index").get<int>();
    rep = demos::prbox_quantum(cfg);
  } else if (name == "no-cloning" && !config.empty()) {
    auto j = parse_json_text(read_text_file(config), config);
    auto r = no_cloning_obstruction(Subspace::ray(vec_from_json(j.at("a1"))),
                                    Subspace::ray(vec_from_json(j.at("a2"))),
                                    Subspace::ray(vec_from_json(j.at("beta"))));
    rep.demo_name = "no-cloning";
    rep.anchor = "lattice-no-cloning";
    rep.add("no_cloning_obstruction", "the input a2 (x) beta lies under the ready-state span",
            r.input_constraint_holds);
    rep.add("no_cloning_obstruction",
            "the required output a2 (x) a2 escapes the span of the cloned pair", r.output_escapes);
  } else {
    rep = run_demo(name);
  }
  std::cout << (as_json ? rep.to_json().dump(2) + "\n" : rep.render_text());
  return rep.verdict() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omlkit: exact orthomodular-lattice and POVM toolkit"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "run lattice predicates");
  std::string check_file, check_gen;
  bool f_om = false, f_csym = false, f_piron = false, f_atomic = false, f_irr = false,
       f_cov = false, check_json = false;
  check->add_option("--file", check_file, "lattice file (JSON)");
  check->add_option("--gen", check_gen, "generator spec: boolean:n, mo:n, o6, closure:<seed file>");
  check->add_flag("--orthomodular", f_om, "check orthomodularity");
  check->add_flag("--commutation-symmetry", f_csym, "check symmetry of the commutes relation");
  check->add_flag("--piron", f_piron, "check the full condition bundle (default)");
  check->add_flag("--atomic", f_atomic, "check atomicity");
  check->add_flag("--irreducible", f_irr, "check irreducibility");
  check->add_flag("--covering", f_cov, "check the covering law");
  check->add_flag("--json", check_json, "machine-readable output");

  auto* gen = app.add_subcommand("gen", "generate a lattice file");
  std::string gen_spec, gen_out;
  gen->add_option("spec", gen_spec, "generator spec: boolean:n, mo:n, o6, closure:<seed file>")
      ->required();
  gen->add_option("-o,--out", gen_out, "output path")->required();

  auto* demo = app.add_subcommand("demo", "run a built-in demonstration");
  std::string demo_name, demo_config;
  double theta = std::numbers::pi / 6;
  bool demo_json = false;
  demo->add_option("name", demo_name, "one of: prbox-boolean, prbox-quantum, entangled-atom, "
                                      "no-cloning, cabello, cabello-commuting, sequential-povm, "
                                      "entwinement, gleason-2d")
      ->required();
  demo->add_option("--theta", theta, "angle in radians (sequential-povm)");
  demo->add_option("--config", demo_config,
                   "JSON file overriding demo defaults (prbox-quantum, no-cloning)");
  demo->add_flag("--json", demo_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      if (check_file.empty() == check_gen.empty()) {
        std::cerr << "check: give exactly one of --file or --gen\n";
        return 2;
      }
      return run_check(check_file, check_gen, f_om, f_csym, f_piron, f_atomic, f_irr, f_cov,
                       check_json);
    }
    if (gen->parsed()) return run_gen(gen_spec, gen_out);
    if (demo->parsed()) return run_demo_cmd(demo_name, demo_config, theta, demo_json);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownDemo& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const BadConfig& e) {
    std::cerr << "bad config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
