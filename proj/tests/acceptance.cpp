// Acceptance suite: one line per criterion, exit code = number of failures.
//
// Each criterion states its tolerance inline and is checked against an
// independent computation wherever one exists (assignment enumeration,
// Schmidt rank, direct subspace intersection, CLI process output).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "omlkit/demos.hpp"
#include "omlkit/io.hpp"
#include "omlkit/predicates.hpp"

using namespace omlkit;

namespace {

struct Criterion {
  int id = 0;
  std::string title;
  double budget_seconds = 0.0;
  bool pass = true;
  double seconds = 0.0;
  std::vector<std::string> failures;
};

struct Runner {
  std::vector<Criterion> results;

  void run(int id, const std::string& title, double budget,
           const std::function<void(Criterion&)>& body) {
    Criterion c;
    c.id = id;
    c.title = title;
    c.budget_seconds = budget;
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.pass = false;
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.seconds > c.budget_seconds) {
      c.pass = false;
      c.failures.push_back("over budget: " + fmt_double(c.seconds) + " s > " +
                           fmt_double(c.budget_seconds) + " s");
    }
    results.push_back(std::move(c));
  }
};

void check(Criterion& c, bool ok, const std::string& what) {
  if (!ok) {
    c.pass = false;
    c.failures.push_back(what);
  }
}

FiniteOML pasted_lattice() {
  // deterministic "random" pasting: seeded choice of Boolean parts
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> nparts(2, 3), natoms(2, 3);
  std::vector<FiniteOML> parts;
  int k = nparts(rng);
  for (int i = 0; i < k; ++i) parts.push_back(FiniteOML::boolean(natoms(rng)));
  return FiniteOML::horizontal_sum(parts);
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(OMLKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

Frame random_frame(std::mt19937& rng, int dim) {
  std::normal_distribution<double> g;
  CMat m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMat> qr(m);
  CMat q = qr.householderQ();
  std::vector<CVec> vs;
  for (int i = 0; i < dim; ++i) vs.push_back(q.col(i));
  return Frame(vs);
}

}  // namespace

int main() {
  Runner r;

  r.run(1, "commutation symmetry coincides with orthomodularity over the catalog", 1.0,
        [](Criterion& c) {
          std::vector<std::pair<std::string, FiniteOML>> catalog;
          for (int n = 1; n <= 4; ++n) {
            catalog.emplace_back("boolean(" + std::to_string(n) + ")", FiniteOML::boolean(n));
          }
          for (int n = 2; n <= 4; ++n) {
            catalog.emplace_back("mo(" + std::to_string(n) + ")", FiniteOML::mo(n));
          }
          catalog.emplace_back("o6", FiniteOML::o6());
          catalog.emplace_back("qubit fragment",
                               subspace_lattice_closure(RaySeed{2, {Vec{1, 0}, Vec{1, 1}}, 1}).lattice);
          catalog.emplace_back("two-qubit fragment", standard_two_qubit_embedding().embedding.product);
          catalog.emplace_back("pasted", pasted_lattice());
          check(c, catalog.size() >= 10, "catalog too small");
          for (const auto& [name, l] : catalog) {
            bool om = check_orthomodular(l).ok;
            bool cs = check_commutation_symmetry(l).ok;
            check(c, om == cs, name + ": predicates disagree");
            check(c, (name == "o6") ? (!om && !cs) : (om && cs),
                  name + ": unexpected verdict");
          }
        });

  r.run(2, "the two-qubit fragment has entangled atoms of Schmidt rank 2", 5.0, [](Criterion& c) {
    auto te = standard_two_qubit_embedding();
    const auto& pe = te.embedding;
    check(c, SubspaceLattice{pe.product, te.product_subspaces}.index_of(
                 Subspace::ray(Vec{1, 0, 0, 1})) >= 0,
          "fragment lost the superposition ray");
    auto entangled = find_entangled_atoms(pe);
    check(c, !entangled.empty(), "no entangled atoms found");
    for (int p : entangled) {
      const Subspace& s = te.product_subspaces[p];
      check(c, s.dim() == 1 && schmidt_rank(s.basis()[0], 2, 2) == 2,
            "entangled atom of wrong Schmidt rank");
    }
    int a = pe.factor_a.atoms()[0], b = pe.factor_b.atoms()[0];
    int x = pe.product.meet(pe.inj_a[a], pe.inj_b[b]);
    int y = pe.product.meet(pe.inj_a[pe.factor_a.ortho_of(a)], pe.inj_b[pe.factor_b.ortho_of(b)]);
    auto w = strong_perspectivity_witness(pe.product, x, y);
    check(c, w.has_value(), "no strong perspectivity witness");
    if (w) {
      int span = pe.product.join(x, y);
      check(c,
            pe.product.meet(w->second, x) == pe.product.zero() &&
                pe.product.join(w->second, x) == span && pe.product.join(w->second, y) == span,
            "span complement fails its defining equations");
    }
  });

  r.run(3, "the cloning order obstruction holds on three configurations", 1.0, [](Criterion& c) {
    auto ray = [](int x, int y) { return Subspace::ray(Vec{x, y}); };
    struct Cfg {
      Subspace a1, a2, beta;
    };
    std::vector<Cfg> cfgs{{ray(1, 0), ray(1, 1), ray(1, 0)},
                          {ray(1, 0), ray(1, -1), ray(0, 1)},
                          {ray(1, 1), ray(0, 1), ray(1, 3)}};
    for (const auto& cfg : cfgs) {
      auto rep = no_cloning_obstruction(cfg.a1, cfg.a2, cfg.beta);
      check(c, rep.input_constraint_holds, "input constraint failed");
      check(c, rep.output_escapes, "output containment did not fail");
      check(c, rep.obstruction_established(), "obstruction not established");
    }
    bool raised = false;
    try {
      no_cloning_obstruction(ray(1, 0), ray(1, 0), ray(0, 1));
    } catch (const BadInput&) {
      raised = true;
    }
    check(c, raised, "BadInput not raised for a2 = a1");
  });

  r.run(4, "boolean box facts: all four meet to 0, every triple has 2 atoms", 1.0,
        [](Criterion& c) {
          auto rep = boolean_prbox_analysis();
          check(c, rep.all_four_count == 0, "four-way meet not 0");
          for (int k = 0; k < 4; ++k) {
            check(c, rep.triple_counts[k] == 2,
                  "triple omitting " + std::to_string(k) + " has " +
                      std::to_string(rep.triple_counts[k]) + " atoms");
          }
        });

  r.run(5, "quantum exclusion: support meet 0, derivation replay agrees", 1.0, [](Criterion& c) {
    std::vector<PrBoxConfig> cfgs(3);
    cfgs[1].a1 = Vec{1, 0};
    cfgs[1].a2 = Vec{1, 1};
    cfgs[1].b1 = Vec{1, 0};
    cfgs[1].b2 = Vec{1, 1};
    cfgs[2].a1 = Vec{1, 0};
    cfgs[2].a2 = Vec{1, 2};
    cfgs[2].b1 = Vec{0, 1};
    cfgs[2].b2 = Vec{1, -1};
    for (size_t i = 0; i < cfgs.size(); ++i) {
      auto rep = quantum_prbox_meet(cfgs[i]);
      std::string tag = "config " + std::to_string(i);
      check(c, rep.meet_is_zero, tag + ": support meet not 0");
      check(c, rep.routes_agree, tag + ": derivation and direct intersection disagree");
      check(c, rep.distribution_identity_ok, tag + ": distributive-triple identity failed");
      check(c, rep.triple_distributive && rep.constituents_commute && rep.rewrite_ok,
            tag + ": a derivation step failed");
    }
  });

  r.run(6, "no noncontextual assignment for the effect triples, dim 2 and dim 8", 1.0,
        [](Criterion& c) {
          auto [a, b, cc] = demos::standard_projector_triple();
          auto povms = cabello_povms(a, b, cc);
          auto found = noncontextual_assignment_search({povms.begin(), povms.end()});
          check(c, found.empty(),
                std::to_string(found.size()) + " of 64 assignments valid in dim 2");
          auto rep = three_qubit_commuting_sets(a, b, cc);
          check(c, rep.assignment_count == 0,
                std::to_string(rep.assignment_count) + " of 64 assignments valid in dim 8");
          check(c, rep.max_commutator_norm < 1e-12,
                "commutator norm " + fmt_double(rep.max_commutator_norm) + " >= 1e-12");
          check(c, rep.max_sum_dev < 1e-12,
                "sum deviation " + fmt_double(rep.max_sum_dev) + " >= 1e-12");
        });

  r.run(7, "sequential measurements at +-pi/6: same POVM, different post-states", 1.0,
        [](Criterion& c) {
          const double theta = std::numbers::pi / 6;
          ProjectivePair z = z_measurement();
          Povm plus = sequential_povm(z, spin_measurement(theta));
          Povm minus = sequential_povm(z, spin_measurement(-theta));
          double dev = 0.0;
          for (size_t k = 0; k < plus.effects.size(); ++k) {
            dev = std::max(dev, max_abs(plus.effects[k].matrix - minus.effects[k].matrix));
          }
          check(c, dev <= 1e-9, "POVMs differ by " + fmt_double(dev));
          const double cw = std::cos(theta / 2) * std::cos(theta / 2);
          const double sw = std::sin(theta / 2) * std::sin(theta / 2);
          double wdev = std::max(
              std::max(max_abs(plus.effects[0].matrix - cw * z.p0),
                       max_abs(plus.effects[1].matrix - sw * z.p0)),
              std::max(max_abs(plus.effects[2].matrix - sw * z.p1),
                       max_abs(plus.effects[3].matrix - cw * z.p1)));
          check(c, wdev <= 1e-12, "weights off by " + fmt_double(wdev));
          CVec zero_state(2);
          zero_state << 1, 0;
          CVec after_plus = post_measurement_state(zero_state, z, spin_measurement(theta), {0, 0});
          CVec after_minus = post_measurement_state(zero_state, z, spin_measurement(-theta), {0, 0});
          double td = trace_distance(after_plus, after_minus);
          check(c, std::abs(td - 0.5) <= 1e-9, "trace distance " + fmt_double(td) + " != 0.5");
        });

  r.run(8, "entwinement: absent for qubit frames, present in dim 3, frame functions sum", 2.0,
        [](Criterion& c) {
          std::mt19937 rng(17);
          std::vector<Frame> qubit_frames;
          for (int k = 0; k < 50; ++k) qubit_frames.push_back(random_frame(rng, 2));
          for (size_t i = 0; i < qubit_frames.size(); ++i) {
            for (size_t j = i + 1; j < qubit_frames.size(); ++j) {
              if (entwined(qubit_frames[i], qubit_frames[j])) {
                check(c, false, "qubit frames entwined");
              }
            }
          }
          const double s = 1.0 / std::sqrt(2.0);
          CVec f1(3), f2(3), f3(3), g2(3), g3(3);
          f1 << 1, 0, 0;
          f2 << 0, 1, 0;
          f3 << 0, 0, 1;
          g2 << 0, s, s;
          g3 << 0, s, -s;
          check(c, entwined(Frame({f1, f2, f3}), Frame({f1, g2, g3})),
                "standard dim-3 pair not entwined");

          CVec psi(3);
          psi << 1.0 / 3, 2.0 / 3, 2.0 / 3;
          std::vector<Frame> frames3;
          for (int k = 0; k < 20; ++k) frames3.push_back(random_frame(rng, 3));
          auto born = frame_function_check(
              [&](const CVec& v) { return std::norm((psi.adjoint() * v)(0, 0)); }, frames3, 1e-9);
          check(c, born.constant_sum && std::abs(born.r - 1.0) <= 1e-9,
                "Born frame function: r = " + fmt_double(born.r) + ", residual " +
                    fmt_double(born.max_residual));

          CVec e1(2), e2(2), p(2), m(2);
          e1 << 1, 0;
          e2 << 0, 1;
          p << s, s;
          m << s, -s;
          Frame zf({e1, e2}), xf({p, m});
          auto near = [](const CVec& u, const CVec& v) {
            return std::abs(std::abs((u.adjoint() * v)(0, 0)) - 1.0) < 1e-9;
          };
          auto indep = frame_function_check(
              [&](const CVec& v) -> double {
                if (near(v, e1)) return 0.3;
                if (near(v, e2)) return 0.7;
                if (near(v, p)) return 0.9;
                return 0.1;
              },
              {zf, xf}, 1e-9);
          check(c, indep.constant_sum && indep.probability(),
                "independent two-frame assignment rejected");
        });

  r.run(9, "infrastructure: round-trips, valid fragments, deterministic CLI", 45.0,
        [](Criterion& c) {
          for (const auto& l :
               {FiniteOML::boolean(2), FiniteOML::mo(2), FiniteOML::o6(),
                subspace_lattice_closure(RaySeed{2, {Vec{1, 0}, Vec{1, 1}}, 1}).lattice}) {
            check(c, lattice_from_json(lattice_to_json(l)) == l, "lattice round-trip failed");
          }
          for (const auto& sl :
               {subspace_lattice_closure(RaySeed{2, {Vec{1, 0}, Vec{1, 1}}, 1}),
                SubspaceLattice{standard_two_qubit_embedding().embedding.product,
                                standard_two_qubit_embedding().product_subspaces}}) {
            check(c, check_orthomodular(sl.lattice).ok, "closure fragment not orthomodular");
            for (size_t i = 0; i < sl.lattice.size(); ++i) {
              int ii = static_cast<int>(i);
              check(c, sl.lattice.ortho_of(sl.lattice.ortho_of(ii)) == ii, "ortho not involutive");
              check(c,
                    sl.lattice.meet(ii, sl.lattice.ortho_of(ii)) == sl.lattice.zero() &&
                        sl.lattice.join(ii, sl.lattice.ortho_of(ii)) == sl.lattice.one(),
                    "complement law failed");
            }
          }
          for (const auto& name : demo_names()) {
            CliResult first = run_cli("demo " + name);
            CliResult second = run_cli("demo " + name);
            check(c, first.exit_code == 0, "demo " + name + " exited " +
                                               std::to_string(first.exit_code));
            check(c, !first.output.empty() && first.output == second.output,
                  "demo " + name + " output not byte-identical across runs");
          }
          CliResult gen = run_cli("gen mo:2 -o /tmp/omlkit_acceptance_mo2.lat");
          check(c, gen.exit_code == 0, "gen failed");
          check(c, load_lattice_file("/tmp/omlkit_acceptance_mo2.lat") == FiniteOML::mo(2),
                "gen output does not reload to mo(2)");
          std::remove("/tmp/omlkit_acceptance_mo2.lat");
          RaySeed seed;
          seed.dim = 4;
          seed.closure_depth = 2;
          seed.rays = {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1},
                       Vec{1, 0, 0, 1}};
          write_text_file("/tmp/omlkit_acceptance.seed", rayseed_to_json(seed).dump());
          CliResult genc =
              run_cli("gen closure:/tmp/omlkit_acceptance.seed -o /tmp/omlkit_acceptance_frag.lat");
          check(c, genc.exit_code == 0, "closure gen failed");
          FiniteOML frag = load_lattice_file("/tmp/omlkit_acceptance_frag.lat");
          check(c, frag.size() <= kDefaultClosureCap, "fragment exceeds the cap");
          check(c, check_orthomodular(frag).ok, "reloaded fragment not orthomodular");
          std::remove("/tmp/omlkit_acceptance.seed");
          std::remove("/tmp/omlkit_acceptance_frag.lat");
          CliResult bad = run_cli("check --gen o6 --orthomodular");
          check(c, bad.exit_code == 1, "failing check should exit 1");
          CliResult good = run_cli("check --gen mo:2 --piron");
          check(c, good.exit_code == 0, "passing check should exit 0");
        });

  int failed = 0;
  for (const auto& c : r.results) {
    std::printf("[%s] criterion %d: %s (%.2fs)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), c.seconds);
    for (const auto& f : c.failures) std::printf("         - %s\n", f.c_str());
    if (!c.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(r.results.size()) - failed,
              r.results.size());
  return failed;
}
