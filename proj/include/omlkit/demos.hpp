#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "omlkit/closure.hpp"
#include "omlkit/correlations.hpp"
#include "omlkit/io.hpp"
#include "omlkit/povm.hpp"
#include "omlkit/predicates.hpp"
#include "omlkit/products.hpp"
#include "omlkit/report.hpp"

namespace omlkit {

struct UnknownDemo : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Qubit lattice fragment {0, e1, e2, V} from the computational ray.
inline SubspaceLattice standard_qubit_factor(size_t cap = kDefaultClosureCap) {
  return subspace_lattice_closure(RaySeed{2, {Vec{1, 0}}, 1, cap});
}

/// Qubit lattice fragment with two incompatible atom pairs (an MO(2) copy).
inline SubspaceLattice two_pair_qubit_factor(size_t cap = kDefaultClosureCap) {
  return subspace_lattice_closure(RaySeed{2, {Vec{1, 0}, Vec{1, 1}}, 1, cap});
}

/// The standard two-qubit fragment: tensor images of two one-pair qubit
/// factors plus the superposition ray e00 + e11, closed. 24 elements.
inline TensorEmbeddingResult standard_two_qubit_embedding(size_t cap = kDefaultClosureCap) {
  SubspaceLattice qa = standard_qubit_factor(cap);
  SubspaceLattice qb = standard_qubit_factor(cap);
  return tensor_product_embedding(qa, qb, {Subspace::ray(Vec{1, 0, 0, 1})}, 2, cap);
}

namespace demos {

inline Report prbox_boolean() {
  Report rep;
  rep.demo_name = "prbox-boolean";
  rep.anchor = "box-correlations-boolean";
  auto r = boolean_prbox_analysis();
  bool singles = true;
  for (int c : r.single_counts) singles = singles && c == 8;
  rep.add("boolean_prbox_analysis", "each correlation alone holds in 8 of 16 assignments",
          singles,
          "counts " + std::to_string(r.single_counts[0]) + "," + std::to_string(r.single_counts[1]) +
              "," + std::to_string(r.single_counts[2]) + "," + std::to_string(r.single_counts[3]));
  rep.add("boolean_prbox_analysis", "the conjunction of all four correlations is 0",
          r.all_four_count == 0, std::to_string(r.all_four_count) + " satisfying assignments");
  bool triples = true;
  std::string tdetail;
  for (int k = 0; k < 4; ++k) {
    triples = triples && r.triple_counts[k] == 2;
    if (k) tdetail += ",";
    tdetail += std::to_string(r.triple_counts[k]);
  }
  rep.add("boolean_prbox_analysis", "every triple of correlations is satisfiable, 2 assignments each",
          triples, "counts " + tdetail);
  bool anti_invariant = true;
  for (int anti = 0; anti < 4; ++anti) {
    anti_invariant = anti_invariant && boolean_prbox_analysis(anti).all_four_count == 0;
  }
  rep.add("boolean_prbox_analysis", "the joint contradiction is invariant under moving the anticorrelation",
          anti_invariant);
  return rep;
}

inline Report prbox_quantum(const PrBoxConfig& cfg = {}) {
  Report rep;
  rep.demo_name = "prbox-quantum";
  rep.anchor = "box-correlations-quantum";
  auto r = quantum_prbox_meet(cfg);
  rep.add("quantum_prbox_meet", "all constituents of the two correlations commute",
          r.constituents_commute);
  rep.add("quantum_prbox_meet",
          "each correlation rewrites as the meet of its two commuting co-atoms", r.rewrite_ok);
  rep.add("is_distributive_triple", "(a1, b1', b2') is a distributive triple",
          r.triple_distributive);
  rep.add("quantum_prbox_meet", "a1 OR (b1' AND b2') = (a1 OR b1') AND (a1 OR b2')",
          r.distribution_identity_ok, "both sides equal " + r.phi_bound.str());
  rep.add("quantum_prbox_meet", "the derivation pins any common atom below a1 AND a1' = 0",
          r.derivation_meet_zero, "derived bound " + r.derivation_meet.str());
  rep.add("subspace_intersect", "the direct support meet of correlations 1 and 2 is 0",
          r.meet_is_zero, "meet = " + r.pair_meet.str());
  rep.add("quantum_prbox_meet", "derivation replay agrees with the direct intersection",
          r.routes_agree);
  bool six_zero = true;
  std::string detail;
  for (const auto& pc : r.pairwise) {
    six_zero = six_zero && pc.meet.is_zero();
    if (!detail.empty()) detail += "; ";
    detail += std::to_string(pc.i + 1) + "&" + std::to_string(pc.j + 1) + ":" +
              (pc.meet.is_zero() ? "0" : pc.meet.str());
  }
  rep.add("subspace_intersect", "all six pairwise support meets are 0", six_zero, detail);
  return rep;
}

inline Report entangled_atom() {
  Report rep;
  rep.demo_name = "entangled-atom";
  rep.anchor = "product-lattice-entanglement";
  auto te = standard_two_qubit_embedding();
  const auto& pe = te.embedding;
  rep.add("tensor_product_embedding",
          "two-qubit fragment built from factor images and the ray e00+e11",
          pe.product.size() == 24, std::to_string(pe.product.size()) + " elements");

  auto prod_rep = verify_product_conditions(pe);
  rep.add("verify_product_conditions", "factor images are independent (condition 2)",
          prod_rep.independence_ok);
  rep.add("verify_product_conditions", "images of factor blocks generate maximal Boolean blocks",
          prod_rep.boolean_block_ok);

  auto entangled = find_entangled_atoms(pe);
  rep.add("find_entangled_atoms", "the fragment has atoms of no product form",
          !entangled.empty(), std::to_string(entangled.size()) + " entangled atoms");
  bool outside = !prod_rep.generation_ok && !entangled.empty();
  for (int p : entangled) {
    outside = outside && std::find(prod_rep.unreached.begin(), prod_rep.unreached.end(), p) !=
                             prod_rep.unreached.end();
  }
  rep.add("verify_product_conditions",
          "the superposed atoms lie outside the sublattice the images generate "
          "(fragment-relative condition 4)",
          outside, std::to_string(prod_rep.unreached.size()) + " elements beyond the image closure");
  bool rank2 = !entangled.empty();
  std::string names;
  for (int p : entangled) {
    const Subspace& s = te.product_subspaces[p];
    rank2 = rank2 && s.dim() == 1 && schmidt_rank(s.basis()[0], 2, 2) == 2;
    if (!names.empty()) names += ", ";
    names += s.str();
  }
  rep.add("schmidt_rank", "every entangled atom has Schmidt rank 2", rank2, names);

  // the two product atoms a AND b and a' AND b' are strongly perspective
  int a = pe.factor_a.atoms()[0];
  int b = pe.factor_b.atoms()[0];
  int x = pe.product.meet(pe.inj_a[a], pe.inj_b[b]);
  int y = pe.product.meet(pe.inj_a[pe.factor_a.ortho_of(a)], pe.inj_b[pe.factor_b.ortho_of(b)]);
  auto w = strong_perspectivity_witness(pe.product, x, y);
  rep.add("strong_perspectivity_witness",
          "a AND b and a' AND b' share a complement in the lattice and in their span",
          w.has_value(),
          w ? "span complement " + te.product_subspaces[w->second].str() : "none found");
  if (w) {
    rep.add("strong_perspectivity_witness", "the span complement is a superposed atom",
            te.product_subspaces[w->second].dim() == 1 &&
                schmidt_rank(te.product_subspaces[w->second].basis()[0], 2, 2) == 2,
            te.product_subspaces[w->second].str());
  }
  return rep;
}

inline Report no_cloning() {
  Report rep;
  rep.demo_name = "no-cloning";
  rep.anchor = "lattice-no-cloning";
  struct Case {
    Vec a1, a2, beta;
  };
  std::vector<Case> cases{{Vec{1, 0}, Vec{1, 1}, Vec{1, 0}},
                          {Vec{1, 0}, Vec{1, -1}, Vec{0, 1}},
                          {Vec{1, 1}, Vec{1, 0}, Vec{1, 2}}};
  for (const auto& c : cases) {
    auto r = no_cloning_obstruction(Subspace::ray(c.a1), Subspace::ray(c.a2), Subspace::ray(c.beta));
    std::string tag = "a1=" + vec_to_string(c.a1) + ", a2=" + vec_to_string(c.a2) +
                      ", beta=" + vec_to_string(c.beta);
    rep.add("no_cloning_obstruction", "the input a2 (x) beta lies under the ready-state span",
            r.input_constraint_holds, tag);
    rep.add("no_cloning_obstruction",
            "the required output a2 (x) a2 escapes the span of the cloned pair", r.output_escapes,
            tag);
  }
  bool bad_input_raised = false;
  try {
    no_cloning_obstruction(Subspace::ray(Vec{1, 0}), Subspace::ray(Vec{1, 0}),
                           Subspace::ray(Vec{0, 1}));
  } catch (const BadInput&) {
    bad_input_raised = true;
  }
  rep.add("no_cloning_obstruction", "cloning a basis state alone raises no obstruction (BadInput)",
          bad_input_raised);
  return rep;
}

inline std::array<CMat, 3> standard_projector_triple() {
  CMat a(2, 2), b(2, 2), c(2, 2);
  a << 1, 0, 0, 0;
  b << 0.5, 0.5, 0.5, 0.5;
  c << 0.5, std::complex<double>(0, -0.5), std::complex<double>(0, 0.5), 0.5;
  return {a, b, c};
}

inline Report cabello() {
  Report rep;
  rep.demo_name = "cabello";
  rep.anchor = "povm-noncontextuality";
  auto [a, b, c] = standard_projector_triple();
  auto povms = cabello_povms(a, b, c);
  double max_sum_dev = 0.0;
  for (const auto& p : povms) {
    max_sum_dev = std::max(max_sum_dev, validate_povm(p.effects).max_sum_dev);
  }
  rep.add("validate_povm", "all three effect sets are POVMs", max_sum_dev <= 1e-9,
          "max sum deviation " + fmt_double(max_sum_dev));
  std::set<std::string> labels;
  for (const auto& p : povms) {
    for (const auto& e : p.effects) labels.insert(e.label);
  }
  rep.add("cabello_povms", "the three sets share exactly 6 distinct effect labels",
          labels.size() == 6, std::to_string(labels.size()) + " labels");
  auto found = noncontextual_assignment_search({povms.begin(), povms.end()});
  rep.add("noncontextual_assignment_search",
          "no 0/1 assignment picks exactly one effect from each POVM", found.empty(),
          std::to_string(found.size()) + " of 64 assignments valid");
  return rep;
}

inline Report cabello_commuting() {
  Report rep;
  rep.demo_name = "cabello-commuting";
  rep.anchor = "povm-noncontextuality-three-qubit";
  auto [a, b, c] = standard_projector_triple();
  auto r = three_qubit_commuting_sets(a, b, c);
  rep.add("three_qubit_commuting_sets", "all six slot operators pairwise commute",
          r.max_commutator_norm < 1e-12, "max commutator norm " + fmt_double(r.max_commutator_norm));
  rep.add("validate_povm", "each set sums to the identity on the three-qubit space",
          r.max_sum_dev < 1e-12, "max sum deviation " + fmt_double(r.max_sum_dev));
  rep.add("noncontextual_assignment_search",
          "still no way to pick exactly one effect per set", r.assignment_count == 0,
          std::to_string(r.assignment_count) + " of " + std::to_string(r.assignments_searched) +
              " assignments valid");
  return rep;
}

inline Report sequential_povm_demo(double theta = std::numbers::pi / 6) {
  Report rep;
  rep.demo_name = "sequential-povm";
  rep.anchor = "sequential-measurement-povm";
  ProjectivePair z = z_measurement();
  ProjectivePair plus = spin_measurement(theta);
  ProjectivePair minus = spin_measurement(-theta);
  Povm pov_plus = sequential_povm(z, plus);
  Povm pov_minus = sequential_povm(z, minus);
  double dev = 0.0;
  for (size_t k = 0; k < pov_plus.effects.size(); ++k) {
    dev = std::max(dev, max_abs(pov_plus.effects[k].matrix - pov_minus.effects[k].matrix));
  }
  rep.add("sequential_povm", "the +theta and -theta experiments have identical POVMs", dev <= 1e-9,
          "max elementwise deviation " + fmt_double(dev));

  double cw = std::cos(theta / 2) * std::cos(theta / 2);
  double sw = std::sin(theta / 2) * std::sin(theta / 2);
  double wdev = 0.0;
  wdev = std::max(wdev, max_abs(pov_plus.effects[0].matrix - cw * z.p0));
  wdev = std::max(wdev, max_abs(pov_plus.effects[1].matrix - sw * z.p0));
  wdev = std::max(wdev, max_abs(pov_plus.effects[2].matrix - sw * z.p1));
  wdev = std::max(wdev, max_abs(pov_plus.effects[3].matrix - cw * z.p1));
  rep.add("sequential_povm", "the effects are the first-stage projectors weighted by cos^2, sin^2",
          wdev <= 1e-12,
          "weights " + fmt_double(cw) + ", " + fmt_double(sw) + "; max deviation " + fmt_double(wdev));

  CVec zero_state(2);
  zero_state << 1, 0;
  CVec after_plus = post_measurement_state(zero_state, z, plus, {0, 0});
  CVec after_minus = post_measurement_state(zero_state, z, minus, {0, 0});
  double td = trace_distance(after_plus, after_minus);
  rep.add("post_measurement_state",
          "identical POVMs, distinct post-states: trace distance |sin theta|",
          std::abs(td - std::abs(std::sin(theta))) <= 1e-9, "trace distance " + fmt_double(td));
  return rep;
}

inline Report entwinement() {
  Report rep;
  rep.demo_name = "entwinement";
  rep.anchor = "frame-entwinement";
  const double s = 1.0 / std::sqrt(2.0);
  CVec e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  CVec p(2), m(2);
  p << s, s;
  m << s, -s;
  Frame zf({e1, e2}), xf({p, m});
  rep.add("entwined", "distinct qubit frames are never entwined", !entwined(zf, xf),
          "z-frame vs x-frame");
  ProjectivePair tilted = spin_measurement(std::numbers::pi / 6);
  Eigen::SelfAdjointEigenSolver<CMat> es(tilted.p0);
  Frame tf({es.eigenvectors().col(0), es.eigenvectors().col(1)});
  rep.add("entwined", "the same holds for a tilted qubit frame",
          !entwined(zf, tf) && !entwined(xf, tf), "pi/6 frame vs both");

  CVec f1(3), f2(3), f3(3), g2(3), g3(3);
  f1 << 1, 0, 0;
  f2 << 0, 1, 0;
  f3 << 0, 0, 1;
  g2 << 0, s, s;
  g3 << 0, s, -s;
  Frame basis3({f1, f2, f3}), mixed3({f1, g2, g3});
  rep.add("entwined", "dimension-3 frames sharing one ray of three are entwined",
          entwined(basis3, mixed3), "shared ray e1");

  auto [a, b, c] = standard_projector_triple();
  auto povms = cabello_povms(a, b, c);
  bool povm_entwined = true;
  for (size_t i = 0; i < 3 && povm_entwined; ++i) {
    for (size_t j = i + 1; j < 3; ++j) {
      std::set<std::string> li, shared;
      for (const auto& e : povms[i].effects) li.insert(e.label);
      for (const auto& e : povms[j].effects) {
        if (li.count(e.label)) shared.insert(e.label);
      }
      povm_entwined = povm_entwined && !shared.empty() && shared.size() < li.size();
    }
  }
  rep.add("cabello_povms", "qubit POVM contexts do entwine: each pair shares some but not all effects",
          povm_entwined);
  return rep;
}

inline Report gleason_2d() {
  Report rep;
  rep.demo_name = "gleason-2d";
  rep.anchor = "dimension-two-frame-freedom";
  const double s = 1.0 / std::sqrt(2.0);
  CVec e1(2), e2(2), p(2), m(2);
  e1 << 1, 0;
  e2 << 0, 1;
  p << s, s;
  m << s, -s;
  Frame zf({e1, e2}), xf({p, m});
  rep.add("entwined", "the two qubit frames are not entwined", !entwined(zf, xf));

  auto near = [](const CVec& u, const CVec& v) {
    return std::abs(std::abs((u.adjoint() * v)(0, 0)) - 1.0) < 1e-9;
  };
  auto f2d = [&](const CVec& v) -> double {
    if (near(v, e1)) return 0.3;
    if (near(v, e2)) return 0.7;
    if (near(v, p)) return 0.9;
    if (near(v, m)) return 0.1;
    return 0.0;
  };
  auto free_check = frame_function_check(f2d, {zf, xf});
  rep.add("frame_function_check",
          "values assigned independently per qubit frame still form a frame function",
          free_check.constant_sum && free_check.probability(),
          "r = " + fmt_double(free_check.r) + ", max residual " + fmt_double(free_check.max_residual));

  CVec psi(3);
  psi << 1.0 / 3, 2.0 / 3, 2.0 / 3;
  auto born = [&](const CVec& v) { return std::norm((psi.adjoint() * v)(0, 0)); };
  CVec f1(3), f2(3), f3(3), g2(3), g3(3), h1(3), h3(3);
  f1 << 1, 0, 0;
  f2 << 0, 1, 0;
  f3 << 0, 0, 1;
  g2 << 0, s, s;
  g3 << 0, s, -s;
  h1 << s, 0, s;
  h3 << s, 0, -s;
  std::vector<Frame> frames{Frame({f1, f2, f3}), Frame({f1, g2, g3}), Frame({h1, f2, h3})};
  auto born_check = frame_function_check(born, frames);
  rep.add("frame_function_check", "the Born weights of a fixed state sum to 1 on every frame",
          born_check.probability(),
          "r = " + fmt_double(born_check.r) + ", max residual " + fmt_double(born_check.max_residual));
  return rep;
}

}  // namespace demos

inline Report run_demo(const std::string& name) {
  if (name == "prbox-boolean") return demos::prbox_boolean();
  if (name == "prbox-quantum") return demos::prbox_quantum();
  if (name == "entangled-atom") return demos::entangled_atom();
  if (name == "no-cloning") return demos::no_cloning();
  if (name == "cabello") return demos::cabello();
  if (name == "cabello-commuting") return demos::cabello_commuting();
  if (name == "sequential-povm") return demos::sequential_povm_demo();
  if (name == "entwinement") return demos::entwinement();
  if (name == "gleason-2d") return demos::gleason_2d();
  throw UnknownDemo("unknown demo '" + name + "'");
}

inline const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{
      "prbox-boolean", "prbox-quantum",    "entangled-atom", "no-cloning",      "cabello",
      "cabello-commuting", "sequential-povm", "entwinement",    "gleason-2d"};
  return names;
}

}  // namespace omlkit
