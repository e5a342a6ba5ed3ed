#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "omlkit/closure.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/predicates.hpp"
#include "omlkit/subspace.hpp"

namespace omlkit {

struct EmbeddingInvariantViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A candidate lattice product: two factor lattices injected into a product
/// lattice by order- and ortho-preserving maps.
struct ProductEmbedding {
  FiniteOML factor_a;
  FiniteOML factor_b;
  FiniteOML product;
  std::vector<int> inj_a;  // factor_a element index -> product element index
  std::vector<int> inj_b;
};

/// Per-condition outcome of verify_product_conditions. Flags are false iff
/// their witness data is non-empty; the reports carry the full detail.
struct ProductReport {
  PironReport product_piron;
  PironReport factor_a_piron;
  PironReport factor_b_piron;
  // Condition 1, taken relative to the factors: the product must satisfy
  // every structural flag that holds in both factors.
  bool piron_ok = false;
  std::vector<std::string> piron_witnesses;

  bool independence_ok = false;
  std::vector<std::pair<int, int>> independence_witnesses;  // factor indices, meet = 0

  bool boolean_block_ok = false;
  std::vector<std::string> block_witnesses;

  bool generation_ok = false;
  std::vector<int> unreached;  // product elements not generated by the images

  [[nodiscard]] bool all_ok() const {
    return piron_ok && independence_ok && boolean_block_ok && generation_ok;
  }
};

namespace detail {

inline void validate_embedding_side(const FiniteOML& factor, const FiniteOML& product,
                                    const std::vector<int>& inj, const char* side) {
  const int n = static_cast<int>(factor.size());
  std::string s(side);
  if (inj.size() != factor.size()) {
    throw EmbeddingInvariantViolated("inj_" + s + " does not cover the factor");
  }
  for (int x = 0; x < n; ++x) {
    if (inj[x] < 0 || inj[x] >= static_cast<int>(product.size())) {
      throw EmbeddingInvariantViolated("inj_" + s + " maps outside the product");
    }
    for (int y = 0; y < n; ++y) {
      if (x != y && inj[x] == inj[y]) {
        throw EmbeddingInvariantViolated("inj_" + s + " is not injective");
      }
      if (factor.leq(x, y) != product.leq(inj[x], inj[y])) {
        throw EmbeddingInvariantViolated("inj_" + s + " is not an order isomorphism onto its image");
      }
    }
    if (inj[factor.ortho_of(x)] != product.ortho_of(inj[x])) {
      throw EmbeddingInvariantViolated("inj_" + s + " does not preserve orthocomplement");
    }
  }
  if (inj[factor.zero()] != product.zero() || inj[factor.one()] != product.one()) {
    throw EmbeddingInvariantViolated("inj_" + s + " does not map bounds to bounds");
  }
}

/// Closure of a subset under the product's meet/join/ortho tables.
inline std::set<int> table_closure(const FiniteOML& l, std::set<int> gen) {
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(gen.begin(), gen.end());
    for (int x : cur) {
      if (gen.insert(l.ortho_of(x)).second) grew = true;
    }
    for (size_t i = 0; i < cur.size(); ++i) {
      for (size_t j = i; j < cur.size(); ++j) {
        if (gen.insert(l.meet(cur[i], cur[j])).second) grew = true;
        if (gen.insert(l.join(cur[i], cur[j])).second) grew = true;
      }
    }
  }
  return gen;
}

/// Minimal nonzero elements of a sublattice given as an element set.
inline std::vector<int> sublattice_atoms(const FiniteOML& l, const std::set<int>& sub) {
  std::vector<int> atoms;
  for (int x : sub) {
    if (x == l.zero()) continue;
    bool minimal = true;
    for (int y : sub) {
      if (y != l.zero() && y != x && l.lt(y, x)) {
        minimal = false;
        break;
      }
    }
    if (minimal) atoms.push_back(x);
  }
  return atoms;
}

}  // namespace detail

inline void validate_embedding(const ProductEmbedding& pe) {
  detail::validate_embedding_side(pe.factor_a, pe.product, pe.inj_a, "a");
  detail::validate_embedding_side(pe.factor_b, pe.product, pe.inj_b, "b");
}

/// Check the four product conditions on a candidate product, exhaustively.
/// On truncated fragments the verdicts are fragment-relative.
inline ProductReport verify_product_conditions(const ProductEmbedding& pe) {
  validate_embedding(pe);
  ProductReport rep;
  const FiniteOML& prod = pe.product;

  // Condition 1: the product is a lattice of the same type as the factors.
  rep.product_piron = check_piron(prod);
  rep.factor_a_piron = check_piron(pe.factor_a);
  rep.factor_b_piron = check_piron(pe.factor_b);
  rep.piron_ok = true;
  auto require_flag = [&](bool fa, bool fb, bool p, const char* what) {
    if (fa && fb && !p) {
      rep.piron_ok = false;
      rep.piron_witnesses.emplace_back(what);
    }
  };
  require_flag(rep.factor_a_piron.is_orthomodular, rep.factor_b_piron.is_orthomodular,
               rep.product_piron.is_orthomodular, "orthomodular");
  require_flag(rep.factor_a_piron.is_atomic, rep.factor_b_piron.is_atomic,
               rep.product_piron.is_atomic, "atomic");
  require_flag(rep.factor_a_piron.is_complete, rep.factor_b_piron.is_complete,
               rep.product_piron.is_complete, "complete");
  require_flag(rep.factor_a_piron.is_irreducible, rep.factor_b_piron.is_irreducible,
               rep.product_piron.is_irreducible, "irreducible");
  require_flag(rep.factor_a_piron.satisfies_covering, rep.factor_b_piron.satisfies_covering,
               rep.product_piron.satisfies_covering, "covering");

  // Condition 2: independence. Nonzero images always meet in nonzero.
  rep.independence_ok = true;
  for (size_t a = 0; a < pe.factor_a.size(); ++a) {
    if (static_cast<int>(a) == pe.factor_a.zero()) continue;
    for (size_t b = 0; b < pe.factor_b.size(); ++b) {
      if (static_cast<int>(b) == pe.factor_b.zero()) continue;
      if (prod.meet(pe.inj_a[a], pe.inj_b[b]) == prod.zero()) {
        rep.independence_ok = false;
        rep.independence_witnesses.emplace_back(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }

  // Condition 3: images of maximal Boolean blocks generate maximal Boolean
  // products of the blocks.
  rep.boolean_block_ok = true;
  if (rep.product_piron.is_orthomodular && rep.factor_a_piron.is_orthomodular &&
      rep.factor_b_piron.is_orthomodular) {
    auto blocks_a = maximal_boolean_blocks(pe.factor_a);
    auto blocks_b = maximal_boolean_blocks(pe.factor_b);
    for (size_t ia = 0; ia < blocks_a.size(); ++ia) {
      for (size_t ib = 0; ib < blocks_b.size(); ++ib) {
        std::set<int> gen;
        for (int x : blocks_a[ia]) gen.insert(pe.inj_a[x]);
        for (int y : blocks_b[ib]) gen.insert(pe.inj_b[y]);
        std::set<int> block = detail::table_closure(prod, std::move(gen));
        std::string tag = "block pair (" + std::to_string(ia) + "," + std::to_string(ib) + "): ";
        bool commuting = true;
        for (int x : block) {
          for (int y : block) {
            if (!commutes(prod, x, y)) commuting = false;
          }
        }
        if (!commuting) {
          rep.boolean_block_ok = false;
          rep.block_witnesses.push_back(tag + "generated sublattice is not Boolean");
          continue;
        }
        size_t na = detail::sublattice_atoms(pe.factor_a, {blocks_a[ia].begin(), blocks_a[ia].end()}).size();
        size_t nb = detail::sublattice_atoms(pe.factor_b, {blocks_b[ib].begin(), blocks_b[ib].end()}).size();
        size_t nprod = detail::sublattice_atoms(prod, block).size();
        if (nprod != na * nb) {
          rep.boolean_block_ok = false;
          rep.block_witnesses.push_back(tag + "atom count " + std::to_string(nprod) +
                                        " != " + std::to_string(na) + "*" + std::to_string(nb));
        }
        // maximality: nothing outside the block commutes with all of it
        for (size_t x = 0; x < prod.size(); ++x) {
          int xi = static_cast<int>(x);
          if (block.count(xi)) continue;
          bool commutes_all = true;
          for (int y : block) {
            if (!commutes(prod, xi, y) || !commutes(prod, y, xi)) {
              commutes_all = false;
              break;
            }
          }
          if (commutes_all) {
            rep.boolean_block_ok = false;
            rep.block_witnesses.push_back(tag + "not maximal, " + prod.name(xi) +
                                          " commutes with the whole block");
          }
        }
      }
    }
  } else {
    rep.boolean_block_ok = false;
    rep.block_witnesses.emplace_back("skipped: a lattice involved is not orthomodular");
  }

  // Condition 4: the images generate the product.
  std::set<int> gen;
  for (size_t a = 0; a < pe.factor_a.size(); ++a) gen.insert(pe.inj_a[a]);
  for (size_t b = 0; b < pe.factor_b.size(); ++b) gen.insert(pe.inj_b[b]);
  std::set<int> reached = detail::table_closure(prod, std::move(gen));
  rep.generation_ok = reached.size() == prod.size();
  for (size_t x = 0; x < prod.size(); ++x) {
    if (!reached.count(static_cast<int>(x))) rep.unreached.push_back(static_cast<int>(x));
  }
  return rep;
}

/// Atoms of the product that are not of the form inj_a(alpha) AND inj_b(beta)
/// for any pair of factor atoms. Exhaustive.
inline std::vector<int> find_entangled_atoms(const ProductEmbedding& pe) {
  validate_embedding(pe);
  std::vector<int> out;
  for (int p : pe.product.atoms()) {
    bool product_form = false;
    for (int alpha : pe.factor_a.atoms()) {
      for (int beta : pe.factor_b.atoms()) {
        if (pe.product.meet(pe.inj_a[alpha], pe.inj_b[beta]) == p) {
          product_form = true;
          break;
        }
      }
      if (product_form) break;
    }
    if (!product_form) out.push_back(p);
  }
  return out;
}

/// Strong perspectivity: a common complement of x and y in the whole lattice
/// together with a common complement within their own span (a nonzero p with
/// p AND x = p AND y = 0 and p OR x = p OR y = x OR y). Returns the smallest
/// witnesses in element order, or nullopt if either part is missing.
inline std::optional<std::pair<int, int>> strong_perspectivity_witness(const FiniteOML& l, int x,
                                                                       int y) {
  const int n = static_cast<int>(l.size());
  int global = -1;
  for (int c = 0; c < n && global < 0; ++c) {
    if (l.meet(c, x) == l.zero() && l.join(c, x) == l.one() && l.meet(c, y) == l.zero() &&
        l.join(c, y) == l.one()) {
      global = c;
    }
  }
  if (global < 0) return std::nullopt;
  int span = l.join(x, y);
  for (int p = 0; p < n; ++p) {
    if (p == l.zero()) continue;
    if (l.meet(p, x) == l.zero() && l.meet(p, y) == l.zero() && l.join(p, x) == span &&
        l.join(p, y) == span) {
      return std::make_pair(global, p);
    }
  }
  return std::nullopt;
}

/// The order facts behind the lattice no-cloning argument, checked exactly on
/// two-qubit subspaces.
struct ObstructionReport {
  Subspace clone_input;       // a2 (x) beta
  Subspace ready_span;        // (a1 (x) beta) OR (a1' (x) beta)
  Subspace required_output;   // a2 (x) a2
  Subspace cloned_span;       // (a1 (x) a1) OR (a1' (x) a1')
  bool input_constraint_holds = false;  // clone_input <= ready_span
  bool output_escapes = false;          // required_output is not <= cloned_span
  [[nodiscard]] bool obstruction_established() const {
    return input_constraint_holds && output_escapes;
  }
};

/// A cloning automorphism would have to carry a2 (x) beta into a2 (x) a2
/// while fixing the span it must live in; these two exact order checks show
/// no such map exists when a2 is a superposition of a1 and a1'.
inline ObstructionReport no_cloning_obstruction(const Subspace& a1, const Subspace& a2,
                                                const Subspace& beta) {
  for (const Subspace* s : {&a1, &a2, &beta}) {
    if (s->ambient_dim() != 2 || s->dim() != 1) {
      throw BadInput("no_cloning_obstruction expects rays in dimension 2");
    }
  }
  Subspace a1p = subspace_ortho(a1);
  if (a2 == a1 || a2 == a1p) {
    throw BadInput("a2 must be a superposition of a1 and a1', not one of them");
  }
  ObstructionReport rep;
  rep.clone_input = tensor_subspace(a2, beta);
  rep.ready_span = subspace_sum(tensor_subspace(a1, beta), tensor_subspace(a1p, beta));
  rep.required_output = tensor_subspace(a2, a2);
  rep.cloned_span = subspace_sum(tensor_subspace(a1, a1), tensor_subspace(a1p, a1p));
  rep.input_constraint_holds = rep.ready_span.contains(rep.clone_input);
  rep.output_escapes = !rep.cloned_span.contains(rep.required_output);
  return rep;
}

/// Product fragment built from tensor images of two subspace lattices, with
/// optional extra seed subspaces; the embeddings send S to S (x) V and V (x) S.
struct TensorEmbeddingResult {
  ProductEmbedding embedding;
  std::vector<Subspace> factor_a_subspaces;
  std::vector<Subspace> factor_b_subspaces;
  std::vector<Subspace> product_subspaces;
};

inline TensorEmbeddingResult tensor_product_embedding(const SubspaceLattice& a,
                                                      const SubspaceLattice& b,
                                                      const std::vector<Subspace>& extra_seeds,
                                                      int closure_depth,
                                                      size_t cap = kDefaultClosureCap) {
  const size_t dim_a = a.subspaces.empty() ? 0 : a.subspaces.front().ambient_dim();
  const size_t dim_b = b.subspaces.empty() ? 0 : b.subspaces.front().ambient_dim();
  Subspace full_a = Subspace::full(dim_a);
  Subspace full_b = Subspace::full(dim_b);
  std::vector<Subspace> seeds;
  for (const auto& s : a.subspaces) seeds.push_back(tensor_subspace(s, full_b));
  for (const auto& t : b.subspaces) seeds.push_back(tensor_subspace(full_a, t));
  seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());
  SubspaceLattice prod = subspace_lattice_closure(dim_a * dim_b, seeds, closure_depth, cap);

  std::vector<int> inj_a(a.subspaces.size()), inj_b(b.subspaces.size());
  for (size_t i = 0; i < a.subspaces.size(); ++i) {
    inj_a[i] = prod.index_of(tensor_subspace(a.subspaces[i], full_b));
    if (inj_a[i] < 0) throw std::logic_error("image of factor A element missing from closure");
  }
  for (size_t i = 0; i < b.subspaces.size(); ++i) {
    inj_b[i] = prod.index_of(tensor_subspace(full_a, b.subspaces[i]));
    if (inj_b[i] < 0) throw std::logic_error("image of factor B element missing from closure");
  }
  return TensorEmbeddingResult{
      ProductEmbedding{a.lattice, b.lattice, prod.lattice, std::move(inj_a), std::move(inj_b)},
      a.subspaces, b.subspaces, std::move(prod.subspaces)};
}

/// Render a ProductReport as text, one section per product condition.
inline std::string product_report_text(const ProductReport& rep, const ProductEmbedding& pe) {
  auto flag = [](bool b) { return b ? "pass" : "fail"; };
  auto profile = [](const PironReport& p) {
    std::string s;
    s += std::string("orthomodular=") + (p.is_orthomodular ? "yes" : "no");
    s += std::string(", atomic=") + (p.is_atomic ? "yes" : "no");
    s += std::string(", complete=") + (p.is_complete ? "yes" : "no");
    s += std::string(", irreducible=") + (p.is_irreducible ? "yes" : "no");
    s += std::string(", covering=") + (p.satisfies_covering ? "yes" : "no");
    return s;
  };
  std::string out;
  out += std::string("condition 1 (product of the factors' type): ") + flag(rep.piron_ok) + "\n";
  out += "  factor A: " + profile(rep.factor_a_piron) + "\n";
  out += "  factor B: " + profile(rep.factor_b_piron) + "\n";
  out += "  product:  " + profile(rep.product_piron) + "\n";
  for (const auto& w : rep.piron_witnesses) out += "  missing in product: " + w + "\n";
  out += std::string("condition 2 (independence): ") + flag(rep.independence_ok) + "\n";
  for (size_t k = 0; k < rep.independence_witnesses.size() && k < 8; ++k) {
    const auto& [a, b] = rep.independence_witnesses[k];
    out += "  zero meet: " + pe.factor_a.name(a) + " with " + pe.factor_b.name(b) + "\n";
  }
  out += std::string("condition 3 (maximal Boolean block products): ") + flag(rep.boolean_block_ok) +
         "\n";
  for (const auto& w : rep.block_witnesses) out += "  " + w + "\n";
  out += std::string("condition 4 (images generate): ") + flag(rep.generation_ok) + "\n";
  if (!rep.unreached.empty()) {
    out += "  unreached:";
    for (size_t k = 0; k < rep.unreached.size() && k < 8; ++k) {
      out += " " + pe.product.name(rep.unreached[k]);
    }
    if (rep.unreached.size() > 8) {
      out += " ... (" + std::to_string(rep.unreached.size()) + " total)";
    }
    out += "\n";
  }
  return out;
}

/// The classical case: boolean(na) x boolean(nb) -> boolean(na*nb), with
/// product atoms indexed by atom pairs (i, j) -> i*nb + j.
inline ProductEmbedding boolean_product_embedding(int na, int nb) {
  FiniteOML fa = FiniteOML::boolean(na);
  FiniteOML fb = FiniteOML::boolean(nb);
  FiniteOML prod = FiniteOML::boolean(na * nb);
  // Element s of boolean(n) is the subset with bit k set iff atom k+1 lies
  // below it; the generators order elements so that element index == subset.
  std::vector<int> inj_a(fa.size()), inj_b(fb.size());
  for (size_t s = 0; s < fa.size(); ++s) {
    size_t image = 0;
    for (int i = 0; i < na; ++i) {
      if (!(s & (size_t{1} << i))) continue;
      for (int j = 0; j < nb; ++j) image |= size_t{1} << (i * nb + j);
    }
    inj_a[s] = static_cast<int>(image);
  }
  for (size_t t = 0; t < fb.size(); ++t) {
    size_t image = 0;
    for (int j = 0; j < nb; ++j) {
      if (!(t & (size_t{1} << j))) continue;
      for (int i = 0; i < na; ++i) image |= size_t{1} << (i * nb + j);
    }
    inj_b[t] = static_cast<int>(image);
  }
  return ProductEmbedding{std::move(fa), std::move(fb), std::move(prod), std::move(inj_a),
                          std::move(inj_b)};
}

}  // namespace omlkit
