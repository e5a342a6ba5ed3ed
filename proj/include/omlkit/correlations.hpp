#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "omlkit/lattice.hpp"
#include "omlkit/subspace.hpp"

namespace omlkit {

struct BadConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Parity { correlated, anticorrelated };

/// The lattice polynomial of a correlation between the pair {x, x'} and the
/// pair {y, y'}: (x AND y) OR (x' AND y') for positive parity, crossed for
/// negative.
inline int correlation_polynomial(const FiniteOML& l, int x, int y, Parity parity) {
  int xo = l.ortho_of(x), yo = l.ortho_of(y);
  if (parity == Parity::anticorrelated) std::swap(y, yo);
  return l.join(l.meet(x, y), l.meet(xo, yo));
}

/// The four box correlations over two bits per side, evaluated over all 16
/// truth assignments. Events are assignment masks; bit m of an event is set
/// iff assignment m satisfies the correlation. Assignment m encodes
/// (a1, a2, b1, b2) in its low four bits.
struct BooleanPrBoxReport {
  int anti_index = 3;
  std::array<uint16_t, 4> event_masks{};
  std::array<int, 4> single_counts{};
  int all_four_count = 0;
  std::array<int, 4> triple_counts{};  // count for the triple omitting correlation k
};

inline BooleanPrBoxReport boolean_prbox_analysis(int anti_index = 3) {
  if (anti_index < 0 || anti_index > 3) throw BadConfig("anti_index must be in 0..3");
  BooleanPrBoxReport rep;
  rep.anti_index = anti_index;
  // correlation k relates A-side setting xs[k] to B-side setting ys[k]
  constexpr std::array<int, 4> xs{0, 0, 1, 1};  // 0 = a1, 1 = a2
  constexpr std::array<int, 4> ys{2, 3, 2, 3};  // 2 = b1, 3 = b2
  for (int m = 0; m < 16; ++m) {
    for (int k = 0; k < 4; ++k) {
      bool equal = ((m >> xs[k]) & 1) == ((m >> ys[k]) & 1);
      if (equal != (k == anti_index)) rep.event_masks[k] |= uint16_t{1} << m;
    }
  }
  for (int k = 0; k < 4; ++k) {
    rep.single_counts[k] = __builtin_popcount(rep.event_masks[k]);
  }
  uint16_t all = 0xffff;
  for (int k = 0; k < 4; ++k) all &= rep.event_masks[k];
  rep.all_four_count = __builtin_popcount(all);
  for (int omit = 0; omit < 4; ++omit) {
    uint16_t t = 0xffff;
    for (int k = 0; k < 4; ++k) {
      if (k != omit) t &= rep.event_masks[k];
    }
    rep.triple_counts[omit] = __builtin_popcount(t);
  }
  return rep;
}

/// Ray settings for the two-qubit box exclusion argument. The two settings
/// on each side must not commute (a2 distinct from a1 and a1', likewise b2),
/// which is what the argument needs.
struct PrBoxConfig {
  Vec a1{1, 0};
  Vec a2{1, 1};
  Vec b1{1, 0};
  Vec b2{1, 2};
  int anti_index = 3;
};

struct PairMeetCheck {
  int i = 0, j = 0;
  bool shares_side = false;
  Subspace meet;
};

/// Everything the exclusion argument establishes, all computed exactly. The
/// headline value is pair_meet = support(corr 0) AND support(corr 1); the
/// derivation fields replay the commuting rewrite, the distributive-triple
/// step and the two bounds, and must reach the same zero subspace.
struct QuantumPrBoxReport {
  std::array<Subspace, 4> supports;
  Subspace pair_meet;
  bool meet_is_zero = false;
  bool constituents_commute = false;
  bool rewrite_ok = false;
  bool triple_distributive = false;
  bool distribution_identity_ok = false;
  Subspace phi_bound;       // the A-side image the first bound collapses to
  Subspace phi_bound_dual;  // its orthocomplement, from the dual bound
  Subspace derivation_meet;
  bool derivation_meet_zero = false;
  bool routes_agree = false;
  std::vector<PairMeetCheck> pairwise;  // all six pairs of correlations

  [[nodiscard]] bool all_checks_pass() const {
    return meet_is_zero && constituents_commute && rewrite_ok && triple_distributive &&
           distribution_identity_ok && derivation_meet_zero && routes_agree;
  }
};

namespace detail {

/// S commutes with T in L(V): S = (S AND T) OR (S AND T').
inline bool subspace_commutes(const Subspace& s, const Subspace& t) {
  return subspace_sum(subspace_intersect(s, t), subspace_intersect(s, subspace_ortho(t))) == s;
}

}  // namespace detail

inline QuantumPrBoxReport quantum_prbox_meet(const PrBoxConfig& cfg = {}) {
  if (cfg.anti_index < 0 || cfg.anti_index > 3) throw BadConfig("anti_index must be in 0..3");
  for (const Vec* v : {&cfg.a1, &cfg.a2, &cfg.b1, &cfg.b2}) {
    if (v->size() != 2 || is_zero_vec(*v)) throw BadConfig("settings must be nonzero rays in dim 2");
  }
  std::array<Subspace, 2> a{Subspace::ray(cfg.a1), Subspace::ray(cfg.a2)};
  std::array<Subspace, 2> b{Subspace::ray(cfg.b1), Subspace::ray(cfg.b2)};
  if (a[1] == a[0] || a[1] == subspace_ortho(a[0])) {
    throw BadConfig("the two A-side settings commute; the exclusion argument needs a2 to be a "
                    "superposition of a1 and a1'");
  }
  if (b[1] == b[0] || b[1] == subspace_ortho(b[0])) {
    throw BadConfig("the two B-side settings commute; the exclusion argument needs b2 to be a "
                    "superposition of b1 and b1'");
  }

  const Subspace full2 = Subspace::full(2);
  // product-lattice images of the settings and their complements
  auto a_img = [&](int i, bool prime) {
    return tensor_subspace(prime ? subspace_ortho(a[i]) : a[i], full2);
  };
  auto b_img = [&](int j, bool prime) {
    return tensor_subspace(full2, prime ? subspace_ortho(b[j]) : b[j]);
  };

  constexpr std::array<int, 4> xs{0, 0, 1, 1};
  constexpr std::array<int, 4> ys{0, 1, 0, 1};
  QuantumPrBoxReport rep;
  auto support = [&](int k) {
    bool anti = (k == cfg.anti_index);
    // (x AND y) OR (x' AND y'), with y and y' swapped for the anticorrelation
    return subspace_sum(subspace_intersect(a_img(xs[k], false), b_img(ys[k], anti)),
                        subspace_intersect(a_img(xs[k], true), b_img(ys[k], !anti)));
  };
  for (int k = 0; k < 4; ++k) rep.supports[k] = support(k);

  rep.pair_meet = subspace_intersect(rep.supports[0], rep.supports[1]);
  rep.meet_is_zero = rep.pair_meet.is_zero();

  // every A-side constituent commutes with every B-side constituent
  rep.constituents_commute = true;
  for (int i = 0; i < 2; ++i) {
    for (bool pa : {false, true}) {
      for (int j = 0; j < 2; ++j) {
        for (bool pb : {false, true}) {
          rep.constituents_commute =
              rep.constituents_commute && detail::subspace_commutes(a_img(i, pa), b_img(j, pb));
        }
      }
    }
  }

  // commuting rewrite: support(k) = (x OR yc) AND (x' OR yd), where {yc, yd}
  // are the B-side constituents crossed against the parity
  auto co_atoms = [&](int k) {
    bool anti = (k == cfg.anti_index);
    return std::array<Subspace, 2>{
        subspace_sum(a_img(xs[k], false), b_img(ys[k], !anti)),
        subspace_sum(a_img(xs[k], true), b_img(ys[k], anti))};
  };
  rep.rewrite_ok = true;
  for (int k : {0, 1}) {
    auto co = co_atoms(k);
    rep.rewrite_ok = rep.rewrite_ok && (subspace_intersect(co[0], co[1]) == rep.supports[k]);
  }

  // distributive triple (A1, C1, C2) with C1, C2 the B-side parts of the two
  // co-atoms containing A1
  Subspace a1_img = a_img(0, false);
  auto co1 = co_atoms(0), co2 = co_atoms(1);
  bool anti1 = (cfg.anti_index == 0), anti2 = (cfg.anti_index == 1);
  Subspace c1 = b_img(0, !anti1), c2 = b_img(1, !anti2);
  rep.triple_distributive =
      detail::subspace_commutes(a1_img, c1) && detail::subspace_commutes(a1_img, c2);
  Subspace lhs = subspace_sum(a1_img, subspace_intersect(c1, c2));
  Subspace rhs = subspace_intersect(subspace_sum(a1_img, c1), subspace_sum(a1_img, c2));
  rep.distribution_identity_ok = (lhs == rhs);
  // b-side settings are distinct rays, so C1 AND C2 = 0 and the bound is A1
  rep.phi_bound = lhs;
  // dual bound from the co-atoms containing A1'
  Subspace a1p_img = a_img(0, true);
  Subspace d1 = b_img(0, anti1), d2 = b_img(1, anti2);
  rep.phi_bound_dual = subspace_sum(a1p_img, subspace_intersect(d1, d2));
  rep.derivation_meet = subspace_intersect(rep.phi_bound, rep.phi_bound_dual);
  rep.derivation_meet_zero = rep.derivation_meet.is_zero();
  rep.routes_agree = (rep.pair_meet == rep.derivation_meet) &&
                     rep.phi_bound.contains(rep.pair_meet) &&
                     rep.phi_bound_dual.contains(rep.pair_meet);

  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      PairMeetCheck pc;
      pc.i = i;
      pc.j = j;
      pc.shares_side = (xs[i] == xs[j]) || (ys[i] == ys[j]);
      pc.meet = subspace_intersect(rep.supports[i], rep.supports[j]);
      rep.pairwise.push_back(std::move(pc));
    }
  }
  return rep;
}

}  // namespace omlkit
