#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "omlkit/lattice.hpp"

namespace omlkit {

struct NotOrthomodular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Outcome of an exhaustive lattice predicate: the flag plus every violating
/// element tuple, smallest-first.
struct PredicateResult {
  bool ok = true;
  std::vector<std::vector<int>> witnesses;
};

/// aCb: a = (a AND b) OR (a AND b').
inline bool commutes(const FiniteOML& l, int a, int b) {
  return l.join(l.meet(a, b), l.meet(a, l.ortho_of(b))) == a;
}

/// For every a <= b, b = a OR (b AND a'). Witnesses are the violating
/// (a, b) pairs.
inline PredicateResult check_orthomodular(const FiniteOML& l) {
  PredicateResult res;
  const int n = static_cast<int>(l.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!l.leq(a, b)) continue;
      if (l.join(a, l.meet(b, l.ortho_of(a))) != b) {
        res.ok = false;
        res.witnesses.push_back({a, b});
      }
    }
  }
  return res;
}

/// Symmetry of the commutes relation; equivalent to orthomodularity for
/// ortholattices, which the tests check extensionally.
inline PredicateResult check_commutation_symmetry(const FiniteOML& l) {
  PredicateResult res;
  const int n = static_cast<int>(l.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (commutes(l, a, b) != commutes(l, b, a)) {
        res.ok = false;
        res.witnesses.push_back({a, b});
      }
    }
  }
  return res;
}

/// The center: elements commuting with everything.
inline std::vector<int> center(const FiniteOML& l) {
  std::vector<int> c;
  const int n = static_cast<int>(l.size());
  for (int a = 0; a < n; ++a) {
    bool central = true;
    for (int b = 0; b < n && central; ++b) central = commutes(l, a, b) && commutes(l, b, a);
    if (central) c.push_back(a);
  }
  return c;
}

/// The bundle of conditions on a finite ortholattice that mirror the
/// complete / atomic / irreducible / covering requirements, together with
/// orthomodularity. A flag is false iff its witness list is non-empty
/// (is_lattice and is_ortho hold by construction of FiniteOML and carry no
/// witness list; is_complete is trivially true on finite lattices and is
/// reported for interface parity).
struct PironReport {
  bool is_lattice = true;
  bool is_ortho = true;
  bool is_orthomodular = false;
  bool is_atomic = false;
  bool is_complete = true;
  bool is_irreducible = false;
  bool satisfies_covering = false;
  std::vector<std::vector<int>> orthomodular_witnesses;  // (a, b)
  std::vector<std::vector<int>> atomic_witnesses;        // (x) with no atom below
  std::vector<std::vector<int>> irreducible_witnesses;   // central x not in {0, 1}
  std::vector<std::vector<int>> covering_witnesses;      // (p, q, r): q < r < p OR q

  [[nodiscard]] bool piron() const {
    return is_lattice && is_ortho && is_orthomodular && is_atomic && is_complete &&
           is_irreducible && satisfies_covering;
  }
};

inline PironReport check_piron(const FiniteOML& l) {
  PironReport rep;
  const int n = static_cast<int>(l.size());

  auto om = check_orthomodular(l);
  rep.is_orthomodular = om.ok;
  rep.orthomodular_witnesses = std::move(om.witnesses);

  rep.is_atomic = true;
  for (int x = 0; x < n; ++x) {
    if (x == l.zero()) continue;
    bool dominates = false;
    for (int p : l.atoms()) {
      if (l.leq(p, x)) {
        dominates = true;
        break;
      }
    }
    if (!dominates) {
      rep.is_atomic = false;
      rep.atomic_witnesses.push_back({x});
    }
  }

  rep.is_irreducible = true;
  for (int x : center(l)) {
    if (x != l.zero() && x != l.one()) {
      rep.is_irreducible = false;
      rep.irreducible_witnesses.push_back({x});
    }
  }

  rep.satisfies_covering = true;
  for (int p : l.atoms()) {
    for (int q = 0; q < n; ++q) {
      if (l.leq(p, q)) continue;
      int top = l.join(p, q);
      for (int r = 0; r < n; ++r) {
        if (l.lt(q, r) && l.lt(r, top)) {
          rep.satisfies_covering = false;
          rep.covering_witnesses.push_back({p, q, r});
        }
      }
    }
  }
  return rep;
}

namespace detail {

using Bits = std::vector<uint64_t>;

inline bool bit_get(const Bits& b, int i) { return (b[i / 64] >> (i % 64)) & 1; }
inline void bit_set(Bits& b, int i) { b[i / 64] |= uint64_t{1} << (i % 64); }

inline bool bits_empty(const Bits& b) {
  for (uint64_t w : b) {
    if (w) return false;
  }
  return true;
}

inline int bits_popcount_and(const Bits& a, const Bits& b) {
  int c = 0;
  for (size_t w = 0; w < a.size(); ++w) c += __builtin_popcountll(a[w] & b[w]);
  return c;
}

/// Bron-Kerbosch with pivoting over a symmetric adjacency; reports maximal
/// cliques through `out`.
inline void bron_kerbosch(const std::vector<Bits>& adj, Bits r, Bits p, Bits x,
                          std::vector<std::vector<int>>& out) {
  const int n = static_cast<int>(adj.size());
  if (bits_empty(p) && bits_empty(x)) {
    std::vector<int> clique;
    for (int i = 0; i < n; ++i) {
      if (bit_get(r, i)) clique.push_back(i);
    }
    out.push_back(std::move(clique));
    return;
  }
  int pivot = -1, best = -1;
  for (int u = 0; u < n; ++u) {
    if (!bit_get(p, u) && !bit_get(x, u)) continue;
    int deg = bits_popcount_and(p, adj[u]);
    if (deg > best) {
      best = deg;
      pivot = u;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!bit_get(p, v) || bit_get(adj[pivot], v)) continue;
    Bits r2 = r, p2 = p, x2 = x;
    bit_set(r2, v);
    for (size_t w = 0; w < p2.size(); ++w) {
      p2[w] &= adj[v][w];
      x2[w] &= adj[v][w];
    }
    bron_kerbosch(adj, r2, p2, x2, out);
    p[v / 64] &= ~(uint64_t{1} << (v % 64));
    bit_set(x, v);
  }
}

}  // namespace detail

/// Maximal Boolean sublattices, as element index sets. In an orthomodular
/// lattice these are exactly the maximal sets of pairwise-commuting elements
/// (such a set is automatically closed under meet, join and ortho, and is
/// distributive). Blocks come out sorted, smallest-first.
inline std::vector<std::vector<int>> maximal_boolean_blocks(const FiniteOML& l) {
  if (!check_orthomodular(l).ok) {
    throw NotOrthomodular("maximal_boolean_blocks requires an orthomodular lattice");
  }
  const int n = static_cast<int>(l.size());
  const size_t words = (static_cast<size_t>(n) + 63) / 64;
  std::vector<detail::Bits> adj(n, detail::Bits(words, 0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && commutes(l, a, b)) detail::bit_set(adj[a], b);
    }
  }
  detail::Bits r(words, 0), p(words, 0), x(words, 0);
  for (int i = 0; i < n; ++i) detail::bit_set(p, i);
  std::vector<std::vector<int>> blocks;
  detail::bron_kerbosch(adj, r, p, x, blocks);
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

/// Foulis-Holland: if one of a, b, c commutes with the other two, the triple
/// is distributive. When the condition holds all six distribution laws are
/// verified before returning (a failure would indicate a broken lattice and
/// raises logic_error).
inline bool is_distributive_triple(const FiniteOML& l, int a, int b, int c) {
  if (!check_orthomodular(l).ok) {
    throw NotOrthomodular("is_distributive_triple requires an orthomodular lattice");
  }
  auto both = [&](int x, int y, int z) { return commutes(l, x, y) && commutes(l, x, z); };
  if (!(both(a, b, c) || both(b, a, c) || both(c, a, b))) return false;
  std::array<std::array<int, 3>, 3> perms{{{a, b, c}, {b, a, c}, {c, a, b}}};
  for (const auto& t : perms) {
    int x = t[0], y = t[1], z = t[2];
    if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) ||
        l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), l.join(x, z))) {
      throw std::logic_error("distributive triple condition met but a distribution law failed");
    }
  }
  return true;
}

}  // namespace omlkit
