#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "omlkit/lattice.hpp"
#include "omlkit/subspace.hpp"

namespace omlkit {

struct ClosureCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr size_t kDefaultClosureCap = 512;

/// Generating data for a finite fragment of the subspace lattice.
struct RaySeed {
  size_t dim = 0;
  std::vector<Vec> rays;
  int closure_depth = 1;
  size_t cap = kDefaultClosureCap;
};

/// A finite ortholattice whose element i is realized by subspaces[i];
/// the order is subspace containment and names are "s0", "s1", ... in
/// canonical (dimension, basis) order.
struct SubspaceLattice {
  FiniteOML lattice;
  std::vector<Subspace> subspaces;

  /// Index of a subspace among the elements, or -1.
  [[nodiscard]] int index_of(const Subspace& s) const {
    auto it = std::lower_bound(subspaces.begin(), subspaces.end(), s);
    if (it != subspaces.end() && *it == s) {
      return static_cast<int>(it - subspaces.begin());
    }
    return -1;
  }
};

namespace detail {

inline void closure_insert(std::set<Subspace>& acc, Subspace s, size_t cap) {
  acc.insert(std::move(s));
  if (acc.size() > cap) {
    throw ClosureCapExceeded("closure exceeded element cap of " + std::to_string(cap));
  }
}

}  // namespace detail

/// Closure of a set of seed subspaces (plus 0 and V) under meet, join and
/// orthocomplement. Runs up to closure_depth full rounds, stopping early at
/// a fixpoint; if the rounds are exhausted first, the set is then completed
/// under intersection and orthocomplement only, which is exactly what a
/// valid ortholattice fragment needs (joins fall out by De Morgan). Raises
/// ClosureCapExceeded if the element cap is hit at any point.
inline SubspaceLattice subspace_lattice_closure(size_t dim, const std::vector<Subspace>& seeds,
                                                int closure_depth,
                                                size_t cap = kDefaultClosureCap) {
  if (closure_depth < 0) throw std::invalid_argument("closure_depth must be non-negative");
  std::set<Subspace> acc;
  acc.insert(Subspace::zero(dim));
  acc.insert(Subspace::full(dim));
  for (const auto& s : seeds) {
    if (s.ambient_dim() != dim) throw DimensionMismatch("seed subspace has wrong ambient dim");
    detail::closure_insert(acc, s, cap);
  }

  auto round = [&](bool with_sums) {
    std::vector<Subspace> cur(acc.begin(), acc.end());
    size_t before = acc.size();
    for (const auto& s : cur) detail::closure_insert(acc, subspace_ortho(s), cap);
    for (size_t i = 0; i < cur.size(); ++i) {
      for (size_t j = i + 1; j < cur.size(); ++j) {
        detail::closure_insert(acc, subspace_intersect(cur[i], cur[j]), cap);
        if (with_sums) detail::closure_insert(acc, subspace_sum(cur[i], cur[j]), cap);
      }
    }
    return acc.size() != before;
  };

  bool grew = true;
  for (int r = 0; r < closure_depth && grew; ++r) grew = round(true);
  while (grew) grew = round(false);

  std::vector<Subspace> elements(acc.begin(), acc.end());
  const size_t n = elements.size();
  auto find = [&](const Subspace& s) {
    auto it = std::lower_bound(elements.begin(), elements.end(), s);
    return (it != elements.end() && *it == s) ? static_cast<int>(it - elements.begin()) : -1;
  };
  std::vector<std::string> names(n);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::vector<int> ortho(n, -1);
  for (size_t i = 0; i < n; ++i) {
    names[i] = "s" + std::to_string(i);
    for (size_t j = 0; j < n; ++j) leq[i][j] = elements[j].contains(elements[i]);
  }
  for (size_t i = 0; i < n; ++i) {
    ortho[i] = find(subspace_ortho(elements[i]));
    if (ortho[i] < 0) throw std::logic_error("closure not ortho-closed");
  }
  return SubspaceLattice{FiniteOML::from_relation(std::move(names), std::move(leq), std::move(ortho)),
                         std::move(elements)};
}

inline SubspaceLattice subspace_lattice_closure(const RaySeed& seed) {
  std::vector<Subspace> seeds;
  seeds.reserve(seed.rays.size());
  for (const auto& v : seed.rays) {
    if (v.size() != seed.dim) throw DimensionMismatch("seed ray has wrong length");
    seeds.push_back(Subspace::ray(v));
  }
  return subspace_lattice_closure(seed.dim, seeds, seed.closure_depth, seed.cap);
}

}  // namespace omlkit
