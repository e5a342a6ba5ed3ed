#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "omlkit/gaussian.hpp"

namespace omlkit {

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroVector : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// In-place reduced row echelon form. Returns the number of nonzero rows
/// (the rank); rows beyond it are zeroed. Pivots are normalized to 1 and
/// cleared above and below, so the surviving rows are a canonical basis of
/// the row space.
inline size_t rref(std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  const size_t ncols = rows[0].size();
  size_t r = 0;
  for (size_t col = 0; col < ncols && r < rows.size(); ++col) {
    size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    GaussianRational inv = GaussianRational(1) / rows[r][col];
    for (size_t j = col; j < ncols; ++j) rows[r][j] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      GaussianRational f = rows[i][col];
      for (size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace detail

/// An exactly-represented linear subspace of Q(i)^n, identified by its
/// canonical reduced row echelon basis. Two Subspace values are equal iff
/// they are the same subspace.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(size_t ambient_dim) {
    Subspace s;
    s.ambient_ = ambient_dim;
    return s;
  }

  static Subspace full(size_t ambient_dim) {
    std::vector<Vec> rows;
    for (size_t i = 0; i < ambient_dim; ++i) {
      Vec e(ambient_dim);
      e[i] = 1;
      rows.push_back(std::move(e));
    }
    return Subspace(ambient_dim, std::move(rows));
  }

  static Subspace span(size_t ambient_dim, std::vector<Vec> vectors) {
    for (const auto& v : vectors) {
      if (v.size() != ambient_dim) throw DimensionMismatch("span: vector length != ambient dim");
    }
    return Subspace(ambient_dim, std::move(vectors));
  }

  static Subspace ray(const Vec& v) {
    if (is_zero_vec(v)) throw ZeroVector("ray: zero vector spans no ray");
    return span(v.size(), {v});
  }

  [[nodiscard]] size_t ambient_dim() const { return ambient_; }
  [[nodiscard]] size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<Vec>& basis() const { return basis_; }
  [[nodiscard]] bool is_zero() const { return basis_.empty(); }
  [[nodiscard]] bool is_full() const { return basis_.size() == ambient_; }

  /// Membership test: v reduces to zero against the canonical basis.
  [[nodiscard]] bool contains_vector(const Vec& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("contains_vector: length mismatch");
    Vec w = v;
    for (const auto& row : basis_) {
      size_t p = pivot_col(row);
      if (!w[p].is_zero()) {
        GaussianRational f = w[p];
        for (size_t j = 0; j < ambient_; ++j) w[j] -= f * row[j];
      }
    }
    return is_zero_vec(w);
  }

  [[nodiscard]] bool contains(const Subspace& other) const {
    check_same_ambient(other);
    for (const auto& row : other.basis_) {
      if (!contains_vector(row)) return false;
    }
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  /// Canonical total order (by dimension, then basis entries); gives
  /// deterministic element ordering in generated lattices.
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis_ < b.basis_;
  }

  [[nodiscard]] std::string str() const {
    if (is_zero()) return "0";
    if (is_full()) return "V" + std::to_string(ambient_);
    std::string s = "span{";
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (i) s += ", ";
      s += vec_to_string(basis_[i]);
    }
    return s + "}";
  }

  void check_same_ambient(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw DimensionMismatch("ambient dimensions differ");
  }

 private:
  Subspace(size_t ambient, std::vector<Vec> rows) : ambient_(ambient), basis_(std::move(rows)) {
    size_t rank = detail::rref(basis_);
    basis_.resize(rank);
  }

  static size_t pivot_col(const Vec& row) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_zero()) return j;
    }
    return row.size();
  }

  size_t ambient_ = 0;
  std::vector<Vec> basis_;
};

/// Lattice join in L(V): the span of the union of bases.
inline Subspace subspace_sum(const Subspace& s, const Subspace& t) {
  s.check_same_ambient(t);
  std::vector<Vec> rows = s.basis();
  rows.insert(rows.end(), t.basis().begin(), t.basis().end());
  return Subspace::span(s.ambient_dim(), std::move(rows));
}

/// Orthogonal complement under the Hermitian dot product: the kernel of the
/// conjugated basis matrix.
inline Subspace subspace_ortho(const Subspace& s) {
  const size_t n = s.ambient_dim();
  std::vector<Vec> m;
  m.reserve(s.dim());
  for (const auto& row : s.basis()) {
    Vec c(n);
    for (size_t j = 0; j < n; ++j) c[j] = row[j].conj();
    m.push_back(std::move(c));
  }
  size_t rank = detail::rref(m);
  m.resize(rank);
  // Pivot columns of the reduced matrix; the rest are free.
  std::vector<size_t> pivots;
  std::vector<bool> is_pivot(n, false);
  for (const auto& row : m) {
    for (size_t j = 0; j < n; ++j) {
      if (!row[j].is_zero()) {
        pivots.push_back(j);
        is_pivot[j] = true;
        break;
      }
    }
  }
  std::vector<Vec> kernel;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n);
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    kernel.push_back(std::move(v));
  }
  return Subspace::span(n, std::move(kernel));
}

/// Lattice meet in L(V), computed as (S^perp + T^perp)^perp; exact.
inline Subspace subspace_intersect(const Subspace& s, const Subspace& t) {
  s.check_same_ambient(t);
  if (s.contains(t)) return t;
  if (t.contains(s)) return s;
  return subspace_ortho(subspace_sum(subspace_ortho(s), subspace_ortho(t)));
}

/// Tensor product of subspaces: span of pairwise Kronecker products of
/// basis vectors. dim(S (x) T) = dim S * dim T.
inline Subspace tensor_subspace(const Subspace& s, const Subspace& t) {
  std::vector<Vec> rows;
  rows.reserve(s.dim() * t.dim());
  for (const auto& a : s.basis()) {
    for (const auto& b : t.basis()) rows.push_back(tensor_vector(a, b));
  }
  return Subspace::span(s.ambient_dim() * t.ambient_dim(), std::move(rows));
}

/// Rank of the m x n coefficient matrix of a bipartite vector. 1 iff the
/// vector factors as a tensor product.
inline size_t schmidt_rank(const Vec& v, size_t m, size_t n) {
  if (v.size() != m * n) throw DimensionMismatch("schmidt_rank: length != m*n");
  if (is_zero_vec(v)) throw ZeroVector("schmidt_rank: zero vector");
  std::vector<Vec> rows(m, Vec(n));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) rows[i][j] = v[i * n + j];
  }
  return detail::rref(rows);
}

}  // namespace omlkit
