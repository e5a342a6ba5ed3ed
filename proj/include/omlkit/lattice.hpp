#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace omlkit {

struct NotALattice : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadOrtho : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownElement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite bounded ortholattice: named elements, an order relation, derived
/// meet/join tables, and an orthocomplement involution. Immutable after
/// construction; construction validates every structural law and throws if
/// any fails.
class FiniteOML {
 public:
  /// Build from an explicit order. `leq_pairs` may be any generating set;
  /// the reflexive-transitive closure is taken. `ortho_map` must cover every
  /// element (it is checked as an involution).
  static FiniteOML from_order(std::vector<std::string> names,
                              const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                              const std::map<std::string, std::string>& ortho_map) {
    const size_t n = names.size();
    std::map<std::string, int> idx;
    for (size_t i = 0; i < n; ++i) {
      if (!idx.emplace(names[i], static_cast<int>(i)).second) {
        throw InconsistentOrder("duplicate element name: " + names[i]);
      }
    }
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i) leq[i][i] = true;
    auto at = [&](const std::string& s) {
      auto it = idx.find(s);
      if (it == idx.end()) throw UnknownElement("unknown element: " + s);
      return it->second;
    };
    for (const auto& [a, b] : leq_pairs) leq[at(a)][at(b)] = true;
    // transitive closure
    for (size_t k = 0; k < n; ++k) {
      for (size_t i = 0; i < n; ++i) {
        if (!leq[i][k]) continue;
        for (size_t j = 0; j < n; ++j) {
          if (leq[k][j]) leq[i][j] = true;
        }
      }
    }
    std::vector<int> ortho(n, -1);
    for (const auto& [a, b] : ortho_map) ortho[at(a)] = at(b);
    for (size_t i = 0; i < n; ++i) {
      if (ortho[i] < 0) throw BadOrtho("ortho map missing element: " + names[i]);
    }
    return FiniteOML(std::move(names), std::move(leq), std::move(ortho));
  }

  /// Build from a full order matrix and an ortho permutation by index.
  static FiniteOML from_relation(std::vector<std::string> names,
                                 std::vector<std::vector<bool>> leq, std::vector<int> ortho) {
    return FiniteOML(std::move(names), std::move(leq), std::move(ortho));
  }

  /// Boolean algebra on `n_atoms` atoms (2^n elements).
  static FiniteOML boolean(int n_atoms) {
    if (n_atoms < 1 || n_atoms > 10) throw NotALattice("boolean(n) supports 1 <= n <= 10");
    const size_t n = size_t{1} << n_atoms;
    std::vector<std::string> names(n);
    for (size_t s = 0; s < n; ++s) names[s] = boolean_name(s, n_atoms);
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    std::vector<int> ortho(n);
    for (size_t s = 0; s < n; ++s) {
      for (size_t t = 0; t < n; ++t) leq[s][t] = (s & ~t) == 0;
      ortho[s] = static_cast<int>(~s & (n - 1));
    }
    return FiniteOML(std::move(names), std::move(leq), std::move(ortho));
  }

  /// MO(n): the horizontal sum of n orthogonal atom pairs. Height two, 2n+2
  /// elements; the smallest non-Boolean orthomodular lattices.
  static FiniteOML mo(int n_pairs) {
    if (n_pairs < 1) throw NotALattice("mo(n) requires n >= 1");
    std::vector<std::string> names{"0", "1"};
    for (int k = 1; k <= n_pairs; ++k) {
      names.push_back("a" + std::to_string(k));
      names.push_back("a" + std::to_string(k) + "'");
    }
    const size_t n = names.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    std::vector<int> ortho(n);
    for (size_t i = 0; i < n; ++i) {
      leq[i][i] = true;
      leq[0][i] = true;
      leq[i][1] = true;
    }
    ortho[0] = 1;
    ortho[1] = 0;
    for (size_t i = 2; i < n; i += 2) {
      ortho[i] = static_cast<int>(i + 1);
      ortho[i + 1] = static_cast<int>(i);
    }
    return FiniteOML(std::move(names), std::move(leq), std::move(ortho));
  }

  /// The benzene ring: 0 < a < b < 1 and 0 < b' < a' < 1. An ortholattice
  /// that is not orthomodular.
  static FiniteOML o6() {
    std::vector<std::string> names{"0", "a", "b", "b'", "a'", "1"};
    std::vector<std::pair<std::string, std::string>> pairs{
        {"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "b'"}, {"b'", "a'"}, {"a'", "1"}};
    std::map<std::string, std::string> om{{"0", "1"}, {"1", "0"}, {"a", "a'"},
                                          {"a'", "a"}, {"b", "b'"}, {"b'", "b"}};
    return from_order(std::move(names), pairs, om);
  }

  /// 0,1-pasting: glue the parts at shared bounds, keeping everything else
  /// incomparable across parts. Preserves orthomodularity.
  static FiniteOML horizontal_sum(const std::vector<FiniteOML>& parts) {
    if (parts.size() < 2) throw NotALattice("horizontal_sum needs at least two parts");
    std::vector<std::string> names{"0", "1"};
    std::vector<std::pair<size_t, int>> origin;  // proper element -> (part, index in part)
    std::vector<std::vector<int>> remap(parts.size());
    for (size_t p = 0; p < parts.size(); ++p) {
      const FiniteOML& part = parts[p];
      remap[p].assign(part.size(), -1);
      remap[p][part.zero()] = 0;
      remap[p][part.one()] = 1;
      for (size_t i = 0; i < part.size(); ++i) {
        int ii = static_cast<int>(i);
        if (ii == part.zero() || ii == part.one()) continue;
        remap[p][i] = static_cast<int>(names.size());
        names.push_back("s" + std::to_string(p + 1) + "." + part.name(ii));
        origin.emplace_back(p, ii);
      }
    }
    const size_t n = names.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    std::vector<int> ortho(n);
    for (size_t i = 0; i < n; ++i) {
      leq[i][i] = true;
      leq[0][i] = true;
      leq[i][1] = true;
    }
    ortho[0] = 1;
    ortho[1] = 0;
    for (size_t i = 2; i < n; ++i) {
      auto [p, pi] = origin[i - 2];
      ortho[i] = remap[p][parts[p].ortho_of(pi)];
      for (size_t j = 2; j < n; ++j) {
        auto [q, qj] = origin[j - 2];
        if (p == q) leq[i][j] = parts[p].leq(pi, qj);
      }
    }
    return FiniteOML(std::move(names), std::move(leq), std::move(ortho));
  }

  [[nodiscard]] size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& name(int i) const { return names_.at(i); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

  [[nodiscard]] int index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownElement("unknown element: " + name);
    return it->second;
  }

  [[nodiscard]] bool leq(int a, int b) const { return leq_.at(a).at(b); }
  [[nodiscard]] bool lt(int a, int b) const { return a != b && leq(a, b); }
  [[nodiscard]] int meet(int a, int b) const { return meet_.at(a).at(b); }
  [[nodiscard]] int join(int a, int b) const { return join_.at(a).at(b); }
  [[nodiscard]] int ortho_of(int a) const { return ortho_.at(a); }
  [[nodiscard]] int zero() const { return zero_; }
  [[nodiscard]] int one() const { return one_; }

  [[nodiscard]] bool is_atom(int a) const { return atom_flag_.at(a); }
  [[nodiscard]] const std::vector<int>& atoms() const { return atoms_; }

  friend bool operator==(const FiniteOML& a, const FiniteOML& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_ && a.ortho_ == b.ortho_;
  }

 private:
  FiniteOML(std::vector<std::string> names, std::vector<std::vector<bool>> leq,
            std::vector<int> ortho)
      : names_(std::move(names)), leq_(std::move(leq)), ortho_(std::move(ortho)) {
    const size_t n = names_.size();
    if (n == 0) throw NotALattice("empty element set");
    if (leq_.size() != n || ortho_.size() != n) {
      throw InconsistentOrder("relation size does not match element count");
    }
    for (size_t i = 0; i < n; ++i) {
      index_.emplace(names_[i], static_cast<int>(i));
    }
    if (index_.size() != n) throw InconsistentOrder("duplicate element names");
    validate_order();
    pack_bits();
    locate_bounds();
    if (zero_ == one_) throw NotALattice("zero and one must differ");
    build_tables();
    validate_ortho();
    find_atoms();
  }

  void validate_order() {
    const size_t n = names_.size();
    for (size_t i = 0; i < n; ++i) {
      if (!leq_[i][i]) throw InconsistentOrder("order not reflexive at " + names_[i]);
      for (size_t j = 0; j < n; ++j) {
        if (i != j && leq_[i][j] && leq_[j][i]) {
          throw InconsistentOrder("order not antisymmetric: " + names_[i] + ", " + names_[j]);
        }
        if (!leq_[i][j]) continue;
        for (size_t k = 0; k < n; ++k) {
          if (leq_[j][k] && !leq_[i][k]) {
            throw InconsistentOrder("order not transitive via " + names_[j]);
          }
        }
      }
    }
  }

  void pack_bits() {
    const size_t n = names_.size();
    words_ = (n + 63) / 64;
    down_.assign(n, std::vector<uint64_t>(words_, 0));
    up_.assign(n, std::vector<uint64_t>(words_, 0));
    for (size_t a = 0; a < n; ++a) {
      for (size_t x = 0; x < n; ++x) {
        if (leq_[x][a]) down_[a][x / 64] |= uint64_t{1} << (x % 64);
        if (leq_[a][x]) up_[a][x / 64] |= uint64_t{1} << (x % 64);
      }
    }
  }

  void locate_bounds() {
    const size_t n = names_.size();
    zero_ = one_ = -1;
    for (size_t i = 0; i < n; ++i) {
      bool least = true, greatest = true;
      for (size_t j = 0; j < n; ++j) {
        least = least && leq_[i][j];
        greatest = greatest && leq_[j][i];
      }
      if (least) zero_ = static_cast<int>(i);
      if (greatest) one_ = static_cast<int>(i);
    }
    if (zero_ < 0) throw NotALattice("no least element");
    if (one_ < 0) throw NotALattice("no greatest element");
  }

  // The glb of {a, b} is the unique m in lower(a,b) whose down-set equals
  // lower(a,b); likewise for lub with up-sets.
  [[nodiscard]] int bound_of(int a, int b, const std::vector<std::vector<uint64_t>>& sets) const {
    std::vector<uint64_t> common(words_);
    for (size_t w = 0; w < words_; ++w) common[w] = sets[a][w] & sets[b][w];
    for (size_t w = 0; w < words_; ++w) {
      uint64_t bits = common[w];
      while (bits) {
        int m = static_cast<int>(w * 64 + static_cast<size_t>(__builtin_ctzll(bits)));
        bits &= bits - 1;
        if (sets[m] == common) return m;
      }
    }
    return -1;
  }

  void build_tables() {
    const size_t n = names_.size();
    meet_.assign(n, std::vector<int>(n, -1));
    join_.assign(n, std::vector<int>(n, -1));
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = a; b < n; ++b) {
        int m = bound_of(static_cast<int>(a), static_cast<int>(b), down_);
        if (m < 0) {
          throw NotALattice("no meet for " + names_[a] + ", " + names_[b]);
        }
        int j = bound_of(static_cast<int>(a), static_cast<int>(b), up_);
        if (j < 0) {
          throw NotALattice("no join for " + names_[a] + ", " + names_[b]);
        }
        meet_[a][b] = meet_[b][a] = m;
        join_[a][b] = join_[b][a] = j;
      }
    }
  }

  void validate_ortho() {
    const size_t n = names_.size();
    for (size_t a = 0; a < n; ++a) {
      int oa = ortho_[a];
      if (oa < 0 || static_cast<size_t>(oa) >= n) throw BadOrtho("ortho out of range");
      if (ortho_[oa] != static_cast<int>(a)) {
        throw BadOrtho("ortho not an involution at " + names_[a]);
      }
      if (meet_[a][oa] != zero_ || join_[a][oa] != one_) {
        throw BadOrtho(names_[a] + " and " + names_[oa] + " are not complements");
      }
      for (size_t b = 0; b < n; ++b) {
        if (leq_[a][b] && !leq_[ortho_[b]][oa]) {
          throw BadOrtho("ortho not order-reversing on " + names_[a] + " <= " + names_[b]);
        }
      }
    }
  }

  void find_atoms() {
    const size_t n = names_.size();
    atom_flag_.assign(n, false);
    for (size_t a = 0; a < n; ++a) {
      if (static_cast<int>(a) == zero_) continue;
      bool atom = true;
      for (size_t x = 0; x < n; ++x) {
        if (static_cast<int>(x) != zero_ && x != a && leq_[x][a]) {
          atom = false;
          break;
        }
      }
      atom_flag_[a] = atom;
      if (atom) atoms_.push_back(static_cast<int>(a));
    }
  }

  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::vector<std::vector<bool>> leq_;
  std::vector<int> ortho_;
  std::vector<std::vector<int>> meet_, join_;
  std::vector<std::vector<uint64_t>> down_, up_;
  size_t words_ = 0;
  int zero_ = -1, one_ = -1;
  std::vector<bool> atom_flag_;
  std::vector<int> atoms_;

  static std::string boolean_name(size_t subset, int n_atoms) {
    if (subset == 0) return "0";
    if (subset == (size_t{1} << n_atoms) - 1) return "1";
    std::string s;
    for (int k = 0; k < n_atoms; ++k) {
      if (subset & (size_t{1} << k)) {
        if (!s.empty()) s += "+";
        s += "a" + std::to_string(k + 1);
      }
    }
    return s;
  }
};

}  // namespace omlkit
