#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "omlkit/subspace.hpp"  // DimensionMismatch

namespace omlkit {

struct BadProjector : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateTriple : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LabelClash : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotProjective : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroProbabilityBranch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;

/// A positive operator below the identity, tagged with an outcome label.
/// Labels carry outcome identity; matrices carry operator identity. The two
/// are deliberately separate: distinct outcomes may share an operator.
struct Effect {
  std::string label;
  CMat matrix;
};

struct Povm {
  std::vector<Effect> effects;
};

/// A noncontextual 0/1 valuation of outcome labels.
struct Assignment {
  std::map<std::string, int> values;
};

inline double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

struct PovmDiagnostics {
  bool ok = false;
  double max_hermiticity_dev = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double max_sum_dev = 0.0;
};

/// Hermiticity, spectrum bounds in [-tol, 1+tol] per effect, and a sum equal
/// to the identity within tol.
inline PovmDiagnostics validate_povm(const std::vector<Effect>& effects,
                                     double tol = kDefaultTol) {
  if (effects.empty()) throw DimensionMismatch("a POVM needs at least one effect");
  const Eigen::Index d = effects.front().matrix.rows();
  PovmDiagnostics diag;
  diag.min_eigenvalue = 1.0;
  CMat sum = CMat::Zero(d, d);
  for (const auto& e : effects) {
    if (e.matrix.rows() != d || e.matrix.cols() != d) {
      throw DimensionMismatch("effect '" + e.label + "' has mismatched dimensions");
    }
    diag.max_hermiticity_dev =
        std::max(diag.max_hermiticity_dev, max_abs(e.matrix - e.matrix.adjoint().eval()));
    Eigen::SelfAdjointEigenSolver<CMat> es(e.matrix);
    diag.min_eigenvalue = std::min(diag.min_eigenvalue, es.eigenvalues().minCoeff());
    diag.max_eigenvalue = std::max(diag.max_eigenvalue, es.eigenvalues().maxCoeff());
    sum += e.matrix;
  }
  diag.max_sum_dev = max_abs(sum - CMat::Identity(d, d));
  diag.ok = diag.max_hermiticity_dev <= tol && diag.min_eigenvalue >= -tol &&
            diag.max_eigenvalue <= 1.0 + tol && diag.max_sum_dev <= tol;
  return diag;
}

namespace detail {

inline void require_rank1_projector(const CMat& p, const std::string& name, double tol) {
  if (p.rows() != p.cols()) throw BadProjector(name + " is not square");
  if (max_abs(p - p.adjoint().eval()) > tol) throw BadProjector(name + " is not Hermitian");
  if (max_abs(p * p - p) > tol) throw BadProjector(name + " is not idempotent");
  if (std::abs(p.trace().real() - 1.0) > tol) throw BadProjector(name + " is not rank one");
}

inline bool proportional_projectors(const CMat& p, const CMat& q, double tol) {
  return max_abs(p - q) <= tol;
}

}  // namespace detail

/// The three four-effect POVMs built from halves of three rank-1 projectors
/// and their complements: {A,A',B,B'}/2, {B,B',C,C'}/2, {C,C',A,A'}/2.
/// Effects with the same operator share a label across the sets.
inline std::array<Povm, 3> cabello_povms(const CMat& a, const CMat& b, const CMat& c,
                                         double tol = kDefaultTol) {
  detail::require_rank1_projector(a, "A", tol);
  detail::require_rank1_projector(b, "B", tol);
  detail::require_rank1_projector(c, "C", tol);
  if (detail::proportional_projectors(a, b, tol) || detail::proportional_projectors(b, c, tol) ||
      detail::proportional_projectors(a, c, tol)) {
    throw DegenerateTriple("two of the three projectors coincide");
  }
  const Eigen::Index d = a.rows();
  CMat id = CMat::Identity(d, d);
  auto half = [&](const CMat& p) { return (0.5 * p).eval(); };
  Effect ea{"A/2", half(a)}, eap{"A'/2", half(id - a)};
  Effect eb{"B/2", half(b)}, ebp{"B'/2", half(id - b)};
  Effect ec{"C/2", half(c)}, ecp{"C'/2", half(id - c)};
  std::array<Povm, 3> out{Povm{{ea, eap, eb, ebp}}, Povm{{eb, ebp, ec, ecp}},
                          Povm{{ec, ecp, ea, eap}}};
  for (const auto& p : out) {
    if (!validate_povm(p.effects, tol).ok) {
      throw BadProjector("constructed effect set failed POVM validation");
    }
  }
  return out;
}

/// Exhaustive search for noncontextual 0/1 assignments that pick exactly one
/// effect from each POVM. Noncontextuality is enforced by label sharing;
/// equal labels must carry equal matrices (LabelClash otherwise).
inline std::vector<Assignment> noncontextual_assignment_search(const std::vector<Povm>& povms,
                                                               double tol = kDefaultTol) {
  std::vector<std::string> labels;
  std::map<std::string, const CMat*> seen;
  for (const auto& p : povms) {
    for (const auto& e : p.effects) {
      auto it = seen.find(e.label);
      if (it == seen.end()) {
        seen.emplace(e.label, &e.matrix);
        labels.push_back(e.label);
      } else if (it->second->rows() != e.matrix.rows() ||
                 max_abs(*it->second - e.matrix) > tol) {
        throw LabelClash("label '" + e.label + "' is attached to different operators");
      }
    }
  }
  if (labels.size() > 24) throw std::invalid_argument("too many labels for exhaustive search");
  std::vector<Assignment> valid;
  for (uint32_t mask = 0; mask < (uint32_t{1} << labels.size()); ++mask) {
    Assignment asg;
    for (size_t i = 0; i < labels.size(); ++i) asg.values[labels[i]] = (mask >> i) & 1;
    bool ok = true;
    for (const auto& p : povms) {
      int chosen = 0;
      for (const auto& e : p.effects) chosen += asg.values.at(e.label);
      if (chosen != 1) {
        ok = false;
        break;
      }
    }
    if (ok) valid.push_back(std::move(asg));
  }
  return valid;
}

struct ThreeQubitReport {
  std::array<Povm, 3> povms;
  double max_commutator_norm = 0.0;
  double max_sum_dev = 0.0;
  size_t assignment_count = 0;
  size_t assignments_searched = 0;
};

/// The three-qubit counterpart: the same halves tensored into slots of an
/// eight-dimensional space, one projector family per qubit. All six distinct
/// operators commute, yet the exactly-one-per-set combinatorics is unchanged.
inline ThreeQubitReport three_qubit_commuting_sets(const CMat& a, const CMat& b, const CMat& c,
                                                   double tol = kDefaultTol) {
  detail::require_rank1_projector(a, "A", tol);
  detail::require_rank1_projector(b, "B", tol);
  detail::require_rank1_projector(c, "C", tol);
  if (detail::proportional_projectors(a, b, tol) || detail::proportional_projectors(b, c, tol) ||
      detail::proportional_projectors(a, c, tol)) {
    throw DegenerateTriple("two of the three projectors coincide");
  }
  const Eigen::Index d = a.rows();
  CMat id = CMat::Identity(d, d);
  auto slot1 = [&](const CMat& p) { return Eigen::kroneckerProduct(p, Eigen::kroneckerProduct(id, id)).eval(); };
  auto slot2 = [&](const CMat& p) { return Eigen::kroneckerProduct(id, Eigen::kroneckerProduct(p, id)).eval(); };
  auto slot3 = [&](const CMat& p) { return Eigen::kroneckerProduct(id, Eigen::kroneckerProduct(id, p)).eval(); };

  Effect fa{"A/2.I.I", 0.5 * slot1(a)}, fap{"A'/2.I.I", 0.5 * slot1((id - a).eval())};
  Effect fb{"I.B/2.I", 0.5 * slot2(b)}, fbp{"I.B'/2.I", 0.5 * slot2((id - b).eval())};
  Effect fc{"I.I.C/2", 0.5 * slot3(c)}, fcp{"I.I.C'/2", 0.5 * slot3((id - c).eval())};

  ThreeQubitReport rep;
  rep.povms = {Povm{{fa, fap, fb, fbp}}, Povm{{fb, fbp, fc, fcp}}, Povm{{fc, fcp, fa, fap}}};
  const std::array<const Effect*, 6> ops{&fa, &fap, &fb, &fbp, &fc, &fcp};
  for (size_t i = 0; i < ops.size(); ++i) {
    for (size_t j = i + 1; j < ops.size(); ++j) {
      CMat comm = ops[i]->matrix * ops[j]->matrix - ops[j]->matrix * ops[i]->matrix;
      rep.max_commutator_norm = std::max(rep.max_commutator_norm, max_abs(comm));
    }
  }
  for (const auto& p : rep.povms) {
    rep.max_sum_dev = std::max(rep.max_sum_dev, validate_povm(p.effects, tol).max_sum_dev);
  }
  auto assignments =
      noncontextual_assignment_search({rep.povms.begin(), rep.povms.end()}, tol);
  rep.assignment_count = assignments.size();
  rep.assignments_searched = uint32_t{1} << 6;
  return rep;
}

/// A complete two-outcome projective measurement {P0, P1}.
struct ProjectivePair {
  CMat p0, p1;
};

inline void require_projective(const ProjectivePair& m, double tol = kDefaultTol) {
  const Eigen::Index d = m.p0.rows();
  if (m.p1.rows() != d || m.p0.cols() != d || m.p1.cols() != d) {
    throw NotProjective("projectors have mismatched dimensions");
  }
  for (const CMat* p : {&m.p0, &m.p1}) {
    if (max_abs(*p - p->adjoint().eval()) > tol) throw NotProjective("projector not Hermitian");
    if (max_abs((*p) * (*p) - *p) > tol) throw NotProjective("projector not idempotent");
  }
  if (max_abs(m.p0 + m.p1 - CMat::Identity(d, d)) > tol) {
    throw NotProjective("projectors do not sum to the identity");
  }
}

/// Spin measurement along the direction at angle theta from z in the z-x
/// plane: projectors (I +- n.sigma)/2 with n = (sin theta, 0, cos theta).
inline ProjectivePair spin_measurement(double theta) {
  CMat sz(2, 2), sx(2, 2), id = CMat::Identity(2, 2);
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  CMat ns = std::sin(theta) * sx + std::cos(theta) * sz;
  return ProjectivePair{0.5 * (id + ns), 0.5 * (id - ns)};
}

inline ProjectivePair z_measurement() { return spin_measurement(0.0); }

/// The four-effect POVM of measuring `first` and then `second`, composed by
/// the Lueders rule: E(i,j) = P_i Q_j P_i. Outcome order (0,+), (0,-),
/// (1,+), (1,-).
inline Povm sequential_povm(const ProjectivePair& first, const ProjectivePair& second,
                            double tol = kDefaultTol) {
  require_projective(first, tol);
  require_projective(second, tol);
  if (first.p0.rows() != second.p0.rows()) {
    throw NotProjective("the two measurements act on different spaces");
  }
  Povm out;
  const std::array<const CMat*, 2> p{&first.p0, &first.p1};
  const std::array<const CMat*, 2> q{&second.p0, &second.p1};
  const std::array<std::string, 2> pn{"0", "1"}, qn{"+", "-"};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.effects.push_back(Effect{"(" + pn[i] + "," + qn[j] + ")", (*p[i]) * (*q[j]) * (*p[i])});
    }
  }
  if (!validate_povm(out.effects, tol).ok) {
    throw NotProjective("sequential composition failed POVM validation");
  }
  return out;
}

/// State after measuring `first` then `second` with the given outcome pair,
/// by two Lueders updates.
inline CVec post_measurement_state(const CVec& state, const ProjectivePair& first,
                                   const ProjectivePair& second, std::pair<int, int> outcomes,
                                   double tol = kDefaultTol) {
  require_projective(first, tol);
  require_projective(second, tol);
  auto update = [&](const CVec& psi, const CMat& proj) {
    CVec phi = proj * psi;
    double n = phi.norm();
    if (n <= tol) throw ZeroProbabilityBranch("outcome has zero probability");
    return (phi / n).eval();
  };
  CVec mid = update(state, outcomes.first == 0 ? first.p0 : first.p1);
  return update(mid, outcomes.second == 0 ? second.p0 : second.p1);
}

/// Trace distance between the pure states |a><a| and |b><b|.
inline double trace_distance(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("trace_distance: dimension mismatch");
  std::complex<double> ov = (a.adjoint() * b)(0, 0);
  double s = 1.0 - std::norm(ov) / (a.squaredNorm() * b.squaredNorm());
  return std::sqrt(std::max(0.0, s));
}

/// An orthonormal basis. Construction validates orthonormality.
struct Frame {
  std::vector<CVec> vectors;

  explicit Frame(std::vector<CVec> vs, double tol = kDefaultTol) : vectors(std::move(vs)) {
    if (vectors.empty()) throw std::invalid_argument("empty frame");
    const Eigen::Index d = vectors.front().size();
    if (static_cast<Eigen::Index>(vectors.size()) != d) {
      throw std::invalid_argument("a frame needs dim vectors");
    }
    for (size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != d) throw DimensionMismatch("frame vectors of unequal length");
      if (std::abs(vectors[i].norm() - 1.0) > tol) {
        throw std::invalid_argument("frame vector not normalized");
      }
      for (size_t j = i + 1; j < vectors.size(); ++j) {
        if (std::abs((vectors[i].adjoint() * vectors[j])(0, 0)) > tol) {
          throw std::invalid_argument("frame vectors not orthogonal");
        }
      }
    }
  }

  [[nodiscard]] size_t dim() const { return vectors.size(); }
};

/// Number of rays shared (up to phase) between two frames.
inline size_t shared_ray_count(const Frame& f1, const Frame& f2, double tol = kDefaultTol) {
  if (f1.dim() != f2.dim()) throw DimensionMismatch("frames of different dimension");
  size_t shared = 0;
  for (const auto& u : f1.vectors) {
    for (const auto& v : f2.vectors) {
      if (std::abs(std::abs((u.adjoint() * v)(0, 0)) - 1.0) <= tol) {
        ++shared;
        break;
      }
    }
  }
  return shared;
}

/// Two frames are entwined when some but not all of their elements agree up
/// to phase. Never true in dimension two: sharing one ray of an orthonormal
/// pair forces sharing the other.
inline bool entwined(const Frame& f1, const Frame& f2, double tol = kDefaultTol) {
  size_t s = shared_ray_count(f1, f2, tol);
  return s > 0 && s < f1.dim();
}

struct FrameFunctionReport {
  bool constant_sum = false;
  double r = 0.0;           // the common sum, taken from the first context
  double max_residual = 0.0;
  bool nonnegative = false;
  [[nodiscard]] bool probability() const {
    return constant_sum && nonnegative && std::abs(r - 1.0) <= 1e-9;
  }
};

/// Check the constant-sum property of f over a family of frames.
inline FrameFunctionReport frame_function_check(const std::function<double(const CVec&)>& f,
                                                const std::vector<Frame>& frames,
                                                double tol = kDefaultTol) {
  if (frames.empty()) throw std::invalid_argument("no frames given");
  FrameFunctionReport rep;
  rep.nonnegative = true;
  bool first = true;
  for (const auto& fr : frames) {
    double sum = 0.0;
    for (const auto& v : fr.vectors) {
      double val = f(v);
      if (val < 0.0) rep.nonnegative = false;
      sum += val;
    }
    if (first) {
      rep.r = sum;
      first = false;
    }
    rep.max_residual = std::max(rep.max_residual, std::abs(sum - rep.r));
  }
  rep.constant_sum = rep.max_residual <= tol;
  return rep;
}

/// POVM variant: label-keyed values must sum to the same r in each POVM.
inline FrameFunctionReport frame_function_check(const std::map<std::string, double>& values,
                                                const std::vector<Povm>& povms,
                                                double tol = kDefaultTol) {
  if (povms.empty()) throw std::invalid_argument("no POVMs given");
  FrameFunctionReport rep;
  rep.nonnegative = true;
  bool first = true;
  for (const auto& p : povms) {
    double sum = 0.0;
    for (const auto& e : p.effects) {
      auto it = values.find(e.label);
      if (it == values.end()) throw MissingValue("no value for effect '" + e.label + "'");
      if (it->second < 0.0) rep.nonnegative = false;
      sum += it->second;
    }
    if (first) {
      rep.r = sum;
      first = false;
    }
    rep.max_residual = std::max(rep.max_residual, std::abs(sum - rep.r));
  }
  rep.constant_sum = rep.max_residual <= tol;
  return rep;
}

}  // namespace omlkit
