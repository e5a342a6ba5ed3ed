#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "omlkit/closure.hpp"
#include "omlkit/gaussian.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/povm.hpp"
#include "omlkit/products.hpp"

namespace omlkit {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

namespace detail {

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

inline GaussianRational scalar_from_json(const nlohmann::json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw ParseError("complex entry must be [re, im]");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
  }
  return {rational_from_json(j), 0};
}

inline Json scalar_to_json(const GaussianRational& z) {
  return Json::array({rational_to_string(z.re), rational_to_string(z.im)});
}

}  // namespace detail

inline Vec vec_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("vector must be a non-empty array");
  Vec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(detail::scalar_from_json(e));
  return v;
}

inline Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(detail::scalar_to_json(z));
  return out;
}

/// Lattice file: either an explicit description
///   {"elements": [...], "leq": [[a, b], ...], "ortho": {a: a', ...}}
/// (the leq pairs may be any generating set; their reflexive-transitive
/// closure is taken) or a generator form
///   {"generator": "boolean"|"mo", "n": k} or {"generator": "o6"}.
inline FiniteOML lattice_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("lattice file must be a JSON object");
  if (j.contains("generator")) {
    std::string g = j.at("generator").get<std::string>();
    if (g == "o6") return FiniteOML::o6();
    if (g == "boolean" || g == "mo") {
      if (!j.contains("n") || !j.at("n").is_number_integer()) {
        throw ParseError("generator '" + g + "' needs an integer field \"n\"");
      }
      int n = j.at("n").get<int>();
      return g == "boolean" ? FiniteOML::boolean(n) : FiniteOML::mo(n);
    }
    throw ParseError("unknown generator '" + g + "'");
  }
  for (const char* key : {"elements", "leq", "ortho"}) {
    if (!j.contains(key)) throw ParseError(std::string("lattice file missing \"") + key + "\"");
  }
  std::vector<std::string> names = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : j.at("leq")) {
    if (!p.is_array() || p.size() != 2) throw ParseError("leq entries must be [a, b] pairs");
    pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  std::map<std::string, std::string> ortho;
  for (const auto& [k, v] : j.at("ortho").items()) ortho[k] = v.get<std::string>();
  return FiniteOML::from_order(std::move(names), pairs, ortho);
}

inline Json lattice_to_json(const FiniteOML& l) {
  Json out;
  out["elements"] = l.names();
  Json pairs = Json::array();
  for (size_t a = 0; a < l.size(); ++a) {
    for (size_t b = 0; b < l.size(); ++b) {
      if (a != b && l.leq(static_cast<int>(a), static_cast<int>(b))) {
        pairs.push_back(Json::array({l.name(static_cast<int>(a)), l.name(static_cast<int>(b))}));
      }
    }
  }
  out["leq"] = std::move(pairs);
  Json om = Json::object();
  for (size_t a = 0; a < l.size(); ++a) {
    om[l.name(static_cast<int>(a))] = l.name(l.ortho_of(static_cast<int>(a)));
  }
  out["ortho"] = std::move(om);
  return out;
}

/// Ray seed file: {"dim": 4, "rays": [[[re, im], ...], ...],
/// "closure_depth": 2, "cap": 512}. Rationals are "p/q" strings or
/// integers; a bare rational where a complex entry is expected is read as
/// a real entry. "cap" is optional.
inline RaySeed rayseed_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("ray seed file must be a JSON object");
  for (const char* key : {"dim", "rays", "closure_depth"}) {
    if (!j.contains(key)) throw ParseError(std::string("ray seed missing \"") + key + "\"");
  }
  RaySeed seed;
  seed.dim = j.at("dim").get<size_t>();
  seed.closure_depth = j.at("closure_depth").get<int>();
  if (j.contains("cap")) seed.cap = j.at("cap").get<size_t>();
  for (const auto& r : j.at("rays")) {
    Vec v = vec_from_json(r);
    if (v.size() != seed.dim) throw ParseError("ray length does not match \"dim\"");
    if (is_zero_vec(v)) throw ParseError("seed rays must be nonzero");
    seed.rays.push_back(std::move(v));
  }
  return seed;
}

inline Json rayseed_to_json(const RaySeed& seed) {
  Json out;
  out["dim"] = seed.dim;
  Json rays = Json::array();
  for (const auto& r : seed.rays) rays.push_back(vec_to_json(r));
  out["rays"] = std::move(rays);
  out["closure_depth"] = seed.closure_depth;
  out["cap"] = seed.cap;
  return out;
}

/// POVM file: {"effects": [{"label": ..., "matrix": [[[re, im], ...], ...]},
/// ...]} with floating-point entries.
inline Povm povm_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("effects")) throw ParseError("POVM file missing \"effects\"");
  Povm p;
  for (const auto& je : j.at("effects")) {
    Effect e;
    e.label = je.at("label").get<std::string>();
    const auto& jm = je.at("matrix");
    const auto rows = static_cast<Eigen::Index>(jm.size());
    if (rows == 0) throw ParseError("empty effect matrix");
    const auto cols = static_cast<Eigen::Index>(jm[0].size());
    e.matrix = CMat::Zero(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (static_cast<Eigen::Index>(jm[i].size()) != cols) {
        throw ParseError("ragged effect matrix");
      }
      for (Eigen::Index k = 0; k < cols; ++k) {
        const auto& entry = jm[i][k];
        if (!entry.is_array() || entry.size() != 2) {
          throw ParseError("matrix entries must be [re, im]");
        }
        e.matrix(i, k) = std::complex<double>(entry[0].get<double>(), entry[1].get<double>());
      }
    }
    p.effects.push_back(std::move(e));
  }
  return p;
}

inline Json povm_to_json(const Povm& p) {
  Json effects = Json::array();
  for (const auto& e : p.effects) {
    Json jm = Json::array();
    for (Eigen::Index i = 0; i < e.matrix.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index k = 0; k < e.matrix.cols(); ++k) {
        row.push_back(Json::array({e.matrix(i, k).real(), e.matrix(i, k).imag()}));
      }
      jm.push_back(std::move(row));
    }
    effects.push_back(Json{{"label", e.label}, {"matrix", std::move(jm)}});
  }
  return Json{{"effects", std::move(effects)}};
}

/// Embedding file: three lattice file references plus explicit element maps,
///   {"factor_a": "qa.lat", "factor_b": "qb.lat", "product": "prod.lat",
///    "inj_a": {"0": "s0", ...}, "inj_b": {...}}
/// Relative lattice paths are resolved against `base_dir` when given.
inline ProductEmbedding embedding_from_json(const nlohmann::json& j, const std::string& base_dir);

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WriteError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw WriteError("write to '" + path + "' failed");
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline FiniteOML load_lattice_file(const std::string& path) {
  return lattice_from_json(parse_json_text(read_text_file(path), path));
}

inline void save_lattice_file(const std::string& path, const FiniteOML& l) {
  write_text_file(path, lattice_to_json(l).dump(2) + "\n");
}

inline RaySeed load_rayseed_file(const std::string& path) {
  return rayseed_from_json(parse_json_text(read_text_file(path), path));
}

inline ProductEmbedding embedding_from_json(const nlohmann::json& j, const std::string& base_dir) {
  for (const char* key : {"factor_a", "factor_b", "product", "inj_a", "inj_b"}) {
    if (!j.contains(key)) throw ParseError(std::string("embedding file missing \"") + key + "\"");
  }
  auto resolve = [&](const std::string& p) {
    if (base_dir.empty() || p.empty() || p.front() == '/') return p;
    return base_dir + "/" + p;
  };
  FiniteOML fa = load_lattice_file(resolve(j.at("factor_a").get<std::string>()));
  FiniteOML fb = load_lattice_file(resolve(j.at("factor_b").get<std::string>()));
  FiniteOML prod = load_lattice_file(resolve(j.at("product").get<std::string>()));
  auto read_map = [&](const nlohmann::json& jm, const FiniteOML& factor) {
    std::vector<int> inj(factor.size(), -1);
    for (const auto& [from, to] : jm.items()) inj[factor.index(from)] = prod.index(to.get<std::string>());
    for (size_t i = 0; i < inj.size(); ++i) {
      if (inj[i] < 0) throw ParseError("embedding map missing element " + factor.name(static_cast<int>(i)));
    }
    return inj;
  };
  std::vector<int> inj_a = read_map(j.at("inj_a"), fa);
  std::vector<int> inj_b = read_map(j.at("inj_b"), fb);
  return ProductEmbedding{std::move(fa), std::move(fb), std::move(prod), std::move(inj_a),
                          std::move(inj_b)};
}

inline Json embedding_to_json(const ProductEmbedding& pe, const std::string& factor_a_path,
                              const std::string& factor_b_path, const std::string& product_path) {
  Json ja = Json::object(), jb = Json::object();
  for (size_t i = 0; i < pe.factor_a.size(); ++i) {
    ja[pe.factor_a.name(static_cast<int>(i))] = pe.product.name(pe.inj_a[i]);
  }
  for (size_t i = 0; i < pe.factor_b.size(); ++i) {
    jb[pe.factor_b.name(static_cast<int>(i))] = pe.product.name(pe.inj_b[i]);
  }
  return Json{{"factor_a", factor_a_path}, {"factor_b", factor_b_path},
              {"product", product_path},  {"inj_a", std::move(ja)},
              {"inj_b", std::move(jb)}};
}

inline ProductEmbedding load_embedding_file(const std::string& path) {
  std::string dir;
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return embedding_from_json(parse_json_text(read_text_file(path), path), dir);
}

}  // namespace omlkit
