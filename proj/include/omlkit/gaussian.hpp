#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace omlkit {

using Rational = mpq_class;

/// Parse a rational from "p", "p/q" or "-p/q". Throws std::invalid_argument
/// on malformed input or zero denominator.
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
  if (r.get_den() == 0) {
    throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) {
  return r.get_str();
}

/// Exact complex scalar a + bi with rational a, b. Field operations are
/// exact; equality is decidable. Stands in for the complex numbers at the
/// small dimensions this library works in.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(int n) : re(n) {}  // NOLINT(google-explicit-constructor)
  // GMP rationals built from a numerator/denominator pair are not reduced
  // automatically, and arithmetic on unreduced values is undefined.
  GaussianRational(Rational r) : re(std::move(r)) { re.canonicalize(); }  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }

  [[nodiscard]] GaussianRational conj() const { return {re, -im}; }

  /// |z|^2 = z * conj(z), always a non-negative rational.
  [[nodiscard]] Rational norm2() const { return re * re + im * im; }

  GaussianRational operator-() const { return {-re, -im}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n2 = b.norm2();
    if (n2 == 0) throw std::domain_error("division by zero GaussianRational");
    GaussianRational num = a * b.conj();
    return {num.re / n2, num.im / n2};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

  /// Total order (lexicographic on re, im); used only for canonical sorting.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c < 0;
    return cmp(a.im, b.im) < 0;
  }

  [[nodiscard]] std::string str() const {
    if (im == 0) return rational_to_string(re);
    std::string s = rational_to_string(re);
    s += (im < 0) ? "-" : "+";
    Rational a = abs(im);
    s += rational_to_string(a);
    s += "i";
    return s;
  }
};

using Vec = std::vector<GaussianRational>;

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

/// Hermitian inner product, conjugate-linear in the first argument.
inline GaussianRational inner(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("inner: length mismatch");
  GaussianRational acc;
  for (size_t i = 0; i < u.size(); ++i) acc += u[i].conj() * v[i];
  return acc;
}

/// Kronecker product with index convention (i, j) -> i * dim(w) + j.
inline Vec tensor_vector(const Vec& v, const Vec& w) {
  Vec out;
  out.reserve(v.size() * w.size());
  for (const auto& a : v) {
    for (const auto& b : w) out.push_back(a * b);
  }
  return out;
}

inline std::string vec_to_string(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace omlkit
