#include <catch2/catch_amalgamated.hpp>

#include "omlkit/gaussian.hpp"

using namespace omlkit;

TEST_CASE("rational parsing") {
  CHECK(rational_from_string("3/4") == Rational(3, 4));
  CHECK(rational_from_string("-6/8") == Rational(-3, 4));
  CHECK(rational_from_string("5") == 5);
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
}

TEST_CASE("field arithmetic is exact") {
  GaussianRational i{0, 1};
  CHECK(i * i == GaussianRational(-1));
  GaussianRational z{Rational(1, 3), Rational(-2, 7)};
  GaussianRational w{Rational(5, 2), Rational(4, 9)};
  CHECK((z / w) * w == z);
  CHECK(z + (-z) == GaussianRational(0));
  CHECK_THROWS_AS(z / GaussianRational(0), std::domain_error);
}

TEST_CASE("conjugation is an involution and norm2 is nonnegative") {
  GaussianRational z{Rational(-3, 5), Rational(7, 11)};
  CHECK(z.conj().conj() == z);
  CHECK(z.norm2() >= 0);
  CHECK((z * z.conj()).im == 0);
  CHECK((z * z.conj()).re == z.norm2());
}

TEST_CASE("hermitian inner product") {
  Vec u{GaussianRational(1), GaussianRational(0, 1)};   // (1, i)
  Vec v{GaussianRational(0, 1), GaussianRational(1)};   // (i, 1)
  // <u,v> = conj(1)*i + conj(i)*1 = i - i = 0
  CHECK(inner(u, v) == GaussianRational(0));
  CHECK(inner(u, u) == GaussianRational(2));
}

TEST_CASE("tensor_vector follows the (i,j) -> i*dim2 + j convention") {
  Vec e0{1, 0}, e1{0, 1};
  CHECK(tensor_vector(e0, e0) == Vec{1, 0, 0, 0});
  Vec a{1, 1}, b{1, -1};
  CHECK(tensor_vector(a, b) == Vec{1, -1, 1, -1});
}
