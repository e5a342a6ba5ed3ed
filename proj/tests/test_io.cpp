#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "omlkit/io.hpp"
#include "omlkit/products.hpp"
#include "omlkit/predicates.hpp"

using namespace omlkit;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("lattice files round-trip") {
  for (const auto& l : {FiniteOML::boolean(2), FiniteOML::mo(3), FiniteOML::o6()}) {
    auto j = lattice_to_json(l);
    FiniteOML back = lattice_from_json(j);
    CHECK(back == l);
    // and byte-identical re-serialization
    CHECK(lattice_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("generator form") {
  auto j = nlohmann::json::parse(R"({"generator":"mo","n":2})");
  CHECK(lattice_from_json(j) == FiniteOML::mo(2));
  auto j2 = nlohmann::json::parse(R"({"generator":"o6"})");
  CHECK(lattice_from_json(j2) == FiniteOML::o6());
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"generator":"zzz"})")), ParseError);
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"generator":"mo"})")), ParseError);
}

TEST_CASE("explicit lattice json validates") {
  auto j = nlohmann::json::parse(R"({
    "elements": ["0", "x", "x'", "1"],
    "leq": [["0","x"], ["0","x'"], ["x","1"], ["x'","1"]],
    "ortho": {"0":"1", "1":"0", "x":"x'", "x'":"x"}
  })");
  FiniteOML l = lattice_from_json(j);
  CHECK(l.size() == 4);
  CHECK(l.meet(l.index("x"), l.index("x'")) == l.zero());
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"elements":["a"]})")), ParseError);
}

TEST_CASE("ray seeds round-trip with exact rationals") {
  RaySeed seed;
  seed.dim = 2;
  seed.closure_depth = 2;
  seed.rays = {Vec{GaussianRational(Rational(1, 3), Rational(-2, 7)), GaussianRational(1)},
               Vec{1, -1}};
  auto j = rayseed_to_json(seed);
  RaySeed back = rayseed_from_json(j);
  CHECK(back.dim == seed.dim);
  CHECK(back.closure_depth == seed.closure_depth);
  CHECK(back.cap == seed.cap);
  REQUIRE(back.rays.size() == 2);
  CHECK(back.rays[0] == seed.rays[0]);
  CHECK(back.rays[1] == seed.rays[1]);
}

TEST_CASE("ray seed parsing accepts strings and integers, rejects junk") {
  auto j = nlohmann::json::parse(R"({
    "dim": 2,
    "rays": [[["1/2","0"], [1, "0"]], ["3", ["0","1"]]],
    "closure_depth": 1
  })");
  RaySeed seed = rayseed_from_json(j);
  CHECK(seed.rays[0][0] == GaussianRational(Rational(1, 2)));
  CHECK(seed.rays[1][0] == GaussianRational(3));
  CHECK(seed.rays[1][1] == GaussianRational(Rational(0), Rational(1)));
  CHECK_THROWS_AS(rayseed_from_json(nlohmann::json::parse(R"({"dim":2,"rays":[["x","0"]],
    "closure_depth":1})")),
                  std::exception);
  CHECK_THROWS_AS(rayseed_from_json(nlohmann::json::parse(R"({"dim":3,"rays":[["1","0"]],
    "closure_depth":1})")),
                  ParseError);
}

TEST_CASE("povm files round-trip") {
  CMat id = CMat::Identity(2, 2);
  CMat p(2, 2);
  p << 0.25, std::complex<double>(0, -0.25), std::complex<double>(0, 0.25), 0.25;
  Povm pv{{Effect{"half", 0.5 * id}, Effect{"tilted", p}, Effect{"rest", (0.5 * id - p).eval()}}};
  auto j = povm_to_json(pv);
  Povm back = povm_from_json(j);
  REQUIRE(back.effects.size() == 3);
  for (size_t i = 0; i < back.effects.size(); ++i) {
    CHECK(back.effects[i].label == pv.effects[i].label);
    CHECK(max_abs(back.effects[i].matrix - pv.effects[i].matrix) == 0.0);
  }
  CHECK(validate_povm(back.effects).ok);
}

TEST_CASE("file io with parse errors carrying position info") {
  std::string path = temp_path("omlkit_bad.json");
  write_text_file(path, "{\"elements\": [");
  try {
    load_lattice_file(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("parse error") != std::string::npos);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_lattice_file(temp_path("omlkit_missing_file.json")), ParseError);
}

TEST_CASE("saved lattice files reload to equal lattices") {
  std::string path = temp_path("omlkit_mo2.lat");
  save_lattice_file(path, FiniteOML::mo(2));
  FiniteOML back = load_lattice_file(path);
  CHECK(back == FiniteOML::mo(2));
  CHECK(check_piron(back).piron());
  std::remove(path.c_str());
}

TEST_CASE("product embeddings serialize as lattice references plus maps") {
  auto pe = boolean_product_embedding(2, 2);
  std::string dir = std::filesystem::temp_directory_path().string();
  save_lattice_file(dir + "/omlkit_fa.lat", pe.factor_a);
  save_lattice_file(dir + "/omlkit_fb.lat", pe.factor_b);
  save_lattice_file(dir + "/omlkit_prod.lat", pe.product);
  auto j = embedding_to_json(pe, "omlkit_fa.lat", "omlkit_fb.lat", "omlkit_prod.lat");
  std::string path = dir + "/omlkit_embedding.json";
  write_text_file(path, j.dump(2));
  ProductEmbedding back = load_embedding_file(path);
  CHECK(back.factor_a == pe.factor_a);
  CHECK(back.product == pe.product);
  CHECK(back.inj_a == pe.inj_a);
  CHECK(back.inj_b == pe.inj_b);
  auto rep = verify_product_conditions(back);
  CHECK(rep.all_ok());
  // the rendered report has one section per condition
  std::string text = product_report_text(rep, back);
  for (const char* needle : {"condition 1", "condition 2", "condition 3", "condition 4"}) {
    CHECK(text.find(needle) != std::string::npos);
  }
  for (const char* f : {"omlkit_fa.lat", "omlkit_fb.lat", "omlkit_prod.lat", "omlkit_embedding.json"}) {
    std::remove((dir + "/" + f).c_str());
  }
}
