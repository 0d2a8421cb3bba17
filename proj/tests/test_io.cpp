#include "doctest.h"
#include "nilmat/io.hpp"
#include "test_support.hpp"

using namespace nilmat;
using nilmat::testing::random_unitriangular;

TEST_CASE("rationals and integers") {
  CHECK(io::rational_string(Rational(3, 2)) == "3/2");
  CHECK(io::rational_string(Rational(4, 2)) == "2/1");
  CHECK(io::rational_string(Rational(-1, 3)) == "-1/3");
  CHECK(io::parse_rational("6/4") == Rational(3, 2));
  CHECK(io::parse_rational("5") == 5);
  CHECK_THROWS_AS(io::parse_rational("x"), std::invalid_argument);
  CHECK(io::parse_integer(io::Json("-123456789012345678901234567890")) ==
        Integer("-123456789012345678901234567890"));
  CHECK(io::parse_integer(io::Json(7)) == 7);
  CHECK_THROWS_AS(io::parse_integer(io::Json(1.5)), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_integer(io::Json("1e3")), std::invalid_argument);
}

TEST_CASE("matrix round trip") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_unitriangular(rng, 5, -1000, 1000);
    const auto j = io::to_json(m);
    CHECK(j["n"] == 5);
    CHECK(j["rows"][0][0] == "1");
    CHECK(io::unitriangular_from_json(io::parse(j.dump(), "matrix")) == m);
  }
  CHECK(io::to_json(elementary(2, 1, 2, 3)).dump() == R"({"n":2,"rows":[["1","3"],["0","1"]]})");
  CHECK_THROWS_AS(io::unitriangular_from_json(io::parse(R"({"n":2,"rows":[["1","0"],["1","1"]]})", "m")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::unitriangular_from_json(io::parse(R"({"n":2,"rows":[["1","0"]]})", "m")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::unitriangular_from_json(io::parse(R"({"rows":[]})", "m")), std::invalid_argument);
  CHECK_THROWS_AS(io::parse("{", "m"), std::invalid_argument);
}

TEST_CASE("presentation round trip") {
  for (const char* name : {"ut:3", "ut:4", "heisenberg:2", "freenil23"}) {
    CAPTURE(name);
    const auto p = builtin_presentation(name);
    const auto j = io::to_json(p);
    const auto q = io::presentation_from_json(io::parse(j.dump(), "presentation"));
    CHECK(q.weights() == p.weights());
    CHECK(q.label() == p.label());
    for (std::size_t a = 0; a < p.generator_count(); ++a)
      for (std::size_t b = 0; b < a; ++b) CHECK(q.relation(a, b) == p.relation(a, b));
    CHECK(io::to_json(q) == j);
  }
  // 1-based indices: ut:3 has [x2, x1] = x3^-1
  const auto j = io::to_json(builtin_presentation("ut:3"));
  CHECK(j["relations"].size() == 1);
  CHECK(j["relations"][0]["j"] == 2);
  CHECK(j["relations"][0]["i"] == 1);
  CHECK(j["relations"][0]["word"] == io::Json::array({"0", "0", "-1"}));

  CHECK_THROWS_AS(io::presentation_from_json(io::parse(R"({"M":2,"weights":[1],"relations":[]})", "p")),
                  std::invalid_argument);
  // word supported below j
  CHECK_THROWS_AS(io::presentation_from_json(io::parse(
                      R"({"M":3,"weights":[1,1,2],"relations":[{"j":2,"i":1,"word":[1,0,0]}]})", "p")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::presentation_from_json(io::parse(
                      R"({"M":3,"weights":[1,1,2],"relations":[{"j":1,"i":2,"word":[0,0,1]}]})", "p")),
                  std::invalid_argument);
}

TEST_CASE("subgroups and reports") {
  const auto h = construct_pq(3, 2);
  const auto j = io::to_json(h);
  CHECK(j["N"] == 4);
  CHECK(io::subgroup_from_json(io::parse(j.dump(), "subgroup")).generators() == h.generators());
  CHECK_THROWS_AS(io::subgroup_from_json(io::parse(R"({"N":3,"generators":[{"n":2,"rows":[["1","0"],["0","1"]]}]})",
                                                   "s")),
                  std::invalid_argument);
  const auto rep = io::to_json(distortion_degree(h));
  CHECK(rep["d_H"] == "3/2");
  CHECK(io::unitriangular_from_json(rep["witness"]) == elementary(4, 1, 4));
  CHECK(rep["strata"].is_array());
  // key order is stable
  CHECK(rep.begin().key() == "d_H");
}

TEST_CASE("embeddings and modules") {
  const auto p = builtin_presentation("ut:3");
  const JenningsBasis b(p, 3);
  const auto e = io::to_json(jennings_embedding(p, b), b);
  CHECK(e["d"] == 7);
  CHECK(e["ordering"][1] == io::Json::array({1, 0, 0}));
  CHECK(e["generators"].size() == 3);
  CHECK(e["unitriangular"] == true);

  const auto mod = closure(p);
  const auto n = io::to_json(nickel_embedding(p, mod, declared_ordering(p, mod)));
  CHECK(n["ordering"] == io::Json::array({0, 2, 1, 3}));
  CHECK(n["labels"] == io::Json::array({"t12", "t13", "t23", "1"}));
  const auto m = io::to_json(mod, p);
  CHECK(m["basis"].size() == 4);
  CHECK(m["basis"][0][0]["exponents"] == io::Json::array({1, 0, 0}));
  CHECK(m["basis"][0][0]["coefficient"] == "1/1");
  CHECK(m["generators"][0]["n"] == 4);
}
