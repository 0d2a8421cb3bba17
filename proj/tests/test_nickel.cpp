#include "doctest.h"
#include "nilmat/nickel.hpp"
#include "test_support.hpp"

using namespace nilmat;
using nilmat::testing::random_word;

namespace {

CoordinatePolynomial t(std::size_t i, std::size_t m) { return coordinate_function(i, m); }
CoordinatePolynomial one(std::size_t m) { return CoordinatePolynomial::constant(m, 1); }

IntegerMatrix identity_with(std::size_t n, std::initializer_list<std::tuple<int, int, long>> entries) {
  IntegerMatrix m = IntegerMatrix::identity(n);
  for (auto [i, j, v] : entries) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
  return m;
}

}  // namespace

TEST_CASE("coordinate functions") {
  const auto t1 = t(1, 3);
  CHECK(t1.terms().size() == 1);
  CHECK(t1.coefficient({1, 0, 0}) == 1);
  CHECK(t(2, 3).evaluate(NormalWord{2, 5, -1}) == 5);
  CHECK(t(3, 3).evaluate(NormalWord(3)) == 0);
  CHECK_THROWS_AS(t(4, 3), std::out_of_range);
  CHECK(to_string(t(1, 3) - Rational(2) * t(3, 3) + one(3), {"a", "b", "c"}) == "a - 2*c + 1");
}

TEST_CASE("actions") {
  const auto u3 = builtin_presentation("ut:3");  // s12, s23, s13
  // h s12^-1 for h = s12^a s23^b s13^c has coordinates (a-1, b, c+b)
  CHECK(act(t(3, 3), u3.generator(0), u3) == t(3, 3) + t(2, 3));
  CHECK(act(t(1, 3), u3.generator(0), u3) == t(1, 3) - one(3));
  CHECK(act(t(3, 3), u3.generator(2), u3) == t(3, 3) - one(3));
  CHECK(act(one(3), NormalWord{4, -2, 7}, u3) == one(3));

  const auto h2 = builtin_presentation("heisenberg:2");
  CHECK(act(t(5, 5), h2.generator(0), h2) == t(5, 5) + t(3, 5));
  const auto k3 = act(t(5, 5), h2.generator(0, 3), h2);
  CHECK(k3 == t(5, 5) + Rational(3) * t(3, 5));

  // freenil23 y1 action: t4 -> t4 - t3 - t2 , t5 -> t5 + t2(t2-1)/2
  const auto f = freenil23_presentation();
  const auto a4 = act(t(4, 5), f.generator(0), f);
  CHECK(a4 == t(4, 5) - t(3, 5) - t(2, 5));
  CoordinatePolynomial quad(5);
  quad.add({0, 2, 0, 0, 0}, Rational(1, 2));
  quad.add({0, 1, 0, 0, 0}, Rational(-1, 2));
  CHECK(act(t(5, 5), f.generator(0), f) == t(5, 5) + quad);
}

TEST_CASE("interpolation matches raw evaluation") {
  std::mt19937_64 rng(61);
  for (const char* name : {"ut:4", "freenil23", "heisenberg:2"}) {
    CAPTURE(name);
    const auto p = builtin_presentation(name);
    const std::size_t m = p.generator_count();
    const auto g = random_word(rng, m, -3, 3);
    for (std::size_t i = 1; i <= m; ++i) {
      const auto img = act(t(i, m), g, p);
      for (int k = 0; k < 10; ++k) {
        const auto a = random_word(rng, m, -40, 40);
        CHECK(img.evaluate(a) == t(i, m).evaluate(p.multiply(a, p.inverse(g))));
      }
    }
  }
}

TEST_CASE("right action") {
  std::mt19937_64 rng(67);
  for (const char* name : {"ut:3", "heisenberg:2", "freenil23"}) {
    CAPTURE(name);
    const auto p = builtin_presentation(name);
    const auto mod = closure(p);
    for (int k = 0; k < 5; ++k) {
      const auto g1 = random_word(rng, p.generator_count(), -2, 2);
      const auto g2 = random_word(rng, p.generator_count(), -2, 2);
      for (const auto& f : mod.basis()) CHECK(act(act(f, g1, p), g2, p) == act(f, p.multiply(g1, g2), p));
    }
  }
}

TEST_CASE("closure dimensions") {
  const auto u3 = closure(builtin_presentation("ut:3"));
  CHECK(u3.dimension() == 4);
  CHECK(u3.labels() == std::vector<std::string>{"t12", "t23", "t13", "1"});
  CHECK(closure(builtin_presentation("ut:4")).dimension() == 7);
  // the lcs-standard basis needs t23*t34 as well
  CHECK(closure(builtin_presentation("ut:4:lcs-standard")).dimension() == 8);
  const auto h2 = closure(builtin_presentation("heisenberg:2"));
  CHECK(h2.dimension() == 6);
  CHECK(h2.labels() == std::vector<std::string>{"t1", "t2", "t3", "t4", "t5", "1"});
  // y1 sends t5 to t5 + t2(t2-1)/2, which is not in the span of t1..t5, 1
  const auto f = freenil23_presentation();
  const auto fm = closure(f);
  CHECK(fm.dimension() == 7);
  CoordinatePolynomial quad(5);
  quad.add({0, 2, 0, 0, 0}, Rational(1, 2));
  quad.add({0, 1, 0, 0, 0}, Rational(-1, 2));
  CHECK(fm.coordinates(quad).size() == 7);
  CHECK_THROWS_AS(closure(f, 6), GuardError);
  // closed: every generator moves each basis element inside the span
  for (std::size_t k = 0; k < 5; ++k)
    for (const auto& b : fm.basis()) CHECK_NOTHROW(fm.coordinates(act(b, f.generator(k), f)));
}

TEST_CASE("ut:3 embedding in the declared ordering") {
  const auto p = builtin_presentation("ut:3");
  const auto mod = closure(p);
  const auto order = declared_ordering(p, mod);
  CHECK(order == parse_ordering("t12,t13,t23,1", mod));
  CHECK(parse_ordering("0,2,1,3", mod) == order);
  CHECK_THROWS_AS(parse_ordering("t12,t13,1", mod), std::invalid_argument);
  const auto emb = nickel_embedding(p, mod, order);
  CHECK(emb.d == 4);
  CHECK(emb.unitriangular);
  CHECK(emb.integral);
  CHECK(emb.relators_ok);
  CHECK(emb.ordering == std::vector<std::string>{"t12", "t13", "t23", "1"});
  CHECK(emb.generators[0] == identity_with(4, {{1, 4, -1}, {2, 3, 1}}));
  CHECK(emb.generators[2] == identity_with(4, {{2, 4, -1}}));
  CHECK(image_weights(emb) == std::vector<unsigned>{1, 1, 2});

  const auto bad = nickel_embedding(p, mod, parse_ordering("1,t12,t13,t23", mod));
  CHECK_FALSE(bad.unitriangular);
  CHECK(bad.relators_ok);
}

TEST_CASE("ut:m embeddings are undistorted") {
  for (std::size_t m : {3u, 4u}) {
    CAPTURE(m);
    const auto p = unitriangular_presentation(m, PositionBasis::Flavor::Scheme);
    const auto mod = closure(p);
    CHECK(mod.dimension() == m * (m - 1) / 2 + 1);
    const auto emb = nickel_embedding(p, mod, declared_ordering(p, mod));
    REQUIRE(emb.unitriangular);
    CHECK(emb.relators_ok);
    const auto w = image_weights(emb);
    for (std::size_t k = 0; k < p.generator_count(); ++k) CHECK(w[k] == p.weight(k));
    std::vector<UnitriangularMatrix> images;
    for (const auto& g : emb.generators) images.push_back(g.to_unitriangular());
    CHECK(distortion_degree(SubgroupGens(emb.d, images)).d_H == 1);
  }
}

TEST_CASE("ordering searches") {
  SUBCASE("heisenberg:1 has an undistorted ordering") {
    const auto mod = closure(builtin_presentation("heisenberg:1"));
    const auto all = ordering_search(mod, SearchMode::Exhaustive);
    CHECK(all.size() == 24);
    CHECK(std::any_of(all.begin(), all.end(), [](const OrderingReport& r) { return r.unitriangular && r.d_H == 1; }));
  }
  SUBCASE("ut:3 keeps its weights under some ordering") {
    const auto mod = closure(builtin_presentation("ut:3"));
    const auto all = ordering_search(mod, SearchMode::Exhaustive, 2);
    CHECK(std::any_of(all.begin(), all.end(), [](const OrderingReport& r) {
      return r.unitriangular && r.weights == std::vector<unsigned>{1, 1, 2};
    }));
    const auto first = ordering_search(mod, SearchMode::ReportFirst);
    CHECK(first.back().unitriangular);
    std::size_t k = 0;
    for (; k < all.size() && !all[k].unitriangular; ++k) {
    }
    CHECK(first.size() == k + 1);
  }
  SUBCASE("heisenberg:2 is always distorted") {
    const auto mod = closure(builtin_presentation("heisenberg:2"));
    const auto all = ordering_search(mod, SearchMode::Exhaustive, 2);
    CHECK(all.size() == 720);
    std::size_t uni = 0;
    for (const auto& r : all)
      if (r.unitriangular) {
        ++uni;
        CHECK(r.weights[4] >= 3);
        CHECK(r.d_H >= Rational(3, 2));
      }
    CHECK(uni > 0);
    // results do not depend on the worker count
    const auto serial = ordering_search(mod, SearchMode::Exhaustive, 1);
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(serial[i].permutation == all[i].permutation);
      CHECK(serial[i].d_H == all[i].d_H);
    }
  }
  SUBCASE("freenil23 cannot keep both weight-3 generators") {
    const auto mod = closure(freenil23_presentation());
    const auto all = ordering_search(mod, SearchMode::Exhaustive, 2);
    std::size_t uni = 0;
    for (const auto& r : all)
      if (r.unitriangular) {
        ++uni;
        CHECK_FALSE((r.weights[3] == 3 && r.weights[4] == 3));
      }
    CHECK(uni > 0);
  }
  SUBCASE("guard") {
    const auto mod = closure(builtin_presentation("ut:4"));
    CHECK_THROWS_AS(ordering_search(mod, SearchMode::Exhaustive, 1, 6), GuardError);
  }
}
