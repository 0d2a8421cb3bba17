#include "doctest.h"
#include "nilmat/matgroup.hpp"
#include "test_support.hpp"

using namespace nilmat;
using nilmat::testing::matrix_with;
using nilmat::testing::random_unitriangular;

TEST_CASE("elementary matrices") {
  const auto s12 = elementary(3, 1, 2, 1);
  CHECK(s12(1, 2) == 1);
  CHECK(s12 == matrix_with(3, {{1, 2, 1}}));
  CHECK(elementary(3, 1, 2, 0).is_identity());
  CHECK(elementary(4, 1, 4, -7) == matrix_with(4, {{1, 4, -7}}));
  CHECK_THROWS_AS(elementary(3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(elementary(3, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(elementary(3, 1, 4), std::out_of_range);
}

TEST_CASE("from_rows validates the unitriangular shape") {
  CHECK_THROWS_AS(UnitriangularMatrix::from_rows({{1, 0}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(UnitriangularMatrix::from_rows({{2, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(UnitriangularMatrix::from_rows({{1, 0}, {0}}), std::invalid_argument);
  CHECK(UnitriangularMatrix::from_rows({{1, 5}, {0, 1}})(1, 2) == 5);
}

TEST_CASE("products, inverses and commutators") {
  const auto s12 = elementary(3, 1, 2);
  const auto s23 = elementary(3, 2, 3);
  CHECK(inverse(s12) == elementary(3, 1, 2, -1));
  CHECK(multiply(s12, s23) == matrix_with(3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}}));
  CHECK(commutator(s12, s23) == elementary(3, 1, 3));
  CHECK(commutator(s12, s12).is_identity());
  CHECK(commutator(elementary(4, 2, 3), elementary(4, 1, 2)) == elementary(4, 1, 3, -1));
  CHECK_THROWS_AS(multiply(s12, elementary(4, 1, 2)), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_unitriangular(rng, 5, -9, 9);
    CHECK(multiply(a, inverse(a)).is_identity());
    CHECK(multiply(inverse(a), a).is_identity());
    CHECK(power(a, 3) == a * a * a);
    CHECK(power(a, -2) == inverse(a * a));
  }
}

TEST_CASE("level weight") {
  CHECK(level_weight(elementary(6, 1, 6)) == 5u);
  CHECK(level_weight(elementary(3, 1, 2)) == 1u);
  CHECK(level_weight(elementary(7, 1, 7, -1)) == 6u);
  CHECK_FALSE(level_weight(UnitriangularMatrix(4)).has_value());

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int t = 0; t < 200; ++t) {
    // sparse random entries so that deeper weights actually occur
    UnitriangularMatrix a(5), b(5);
    for (std::size_t i = 1; i <= 5; ++i)
      for (std::size_t j = i + 1; j <= 5; ++j) {
        if (coin(rng) == 0) a.set(i, j, coin(rng) - 1);
        if (coin(rng) == 0) b.set(i, j, coin(rng) - 1);
      }
    const auto c = commutator(a, b);
    if (c.is_identity() || a.is_identity() || b.is_identity()) continue;
    CHECK(*level_weight(c) >= *level_weight(a) + *level_weight(b));
  }
}

TEST_CASE("nilpotent log and exp") {
  const auto s12 = elementary(3, 1, 2);
  const auto s23 = elementary(3, 2, 3);
  const NilpotentMatrix l12 = log_unipotent(s12);
  CHECK(l12(1, 2) == 1);
  CHECK(l12(1, 3) == 0);

  // N = e12 + e23 + e13, N^2 = e13: log = N - N^2/2
  const NilpotentMatrix l = log_unipotent(multiply(s12, s23));
  CHECK(l(1, 2) == 1);
  CHECK(l(2, 3) == 1);
  CHECK(l(1, 3) == Rational(1, 2));

  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_unitriangular(rng, 4, -9, 9);
    const auto back = to_unitriangular(exp_nilpotent(log_unipotent(a)));
    REQUIRE(back.has_value());
    CHECK(*back == a);
    const NilpotentMatrix x = log_unipotent(a);
    CHECK(log_unipotent(exp_nilpotent(x)) == x);
  }
  CHECK_THROWS_AS(NilpotentMatrix(RationalMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("position bases") {
  const PositionBasis lcs(4, PositionBasis::Flavor::LcsStandard);
  const PositionBasis scheme(4, PositionBasis::Flavor::Scheme);
  using P = std::pair<std::size_t, std::size_t>;
  CHECK(lcs.positions() == std::vector<P>{{1, 2}, {2, 3}, {3, 4}, {1, 3}, {2, 4}, {1, 4}});
  CHECK(scheme.positions() == std::vector<P>{{1, 2}, {2, 3}, {1, 3}, {3, 4}, {2, 4}, {1, 4}});
  CHECK(scheme.index_of(2, 4) == 4);
}

TEST_CASE("Mal'cev coordinates") {
  const PositionBasis b3(3, PositionBasis::Flavor::LcsStandard);
  CHECK(malcev_coordinates(elementary(3, 1, 3), b3) == std::vector<Integer>{0, 0, 1});
  CHECK(malcev_coordinates(UnitriangularMatrix(3), b3) == std::vector<Integer>{0, 0, 0});
  // s23 s12 = s12 s23 s13^-1 (peel-off by hand)
  const auto ba = multiply(elementary(3, 2, 3), elementary(3, 1, 2));
  CHECK(malcev_coordinates(ba, b3) == std::vector<Integer>{1, 1, -1});
  CHECK(from_coordinates({1, 1, -1}, b3) == ba);

  std::mt19937_64 rng(5);
  for (auto flavor : {PositionBasis::Flavor::LcsStandard, PositionBasis::Flavor::Scheme}) {
    for (std::size_t n : {3u, 4u, 5u}) {
      const PositionBasis basis(n, flavor);
      for (int t = 0; t < 40; ++t) {
        const auto a = random_unitriangular(rng, n, -6, 6);
        CHECK(from_coordinates(malcev_coordinates(a, basis), basis) == a);
      }
      // tails are subgroups
      for (std::size_t k = 1; k < basis.length(); ++k) {
        auto tail_element = [&] {
          std::vector<Integer> v(basis.length());
          std::uniform_int_distribution<long> d(-4, 4);
          for (std::size_t p = k; p < basis.length(); ++p) v[p] = d(rng);
          return from_coordinates(v, basis);
        };
        for (int t = 0; t < 5; ++t) {
          const auto x = tail_element(), y = tail_element();
          for (const auto& z : {multiply(x, y), inverse(x)}) {
            const auto c = malcev_coordinates(z, basis);
            for (std::size_t p = 0; p < k; ++p) CHECK(c[p] == 0);
          }
        }
      }
    }
  }
}
