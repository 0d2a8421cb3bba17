#include "doctest.h"
#include "nilmat/distortion.hpp"
#include "test_support.hpp"

using namespace nilmat;
using nilmat::testing::random_unitriangular;

namespace {

UnitriangularMatrix s(std::size_t n, std::size_t i, std::size_t j, long a = 1) { return elementary(n, i, j, a); }

SubgroupGens ut(std::size_t n) {
  std::vector<UnitriangularMatrix> g;
  for (std::size_t i = 1; i < n; ++i) g.push_back(s(n, i, i + 1));
  return SubgroupGens(n, g);
}

// 1 to 3 random elementary factors s_ij^{+-1}
UnitriangularMatrix short_word(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> len(1, 3), pos(1, n);
  std::uniform_int_distribution<int> sign(0, 1);
  UnitriangularMatrix w(n);
  for (std::size_t l = len(rng); l > 0; --l) {
    std::size_t i = pos(rng), j = pos(rng);
    while (i == j) j = pos(rng);
    if (i > j) std::swap(i, j);
    w = multiply(w, s(n, i, j, sign(rng) ? 1 : -1));
  }
  return w;
}

Rational ratio(std::size_t a, std::size_t b) {
  Rational r(static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  r.canonicalize();
  return r;
}

SubgroupGens random_subgroup(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> count(2, 3);
  std::vector<UnitriangularMatrix> g;
  for (int c = count(rng); c > 0; --c) g.push_back(short_word(rng, n));
  return SubgroupGens(n, g);
}

std::size_t power_membership_weight(const UnitriangularMatrix& h, const SubgroupGens& H) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < H.ambient(); ++k) {
    const auto seq = standardize(lower_central_gens(H, k));
    bool found = false;
    UnitriangularMatrix p = h;
    for (int m = 1; m <= 64 && !found; ++m, p = multiply(p, h)) found = member(p, seq).member;
    if (found) best = k;
  }
  return best;
}

}  // namespace

TEST_CASE("standardize") {
  const auto full = standardize(ut(3));
  const auto slots = full.slots();
  REQUIRE(slots.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(slots[k].index == k);
    CHECK(slots[k].lead == 1);
  }
  const auto z2 = standardize(SubgroupGens(3, {s(3, 1, 3, 2)}));
  REQUIRE(z2.size() == 1);
  CHECK(z2.slots()[0].lead == 2);
  CHECK(standardize(SubgroupGens(3, {UnitriangularMatrix(3)})).size() == 0);
  // negative and non-dividing leads combine by gcd
  const auto g = standardize(SubgroupGens(3, {s(3, 1, 2, -4), multiply(s(3, 1, 2, 6), s(3, 2, 3, 1))}));
  CHECK(g.slots()[0].lead == 2);

  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) CHECK(member(random_unitriangular(rng, 3, -9, 9), full).member);
}

TEST_CASE("membership") {
  const auto z2 = standardize(SubgroupGens(3, {s(3, 1, 3, 2)}));
  CHECK_FALSE(member(s(3, 1, 3), z2).member);
  CHECK(member(s(3, 1, 3, 2), z2).member);
  CHECK(member(s(3, 1, 3, -6), z2).certificate == std::vector<Integer>{-3});
  CHECK(member(s(3, 1, 3), standardize(ut(3))).member);

  std::mt19937_64 rng(43);
  for (int t = 0; t < 10; ++t) {
    const auto H = random_subgroup(rng, 4);
    const auto seq = standardize(H);
    // every word of length <= 4 in the generators and their inverses
    std::vector<UnitriangularMatrix> letters;
    for (const auto& g : H.generators()) {
      letters.push_back(g);
      letters.push_back(inverse(g));
    }
    std::vector<UnitriangularMatrix> frontier{UnitriangularMatrix(4)};
    for (int l = 0; l < 4; ++l) {
      std::vector<UnitriangularMatrix> next;
      for (const auto& w : frontier)
        for (const auto& x : letters) next.push_back(multiply(w, x));
      for (const auto& w : next) CHECK(member(w, seq).member);
      frontier = std::move(next);
    }
    // certificates reproduce the element
    for (const auto& w : frontier) {
      const auto m = member(w, seq);
      UnitriangularMatrix r(4);
      const auto elems = seq.elements();
      for (std::size_t k = 0; k < elems.size(); ++k) r = multiply(r, power(elems[k], m.certificate[k]));
      CHECK(r == w);
    }
    // elements whose logarithm leaves the Lie span are not members
    const auto span = lie_span(H);
    int outside = 0;
    while (outside < 10) {
      const auto x = random_unitriangular(rng, 4, -3, 3);
      if (span.contains(log_unipotent(x))) continue;
      ++outside;
      CHECK_FALSE(member(x, seq).member);
    }
  }
}

TEST_CASE("intersections with the lower central series") {
  const auto full = standardize(ut(3));
  const auto c = intersect_gamma(full, 2);
  REQUIRE(c.generators().size() == 1);
  CHECK(c.generators()[0] == s(3, 1, 3));
  CHECK(intersect_gamma(full, 1).generators().size() == 3);
  const auto h = standardize(SubgroupGens(4, {s(4, 1, 2), multiply(s(4, 3, 4), s(4, 2, 4)), s(4, 1, 4)}));
  CHECK(member(s(4, 1, 4), standardize(intersect_gamma(h, 3))).member);
  CHECK_THROWS_AS(intersect_gamma(full, 3), std::invalid_argument);
}

TEST_CASE("lower central series generators") {
  const auto g2 = lower_central_gens(ut(3), 2);
  REQUIRE(g2.generators().size() == 1);
  CHECK(g2.generators()[0] == s(3, 1, 3));
  CHECK(lower_central_gens(SubgroupGens(3, {s(3, 1, 2), s(3, 1, 3)}), 2).is_trivial());
  CHECK(lower_central_gens(ut(4), 1).generators() == ut(4).generators());
  const auto g3 = standardize(lower_central_gens(ut(4), 3));
  CHECK(g3.size() == 1);
  CHECK(member(s(4, 1, 4), g3).member);
}

TEST_CASE("Lie spans") {
  const auto span = lie_span(ut(3));
  CHECK(span.dimension() == 3);
  CHECK(span.bracket_closed());
  const auto z = lie_span(SubgroupGens(3, {s(3, 1, 3, 5)}));
  CHECK(z.dimension() == 1);
  CHECK(z.contains(log_unipotent(s(3, 1, 3, -1))));
  CHECK_FALSE(z.contains(log_unipotent(s(3, 1, 2))));
}

TEST_CASE("weights in the subgroup") {
  for (std::size_t n : {3u, 4u, 5u}) CHECK(nu_H(s(n, 1, n), ut(n)) == n - 1);
  CHECK(nu_H(s(3, 1, 3), SubgroupGens(3, {s(3, 1, 2), s(3, 1, 3)})) == 1);
  for (std::size_t p : {2u, 3u, 4u, 5u})
    for (std::size_t q = 2; q <= p; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      CHECK(nu_H(s(p + 1, 1, p + 1), construct_pq(p, q)) == q);
    }
  CHECK_THROWS_AS(nu_H(UnitriangularMatrix(3), ut(3)), std::invalid_argument);
  CHECK_THROWS_AS(nu_H(s(3, 1, 3), SubgroupGens(3, {s(3, 1, 3, 2)})), std::invalid_argument);
}

TEST_CASE("weights agree with power membership on random subgroups") {
  std::mt19937_64 rng(47);
  std::size_t checked = 0;
  for (int t = 0; t < 20; ++t) {
    const auto H = random_subgroup(rng, 4);
    const WeightFiltration filt(H);
    for (const auto& h : filt.sequence().elements()) {
      CHECK(filt.nu(h) == power_membership_weight(h, H));
      for (int m : {2, 3}) CHECK(filt.nu(power(h, m)) == filt.nu(h));
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("distortion degree") {
  const auto z = distortion_degree(SubgroupGens(3, {s(3, 1, 3)}));
  CHECK(z.d_H == 2);
  CHECK(z.witness == s(3, 1, 3));
  CHECK(distortion_degree(ut(3)).d_H == 1);
  CHECK(distortion_degree(ut(5)).d_H == 1);
  CHECK_THROWS_AS(distortion_degree(SubgroupGens(3, {})), std::invalid_argument);

  const auto r32 = distortion_degree(construct_pq(3, 2));
  CHECK(r32.d_H == Rational(3, 2));
  CHECK(r32.witness == s(4, 1, 4));
  // s_{kN} = [s_{k(k+1)}, ..., s_{(m-2)(m-1)}, y] has nu_G = N-k and nu_H = m-k, so the
  // maximum sits at k = m-2 unless m = 3: d_H = (p-q+2)/2, which is p/q only for q = 2
  for (std::size_t p = 2; p <= 5; ++p)
    for (std::size_t q = 2; q <= p; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      const auto H = construct_pq(p, q);
      const auto rep = distortion_degree(H);
      CHECK(rep.d_H == (p == q ? ratio(1, 1) : ratio(p - q + 2, 2)));
      if (q == 2) CHECK(rep.d_H == ratio(p, q));
      CHECK(member(rep.witness, standardize(H)).member);
      CHECK(ratio(*level_weight(rep.witness), nu_H(rep.witness, H)) == rep.d_H);
      CHECK(brute_force_degree(H, 3) == rep.d_H);
    }
  // the witness for (4,3): s25 = [s23, s45 s35], outside the isolator of Gamma_3(H) = <s15>
  {
    const auto H = construct_pq(4, 3);
    const auto s25 = s(5, 2, 5);
    CHECK(commutator(H.generators()[1], H.generators()[2]) == s25);
    const auto g3 = standardize(lower_central_gens(H, 3));
    REQUIRE(g3.size() == 1);
    CHECK(g3.elements()[0] == s(5, 1, 5));
    CHECK(power_membership_weight(s25, H) == 2);
    CHECK(nu_H(s(5, 1, 5), H) == 3);
  }
  CHECK(brute_force_degree(SubgroupGens(3, {s(3, 1, 3)}), 1) == 2);
  CHECK(brute_force_degree(ut(3), 2) == 1);

  std::mt19937_64 rng(53);
  for (int t = 0; t < 10; ++t) {
    const auto H = random_subgroup(rng, 4);
    CHECK(distortion_degree(H).d_H >= brute_force_degree(H, 3));
  }
}

TEST_CASE("construction shapes") {
  const auto h = construct_pq(3, 2);
  CHECK(h.ambient() == 4);
  CHECK(h.generators() ==
        std::vector<UnitriangularMatrix>{s(4, 1, 2), multiply(s(4, 3, 4), s(4, 2, 4)), s(4, 1, 4)});
  CHECK(construct_pq(2, 2).generators() == std::vector<UnitriangularMatrix>{s(3, 1, 2), s(3, 2, 3, 2), s(3, 1, 3)});
  CHECK(construct_pq(5, 2).generators()[1] == multiply(s(6, 5, 6), s(6, 2, 6)));
  CHECK_THROWS_AS(construct_pq(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(construct_pq(3, 1), std::invalid_argument);
}

TEST_CASE("balls and empirical distortion") {
  CHECK(ball(3, 0).size() == 1);
  CHECK(ball(3, 1).size() == 5);
  CHECK_THROWS_AS(ball(5, 2), GuardError);
  CHECK_THROWS_AS(ball(3, 11), GuardError);
  const auto table = empirical_distortion(SubgroupGens(3, {s(3, 1, 3)}), 8);
  CHECK(table[0].value == 0);
  CHECK(table[4].value >= 1);
  CHECK(table[8].value >= 4);
  for (std::size_t n = 1; n < table.size(); ++n) {
    CHECK(table[n].value >= table[n - 1].value);
    CHECK_FALSE(table[n].capped);
  }
}
