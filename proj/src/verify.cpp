#include "nilmat/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "nilmat/distortion.hpp"
#include "nilmat/io.hpp"
#include "nilmat/jennings.hpp"
#include "nilmat/nickel.hpp"

namespace nilmat {

namespace {

using Outcome = std::pair<bool, std::string>;

IntegerMatrix identity_with(std::size_t n, std::initializer_list<std::tuple<int, int, long>> entries) {
  IntegerMatrix m = IntegerMatrix::identity(n);
  for (auto [i, j, v] : entries) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
  return m;
}

SubgroupGens image(const EmbeddingResult& e) {
  std::vector<UnitriangularMatrix> g;
  for (const auto& m : e.generators) g.push_back(m.to_unitriangular());
  return SubgroupGens(e.d, g);
}

Rational ratio(std::size_t a, std::size_t b) {
  Rational r(static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  r.canonicalize();
  return r;
}

std::string str(const Rational& r) { return io::rational_string(r); }

std::string weights_str(const std::vector<unsigned>& w) {
  std::string s = "(";
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
  return s + ")";
}

Outcome golden_matrices() {
  const auto p = builtin_presentation("ut:3");
  const auto phi = jennings_embedding(p, JenningsBasis::Order::WeightLex);
  const std::vector<IntegerMatrix> phi_printed{
      identity_with(7, {{1, 2, -1}, {2, 4, -1}, {3, 5, -1}, {3, 7, -1}}),
      identity_with(7, {{1, 3, -1}, {2, 5, -1}, {3, 6, -1}}),
      identity_with(7, {{1, 7, -1}}),
  };
  // printed psi with its two misprints: psi(x)(2,3) = +1 and psi(y)'s row-2 entry in column 6
  const std::vector<IntegerMatrix> psi_printed{
      identity_with(7, {{1, 4, -1}, {2, 3, 1}, {2, 6, -1}, {4, 5, -1}}),
      identity_with(7, {{1, 2, -1}, {2, 6, -1}, {4, 6, -1}}),
      identity_with(7, {{1, 3, -1}}),
  };
  std::vector<IntegerMatrix> psi_corrected = psi_printed;
  psi_corrected[0](2, 3) = -1;
  psi_corrected[1](2, 6) = 0;
  psi_corrected[1](2, 7) = -1;
  const auto psi = jennings_embedding(p, JenningsBasis::Order::SchemePerturbed);

  const bool phi_ok = phi.d == 7 && phi.generators == phi_printed;
  const bool psi_ok = psi.d == 7 && psi.generators == psi_corrected;
  const auto u = [](const IntegerMatrix& m) { return m.to_unitriangular(); };
  const bool printed_breaks = !(commutator(u(psi_printed[1]), u(psi_printed[0])) == inverse(u(psi_printed[2])));
  std::ostringstream d;
  d << "phi " << (phi_ok ? "bit-exact" : "differs") << "; psi " << (psi_ok ? "bit-exact" : "differs")
    << " against the printed matrices with psi(x)(2,3) read as -1 and psi(y)(2,6) as (2,7)"
    << (printed_breaks ? " (the printed pair violates [x,y] = z)" : "");
  return {phi_ok && psi_ok && printed_breaks, d.str()};
}

Outcome jennings_ut3_image() {
  const auto phi = jennings_embedding(builtin_presentation("ut:3"), JenningsBasis::Order::WeightLex);
  const auto w = image_weights(phi);
  const Rational d = distortion_degree(image(phi)).d_H;
  return {w[1] == 2 && d == 3, "nu_K(phi(y)) = " + std::to_string(w[1]) + ", d_H = " + str(d)};
}

Outcome jennings_scheme_undistorted() {
  bool ok = true;
  std::ostringstream d;
  for (std::size_t m : {3u, 4u}) {
    const auto p = unitriangular_presentation(m, PositionBasis::Flavor::Scheme);
    const auto emb = jennings_embedding(p, JenningsBasis::Order::SchemePerturbed);
    d << "m=" << m << ": d=" << emb.d;
    if (!emb.unitriangular) {
      d << " not unitriangular; ";
      ok = false;
      continue;
    }
    const auto w = image_weights(emb);
    const PositionBasis& pos = *p.realization()->positions;
    bool weights = true;
    for (std::size_t k = 0; k < pos.length(); ++k)
      weights = weights && w[k] == pos.position(k).second - pos.position(k).first;
    const Rational dh = distortion_degree(image(emb)).d_H;
    d << " weights " << weights_str(w) << (weights ? " = j-i" : " != j-i") << ", d_H = " << str(dh) << "; ";
    ok = ok && weights && dh == 1 && (m != 4 || emb.d == 29);
  }
  return {ok, d.str()};
}

Outcome jennings_freenil() {
  const auto p = freenil23_presentation();
  const JenningsBasis b(p, p.nilpotency_class() + 1);
  std::vector<std::string> labels;
  for (const auto& v : b.monomials()) labels.push_back(monomial_label(v, p));
  const std::vector<std::string> listed{"1",   "u1",       "u2",       "u1^2",  "u1*u2", "u2^2",  "u3", "u1^3",
                                        "u1^2*u2", "u1*u2^2", "u1*u3", "u2^3", "u2*u3", "u4",    "u5"};
  const auto emb = jennings_embedding(p, b);
  const Rational d = distortion_degree(image(emb)).d_H;
  return {labels == listed && emb.unitriangular && d > 1,
          "basis size " + std::to_string(b.size()) + (labels == listed ? " (matches)" : " (differs)") +
              ", d_H = " + str(d)};
}

Outcome nickel_ut() {
  bool ok = true;
  std::ostringstream d;
  for (std::size_t m : {3u, 4u}) {
    const auto p = unitriangular_presentation(m, PositionBasis::Flavor::Scheme);
    const auto mod = closure(p);
    const auto emb = nickel_embedding(p, mod, declared_ordering(p, mod));
    d << "m=" << m << ": dim " << mod.dimension();
    bool here = mod.dimension() == m * (m - 1) / 2 + 1 && emb.unitriangular && emb.integral;
    if (emb.unitriangular) {
      const auto w = image_weights(emb);
      for (std::size_t k = 0; k < p.generator_count(); ++k) here = here && w[k] == p.weight(k);
      const Rational dh = distortion_degree(image(emb)).d_H;
      here = here && dh == 1;
      d << ", weights " << weights_str(w) << ", d_H = " << str(dh) << "; ";
    } else {
      d << ", not unitriangular; ";
    }
    ok = ok && here;
  }
  return {ok, d.str()};
}

Outcome nickel_heisenberg(std::size_t threads) {
  const auto mod = closure(builtin_presentation("heisenberg:2"));
  const auto all = ordering_search(mod, SearchMode::Exhaustive, threads);
  std::size_t uni = 0, bad = 0;
  Rational least = 0;
  for (const auto& r : all) {
    if (!r.unitriangular) continue;
    if (uni == 0 || r.d_H < least) least = r.d_H;
    ++uni;
    if (r.weights[4] < 3 || r.d_H < Rational(3, 2)) ++bad;
  }
  return {all.size() == 720 && uni > 0 && bad == 0,
          std::to_string(all.size()) + " orderings, " + std::to_string(uni) +
              " unitriangular, smallest d_H = " + (uni ? str(least) : "-") + ", violations " + std::to_string(bad)};
}

Outcome construction() {
  bool ok = true;
  std::ostringstream d;
  for (auto [p, q] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 2}, {4, 3}, {5, 2}}) {
    const auto H = construct_pq(p, q);
    const auto rep = distortion_degree(H);
    const Rational brute = brute_force_degree(H, 3);
    const bool witness = member(rep.witness, standardize(H)).member &&
                         ratio(*level_weight(rep.witness), nu_H(rep.witness, H)) == rep.d_H;
    const bool here = rep.d_H == ratio(p, q) && witness && brute == rep.d_H;
    d << "(" << p << "," << q << "): d_H = " << str(rep.d_H) << (here ? "" : " expected " + str(ratio(p, q)))
      << ", brute force " << str(brute) << "; ";
    ok = ok && here;
  }
  return {ok, d.str()};
}

// --- independent weight oracle: nu_H(h) is the largest k with some power h^m (m <= 64) in Gamma_k(H)

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

UnitriangularMatrix short_word(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> len(1, 3), pos(1, n);
  std::uniform_int_distribution<int> sign(0, 1);
  UnitriangularMatrix w(n);
  for (std::size_t l = len(rng); l > 0; --l) {
    std::size_t i = pos(rng), j = pos(rng);
    while (i == j) j = pos(rng);
    if (i > j) std::swap(i, j);
    w = multiply(w, elementary(n, i, j, sign(rng) ? 1 : -1));
  }
  return w;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(0x0ac1e);
  std::uniform_int_distribution<int> count(2, 3);
  std::size_t checked = 0, agree = 0, groups = 0;
  while (groups < 20) {
    std::vector<UnitriangularMatrix> g;
    for (int c = count(rng); c > 0; --c) g.push_back(short_word(rng, 4));
    const SubgroupGens H(4, g);
    if (H.is_trivial()) continue;
    ++groups;
    const WeightFiltration filt(H);
    for (const auto& h : filt.sequence().elements()) {
      ++checked;
      if (filt.nu(h) == power_membership_weight(h, H)) ++agree;
    }
  }
  return {checked > 0 && agree == checked, std::to_string(agree) + "/" + std::to_string(checked) +
                                               " standardized generators agree over " + std::to_string(groups) +
                                               " subgroups"};
}

Outcome homomorphism_injectivity() {
  std::vector<std::pair<std::string, EmbeddingResult>> built;
  const char* jennings_groups[] = {"ut:3", "ut:4", "heisenberg:1", "heisenberg:2", "freenil23"};
  for (const char* name : jennings_groups) built.emplace_back(std::string("jennings ") + name,
                                                              jennings_embedding(builtin_presentation(name)));
  for (const char* name : {"ut:3", "ut:4"})
    built.emplace_back(std::string("jennings ") + name + " scheme-perturbed",
                       jennings_embedding(builtin_presentation(name), JenningsBasis::Order::SchemePerturbed));
  for (const char* name : {"ut:3", "ut:4", "heisenberg:2", "freenil23"}) {
    const auto p = builtin_presentation(name);
    const auto mod = closure(p);
    built.emplace_back(std::string("nickel ") + name, nickel_embedding(p, mod, declared_ordering(p, mod)));
  }
  std::size_t relators = 0;
  std::string failed;
  for (const auto& [name, e] : built) {
    if (e.relators_ok) ++relators;
    else failed += " " + name;
  }

  bool injective = true;
  std::string inj;
  std::mt19937_64 rng(0x1d5);
  for (const char* name : {"ut:4", "freenil23"}) {
    const auto p = builtin_presentation(name);
    const auto& j = std::find_if(built.begin(), built.end(), [&](const auto& b) {
                      return b.first == std::string("jennings ") + name;
                    })->second;
    const auto& n = std::find_if(built.begin(), built.end(), [&](const auto& b) {
                      return b.first == std::string("nickel ") + name;
                    })->second;
    std::uniform_int_distribution<long> e(-3, 3);
    std::set<NormalWord> words;
    while (words.size() < 1000) {
      NormalWord w(p.generator_count());
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = e(rng);
      words.insert(w);
    }
    std::set<IntegerMatrix> ji, ni;
    for (const auto& w : words) {
      ji.insert(word_image(w, j.generators, j.inverse_generators));
      ni.insert(word_image(w, n.generators, n.inverse_generators));
    }
    injective = injective && ji.size() == 1000 && ni.size() == 1000;
    inj += std::string(" ") + name + " " + std::to_string(ji.size()) + "/" + std::to_string(ni.size());
  }
  return {relators == built.size() && injective,
          "relators hold in " + std::to_string(relators) + "/" + std::to_string(built.size()) + " embeddings" +
              (failed.empty() ? "" : " (failed:" + failed + ")") + "; distinct images of 1000 words (jennings/nickel):" +
              inj};
}

Outcome empirical() {
  const SubgroupGens H(3, {elementary(3, 1, 3)});
  const auto table = empirical_distortion(H, 8);
  bool monotone = true, capped = false;
  for (std::size_t n = 1; n < table.size(); ++n) {
    monotone = monotone && table[n].value >= table[n - 1].value;
    capped = capped || table[n].capped;
  }
  const std::size_t d4 = table[4].value, d8 = table[8].value;
  // 1 <= log2(d8/d4) <= 3 exactly: 2 d4 <= d8 <= 8 d4
  const bool window = d4 > 0 && 2 * d4 <= d8 && d8 <= 8 * d4;
  return {d4 >= 1 && d8 >= 4 && monotone && !capped && window,
          "Delta(4) = " + std::to_string(d4) + ", Delta(8) = " + std::to_string(d8) +
              (monotone ? ", monotone" : ", not monotone") + (window ? ", ratio in [2,8]" : ", ratio outside [2,8]")};
}

template <class F>
CriterionResult run(int id, std::string title, double limit, F&& f) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.limit_seconds = limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = f();
    r.passed = ok;
    r.detail = std::move(detail);
    while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > limit) {
    r.passed = false;
    r.detail += " (over the time limit)";
  }
  return r;
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", r.seconds, r.limit_seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " + r.title + " [" + timing +
         "]: " + r.detail;
}

std::vector<CriterionResult> run_acceptance_suite(std::size_t threads,
                                                 const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  auto add = [&](CriterionResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  add(run(1, "golden Jennings matrices phi, psi", 1, golden_matrices));
  add(run(2, "Jennings ut:3 weight-lex image", 10, jennings_ut3_image));
  add(run(3, "Jennings ut:m scheme-perturbed undistorted", 60, jennings_scheme_undistorted));
  add(run(4, "Jennings freenil23 basis and distortion", 30, jennings_freenil));
  add(run(5, "Nickel ut:m declared ordering undistorted", 30, nickel_ut));
  add(run(6, "Nickel heisenberg:2 always distorted", 120, [&] { return nickel_heisenberg(threads); }));
  add(run(7, "construction d_H = p/q", 120, construction));
  add(run(8, "nu_H against power membership", 300, oracle_equivalence));
  add(run(9, "relators and injectivity", 60, homomorphism_injectivity));
  add(run(10, "empirical distortion of <z> in UT3", 120, empirical));
  std::size_t failed = 0;
  std::string which;
  for (const auto& r : out)
    if (!r.passed) {
      ++failed;
      which += " " + std::to_string(r.id);
    }
  add(run(11, "verify-paper exits 0", 1, [&]() -> Outcome {
    return {failed == 0, failed == 0 ? "criteria 1-10 pass" : "failing criteria:" + which};
  }));
  return out;
}

}  // namespace nilmat
