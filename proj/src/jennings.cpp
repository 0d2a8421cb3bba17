#include "nilmat/jennings.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace nilmat {

namespace {

unsigned weight_of(const std::vector<unsigned>& r, const std::vector<unsigned>& weights) {
  unsigned w = 0;
  for (std::size_t i = 0; i < r.size(); ++i) w += r[i] * weights[i];
  return w;
}

// Coefficient of u^k in (1 - u)^a, valid for negative a too.
Integer series_coefficient(const Integer& a, unsigned long k) {
  Integer c;
  mpz_bin_ui(c.get_mpz_t(), a.get_mpz_t(), k);
  return k % 2 ? Integer(-c) : c;
}

std::vector<WeightedMonomial> enumerate(const std::vector<unsigned>& weights, unsigned n_trunc) {
  std::vector<WeightedMonomial> out;
  std::vector<unsigned> r(weights.size());
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned used) {
    if (i == weights.size()) {
      out.push_back({r, used});
      return;
    }
    for (unsigned k = 0; used + k * weights[i] < n_trunc; ++k) {
      r[i] = k;
      rec(i + 1, used + k * weights[i]);
    }
    r[i] = 0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), [](const WeightedMonomial& a, const WeightedMonomial& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.exponents > b.exponents;
  });
  return out;
}

}  // namespace

bool WeightedMonomial::is_unit() const {
  return std::all_of(exponents.begin(), exponents.end(), [](unsigned r) { return r == 0; });
}

std::string monomial_label(const WeightedMonomial& v, const NilpotentPresentation& p) {
  std::string s;
  for (std::size_t i = 0; i < v.exponents.size(); ++i) {
    if (v.exponents[i] == 0) continue;
    if (!s.empty()) s += '*';
    std::string name = p.generator_labels()[i];
    name[0] = 'u';
    s += name;
    if (v.exponents[i] > 1) s += "^" + std::to_string(v.exponents[i]);
  }
  return s.empty() ? "1" : s;
}

Integer AlgebraElement::coefficient(const std::vector<unsigned>& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Integer(0) : it->second;
}

void AlgebraElement::add(const std::vector<unsigned>& exponents, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

JenningsBasis::JenningsBasis(const NilpotentPresentation& p, unsigned n_trunc, Order order)
    : n_trunc_(n_trunc), order_(order) {
  if (n_trunc < 2) throw std::invalid_argument("truncation must be at least 2");
  if (order == Order::Explicit) throw std::invalid_argument("explicit order needs a permutation");
  monomials_ = enumerate(p.weights(), n_trunc);
  if (order == Order::SchemePerturbed) {
    if (!p.realization() || !p.realization()->positions)
      throw std::invalid_argument("scheme-perturbed order needs a unitriangular presentation");
    const PositionBasis& pos = *p.realization()->positions;
    const std::size_t m = pos.matrix_size();
    std::vector<std::vector<unsigned>> head{std::vector<unsigned>(p.generator_count())};
    // columns m, m-1, ..., 2; inside each column rows bottom to top
    for (std::size_t col = m; col >= 2; --col)
      for (std::size_t row = col - 1; row >= 1; --row) {
        std::vector<unsigned> r(p.generator_count());
        r[pos.index_of(row, col)] = 1;
        head.push_back(r);
      }
    std::vector<WeightedMonomial> sorted;
    for (const auto& r : head) {
      const unsigned w = weight_of(r, p.weights());
      if (w < n_trunc) sorted.push_back({r, w});
    }
    for (const auto& v : monomials_)
      if (std::find(head.begin(), head.end(), v.exponents) == head.end()) sorted.push_back(v);
    monomials_ = std::move(sorted);
  }
  index();
}

JenningsBasis::JenningsBasis(const NilpotentPresentation& p, unsigned n_trunc, const std::vector<std::size_t>& perm)
    : n_trunc_(n_trunc), order_(Order::Explicit) {
  if (n_trunc < 2) throw std::invalid_argument("truncation must be at least 2");
  const auto base = enumerate(p.weights(), n_trunc);
  std::vector<std::size_t> check = perm;
  std::sort(check.begin(), check.end());
  for (std::size_t k = 0; k < check.size(); ++k)
    if (check[k] != k) throw std::invalid_argument("ordering is not a permutation of the basis");
  if (check.size() != base.size()) throw std::invalid_argument("ordering is not a permutation of the basis");
  for (std::size_t k : perm) monomials_.push_back(base[k]);
  index();
}

void JenningsBasis::index() {
  for (std::size_t k = 0; k < monomials_.size(); ++k) index_[monomials_[k].exponents] = k;
}

std::optional<std::size_t> JenningsBasis::index_of(const std::vector<unsigned>& exponents) const {
  auto it = index_.find(exponents);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> JenningsBasis::graded_dimensions() const {
  std::vector<std::size_t> d(n_trunc_);
  for (const auto& v : monomials_) ++d[v.weight];
  return d;
}

std::string to_string(JenningsBasis::Order order) {
  switch (order) {
    case JenningsBasis::Order::WeightLex:
      return "weight-lex";
    case JenningsBasis::Order::SchemePerturbed:
      return "scheme-perturbed";
    case JenningsBasis::Order::Explicit:
      return "explicit";
  }
  return "";
}

JenningsBasis::Order parse_jennings_order(const std::string& name) {
  if (name == "weight-lex") return JenningsBasis::Order::WeightLex;
  if (name == "scheme-perturbed") return JenningsBasis::Order::SchemePerturbed;
  throw std::invalid_argument("unknown Jennings order '" + name + "'");
}

AlgebraElement expand_group(const NormalWord& a, const NilpotentPresentation& p, unsigned n_trunc) {
  if (a.size() != p.generator_count()) throw std::invalid_argument("normal word has wrong length");
  AlgebraElement out(n_trunc);
  const auto& weights = p.weights();
  std::vector<unsigned> r(weights.size());
  std::function<void(std::size_t, unsigned, const Integer&)> rec = [&](std::size_t i, unsigned used,
                                                                      const Integer& c) {
    if (i == weights.size()) {
      out.add(r, c);
      return;
    }
    for (unsigned k = 0; used + k * weights[i] < n_trunc; ++k) {
      const Integer s = series_coefficient(a[i], k);
      if (s == 0) {
        if (a[i] >= 0) break;  // binomial series ended
        continue;
      }
      r[i] = k;
      rec(i + 1, used + k * weights[i], c * s);
    }
    r[i] = 0;
  };
  rec(0, 0, Integer(1));
  return out;
}

IntegerMatrix action_matrix(const NilpotentPresentation& p, const JenningsBasis& basis, std::size_t gen, int e) {
  if (gen >= p.generator_count()) throw std::out_of_range("generator index out of range");
  const std::size_t d = basis.size();
  const std::size_t m = p.generator_count();
  IntegerMatrix out(d);
  for (std::size_t row = 0; row < d; ++row) {
    const auto& r = basis[row].exponents;
    // v = prod (1 - x_i)^{r_i} = sum_k prod C(r_i,k_i) (-1)^{k_i} x^k
    std::vector<unsigned> k(m);
    while (true) {
      Integer c = 1;
      for (std::size_t i = 0; i < m; ++i) c *= series_coefficient(Integer(r[i]), k[i]);
      NormalWord w(m);
      for (std::size_t i = 0; i < m; ++i) w[i] = k[i];
      const AlgebraElement img = expand_group(p.multiply_generator(w, gen, e), p, basis.truncation());
      for (const auto& [mono, coeff] : img.terms()) {
        const auto col = basis.index_of(mono);
        if (!col) throw std::logic_error("expansion left the basis");
        out(row + 1, *col + 1) += c * coeff;
      }
      std::size_t i = 0;
      while (i < m && k[i] == r[i]) k[i++] = 0;
      if (i == m) break;
      ++k[i];
    }
  }
  return out;
}

IntegerMatrix word_image(const NormalWord& w, const std::vector<IntegerMatrix>& images,
                         const std::vector<IntegerMatrix>& inverse_images) {
  IntegerMatrix r = IntegerMatrix::identity(images.front().size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0) continue;
    const Integer n = abs(w[k]);
    if (!n.fits_ulong_p()) throw std::overflow_error("exponent too large");
    r = r * power(w[k] > 0 ? images[k] : inverse_images[k], n.get_ui());
  }
  return r;
}

bool relators_hold(const NilpotentPresentation& p, const std::vector<IntegerMatrix>& images,
                   const std::vector<IntegerMatrix>& inverse_images) {
  const std::size_t m = p.generator_count();
  const IntegerMatrix one = IntegerMatrix::identity(images.front().size());
  for (std::size_t k = 0; k < m; ++k)
    if (!(images[k] * inverse_images[k] == one) || !(inverse_images[k] * images[k] == one)) return false;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const IntegerMatrix lhs = inverse_images[j] * inverse_images[i] * images[j] * images[i];
      if (!(lhs == word_image(p.relation(j, i), images, inverse_images))) return false;
    }
  return true;
}

EmbeddingResult jennings_embedding(const NilpotentPresentation& p, const JenningsBasis& basis) {
  EmbeddingResult r;
  r.d = basis.size();
  for (const auto& v : basis.monomials()) r.ordering.push_back(monomial_label(v, p));
  r.unitriangular = true;
  for (std::size_t k = 0; k < p.generator_count(); ++k) {
    r.generators.push_back(action_matrix(p, basis, k, 1));
    r.inverse_generators.push_back(action_matrix(p, basis, k, -1));
    r.unitriangular = r.unitriangular && r.generators.back().is_unitriangular();
  }
  r.relators_ok = relators_hold(p, r.generators, r.inverse_generators);
  return r;
}

EmbeddingResult jennings_embedding(const NilpotentPresentation& p, JenningsBasis::Order order) {
  return jennings_embedding(p, JenningsBasis(p, p.nilpotency_class() + 1, order));
}

std::vector<unsigned> image_weights(const EmbeddingResult& r) {
  if (!r.unitriangular) throw std::logic_error("embedding is not unitriangular");
  std::vector<unsigned> out;
  for (const auto& g : r.generators) {
    const auto w = level_weight(g.to_unitriangular());
    if (!w) throw std::logic_error("generator image is the identity");
    out.push_back(static_cast<unsigned>(*w));
  }
  return out;
}

}  // namespace nilmat
