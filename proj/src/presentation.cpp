#include "nilmat/presentation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nilmat {

NormalWord::NormalWord(std::initializer_list<long> exponents) {
  exps_.reserve(exponents.size());
  for (long e : exponents) exps_.emplace_back(e);
}

NormalWord NormalWord::generator(std::size_t length, std::size_t k, const Integer& e) {
  NormalWord w(length);
  w.exps_.at(k) = e;
  return w;
}

bool NormalWord::is_identity() const {
  return std::all_of(exps_.begin(), exps_.end(), [](const Integer& e) { return e == 0; });
}

std::size_t NormalWord::leading_index() const {
  for (std::size_t k = 0; k < exps_.size(); ++k)
    if (exps_[k] != 0) return k;
  return exps_.size();
}

std::string to_string(const NormalWord& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k].get_str();
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

NilpotentPresentation::NilpotentPresentation(std::vector<unsigned> weights, std::vector<Relation> relations,
                                             std::string label, std::optional<Realization> realization,
                                             std::vector<std::string> generator_labels)
    : weights_(std::move(weights)),
      label_(std::move(label)),
      labels_(std::move(generator_labels)),
      realization_(std::move(realization)) {
  const std::size_t m = weights_.size();
  if (m == 0) throw std::invalid_argument("presentation needs at least one generator");
  for (unsigned w : weights_) {
    if (w == 0) throw std::invalid_argument("generator weights must be positive");
    class_ = std::max(class_, w);
  }
  if (labels_.empty())
    for (std::size_t k = 0; k < m; ++k) labels_.push_back("x" + std::to_string(k + 1));
  if (labels_.size() != m) throw std::invalid_argument("generator label count mismatch");
  if (realization_ && realization_->generators.size() != m)
    throw std::invalid_argument("realization must give one matrix per generator");

  rel_.assign(m, std::vector<NormalWord>(m, NormalWord(m)));
  for (auto& r : relations) {
    if (r.i >= r.j || r.j >= m) throw std::invalid_argument("relation indices must satisfy i < j < M");
    if (r.word.size() != m) throw std::invalid_argument("relation word has wrong length");
    for (std::size_t k = 0; k < m; ++k) {
      if (r.word[k] == 0) continue;
      if (k <= r.j)
        throw std::invalid_argument("relation [x" + std::to_string(r.j + 1) + ",x" + std::to_string(r.i + 1) +
                                    "] must be supported on later generators");
      if (weights_[k] < weights_[r.i] + weights_[r.j])
        throw std::invalid_argument("relation [x" + std::to_string(r.j + 1) + ",x" + std::to_string(r.i + 1) +
                                    "] violates weight consistency");
    }
    rel_[r.j][r.i] = std::move(r.word);
  }

  conj_.assign(m, Images(m, NormalWord(m)));
  conj_inv_.assign(m, Images(m, NormalWord(m)));
  for (std::size_t k = m; k-- > 0;) {
    for (std::size_t l = k + 1; l < m; ++l) conj_[k][l] = multiply(generator(l), rel_[l][k]);
    for (std::size_t l = m; l-- > k + 1;) {
      // x_k x_l x_k^-1 = x_l d with d = phi^-1(c^-1), phi(x_l) = x_l c
      const NormalWord d = apply(conj_inv_[k], k, inverse(rel_[l][k]));
      conj_inv_[k][l] = multiply(generator(l), d);
    }
  }
}

std::vector<Relation> NilpotentPresentation::relations() const {
  std::vector<Relation> out;
  for (std::size_t j = 0; j < rel_.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!rel_[j][i].is_identity()) out.push_back({j, i, rel_[j][i]});
  return out;
}

bool NilpotentPresentation::lcs_adapted() const { return std::is_sorted(weights_.begin(), weights_.end()); }

void NilpotentPresentation::check_length(const NormalWord& w) const {
  if (w.size() != generator_count()) throw std::invalid_argument("normal word has wrong length");
}

NormalWord NilpotentPresentation::apply(const Images& images, std::size_t k, const NormalWord& tail) const {
  NormalWord result = identity();
  for (std::size_t l = k + 1; l < generator_count(); ++l)
    if (tail[l] != 0) result = multiply(result, power(images[l], tail[l]));
  return result;
}

NilpotentPresentation::Images NilpotentPresentation::compose(const Images& outer, const Images& inner,
                                                             std::size_t k) const {
  Images out(generator_count(), identity());
  for (std::size_t l = k + 1; l < generator_count(); ++l) out[l] = apply(outer, k, inner[l]);
  return out;
}

NormalWord NilpotentPresentation::conjugate_tail(std::size_t k, const Integer& e, const NormalWord& tail) const {
  const Images& base = e > 0 ? conj_[k] : conj_inv_[k];
  Integer n = abs(e);
  if (n == 1) return apply(base, k, tail);
  Images acc(generator_count(), identity());
  for (std::size_t l = k + 1; l < generator_count(); ++l) acc[l] = generator(l);
  Images b = base;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = compose(b, acc, k);
    n >>= 1;
    if (n > 0) b = compose(b, b, k);
  }
  return apply(acc, k, tail);
}

NormalWord NilpotentPresentation::multiply_generator(const NormalWord& a, std::size_t k, const Integer& e) const {
  check_length(a);
  if (e == 0) return a;
  NormalWord tail = identity();
  bool has_tail = false;
  for (std::size_t l = k + 1; l < generator_count(); ++l)
    if (a[l] != 0) {
      tail[l] = a[l];
      has_tail = true;
    }
  NormalWord result = a;
  result[k] += e;
  if (!has_tail) return result;
  // tail * x_k^e = x_k^e * (x_k^-e tail x_k^e)
  const NormalWord moved = conjugate_tail(k, e, tail);
  for (std::size_t l = k + 1; l < generator_count(); ++l) result[l] = moved[l];
  return result;
}

NormalWord NilpotentPresentation::multiply(const NormalWord& a, const NormalWord& b) const {
  check_length(a);
  check_length(b);
  NormalWord r = a;
  for (std::size_t k = 0; k < generator_count(); ++k)
    if (b[k] != 0) r = multiply_generator(r, k, b[k]);
  return r;
}

NormalWord NilpotentPresentation::inverse(const NormalWord& a) const {
  check_length(a);
  NormalWord r = identity();
  for (std::size_t l = generator_count(); l-- > 0;)
    if (a[l] != 0) r = multiply_generator(r, l, -a[l]);
  return r;
}

NormalWord NilpotentPresentation::power(const NormalWord& a, const Integer& e) const {
  check_length(a);
  if (e == 0 || a.is_identity()) return identity();
  if (e == 1) return a;
  const std::size_t lead = a.leading_index();
  if (std::all_of(a.exponents().begin() + static_cast<long>(lead) + 1, a.exponents().end(),
                  [](const Integer& x) { return x == 0; }))
    return generator(lead, a[lead] * e);
  NormalWord base = e < 0 ? inverse(a) : a;
  Integer n = abs(e);
  NormalWord result = identity();
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

UnitriangularMatrix NilpotentPresentation::to_matrix(const NormalWord& w) const {
  if (!realization_) throw std::logic_error("presentation '" + label_ + "' has no matrix realization");
  check_length(w);
  UnitriangularMatrix r(realization_->generators.front().size());
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k] != 0) r = nilmat::multiply(r, nilmat::power(realization_->generators[k], w[k]));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::string position_label(char prefix, std::size_t i, std::size_t j, std::size_t n) {
  if (n < 10) return prefix + std::to_string(i) + std::to_string(j);
  return prefix + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

NilpotentPresentation unitriangular_presentation(std::size_t m, PositionBasis::Flavor flavor) {
  if (m < 3) throw std::invalid_argument("ut:m needs m >= 3");
  PositionBasis basis(m, flavor);
  const std::size_t count = basis.length();
  std::vector<UnitriangularMatrix> gens;
  std::vector<unsigned> weights;
  std::vector<std::string> labels;
  for (const auto& [i, j] : basis.positions()) {
    gens.push_back(elementary(m, i, j));
    weights.push_back(static_cast<unsigned>(j - i));
    labels.push_back(position_label('s', i, j, m));
  }
  std::vector<Relation> rels;
  for (std::size_t j = 0; j < count; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const UnitriangularMatrix c = commutator(gens[j], gens[i]);
      if (c.is_identity()) continue;
      rels.push_back({j, i, NormalWord(malcev_coordinates(c, basis))});
    }
  return NilpotentPresentation(std::move(weights), std::move(rels), "ut:" + std::to_string(m) + ":" + to_string(flavor),
                               Realization{std::move(gens), basis}, std::move(labels));
}

NilpotentPresentation heisenberg_presentation(std::size_t n) {
  if (n < 1) throw std::invalid_argument("heisenberg:n needs n >= 1");
  const std::size_t size = n + 2;
  const std::size_t count = 2 * n + 1;
  std::vector<UnitriangularMatrix> gens;
  for (std::size_t i = 1; i <= n; ++i) gens.push_back(elementary(size, 1, i + 1));
  for (std::size_t i = 1; i <= n; ++i) gens.push_back(elementary(size, i + 1, n + 2));
  gens.push_back(elementary(size, 1, n + 2));
  std::vector<unsigned> weights(count, 1);
  weights.back() = 2;
  std::vector<Relation> rels;
  // [x_i, x_{n+i}] = z, stored as [x_{n+i}, x_i] = z^-1
  for (std::size_t i = 0; i < n; ++i) rels.push_back({n + i, i, NormalWord::generator(count, 2 * n, -1)});
  return NilpotentPresentation(std::move(weights), std::move(rels), "heisenberg:" + std::to_string(n),
                               Realization{std::move(gens), std::nullopt});
}

NilpotentPresentation freenil23_presentation() {
  std::vector<Relation> rels{
      {1, 0, NormalWord::generator(5, 2, -1)},  // [y2,y1] = y3^-1
      {2, 0, NormalWord::generator(5, 3, 1)},   // [y3,y1] = y4
      {2, 1, NormalWord::generator(5, 4, 1)},   // [y3,y2] = y5
  };
  return NilpotentPresentation({1, 1, 2, 3, 3}, std::move(rels), "freenil23", std::nullopt,
                               {"y1", "y2", "y3", "y4", "y5"});
}

NilpotentPresentation builtin_presentation(const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto parse_size = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad group parameter in '" + name + "'");
    }
    if (pos != s.size() || v < 0) throw std::invalid_argument("bad group parameter in '" + name + "'");
    return static_cast<std::size_t>(v);
  };
  if (parts.empty()) throw std::invalid_argument("empty group name");
  if (parts[0] == "ut" && (parts.size() == 2 || parts.size() == 3)) {
    const auto flavor = parts.size() == 3 ? parse_flavor(parts[2]) : PositionBasis::Flavor::Scheme;
    return unitriangular_presentation(parse_size(parts[1]), flavor);
  }
  if (parts[0] == "heisenberg" && parts.size() == 2) return heisenberg_presentation(parse_size(parts[1]));
  if (parts[0] == "freenil23" && parts.size() == 1) return freenil23_presentation();
  throw std::invalid_argument("unknown group '" + name + "'");
}

}  // namespace nilmat
