#include "nilmat/distortion.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace nilmat {

namespace {

// First nonzero entry in lcs-standard position order; equal to the Mal'cev
// coordinate there because all earlier coordinates vanish.
std::optional<std::size_t> leading_position(const UnitriangularMatrix& x, const PositionBasis& b) {
  for (std::size_t k = 0; k < b.length(); ++k) {
    const auto [i, j] = b.position(k);
    if (x(i, j) != 0) return k;
  }
  return std::nullopt;
}

const Integer& entry_at(const UnitriangularMatrix& x, const PositionBasis& b, std::size_t k) {
  const auto [i, j] = b.position(k);
  return x(i, j);
}

// C_1 = X, C_{w+1} = [C_w, X], identities and repeats dropped.
std::vector<std::vector<UnitriangularMatrix>> commutator_layers(const SubgroupGens& h) {
  std::vector<std::vector<UnitriangularMatrix>> layers;
  if (h.is_trivial()) return layers;
  layers.push_back(h.generators());
  while (true) {
    std::set<UnitriangularMatrix> next;
    for (const auto& c : layers.back())
      for (const auto& y : h.generators()) {
        UnitriangularMatrix z = commutator(c, y);
        if (!z.is_identity()) next.insert(std::move(z));
      }
    if (next.empty()) break;
    layers.emplace_back(next.begin(), next.end());
  }
  return layers;
}

}  // namespace

SubgroupGens::SubgroupGens(std::size_t n, const std::vector<UnitriangularMatrix>& generators) : n_(n) {
  for (const auto& g : generators) {
    if (g.size() != n) throw std::invalid_argument("generator size does not match the ambient group");
    if (!g.is_identity()) gens_.push_back(g);
  }
}

StandardizedSequence::StandardizedSequence(std::size_t n)
    : basis_(n, PositionBasis::Flavor::LcsStandard), table_(basis_.length()) {}

std::vector<StandardizedSequence::Slot> StandardizedSequence::slots() const {
  std::vector<Slot> out;
  for (std::size_t k = 0; k < table_.size(); ++k)
    if (table_[k]) out.push_back({k, entry_at(*table_[k], basis_, k), *table_[k]});
  return out;
}

std::vector<UnitriangularMatrix> StandardizedSequence::elements() const {
  std::vector<UnitriangularMatrix> out;
  for (const auto& t : table_)
    if (t) out.push_back(*t);
  return out;
}

std::size_t StandardizedSequence::size() const {
  return static_cast<std::size_t>(std::count_if(table_.begin(), table_.end(), [](const auto& t) { return t.has_value(); }));
}

std::optional<std::vector<Integer>> StandardizedSequence::sift(const UnitriangularMatrix& h) const {
  if (h.size() != ambient()) throw std::invalid_argument("element size does not match the ambient group");
  std::vector<Integer> cert;
  UnitriangularMatrix x = h;
  for (std::size_t k = 0; k < table_.size(); ++k) {
    const Integer c = entry_at(x, basis_, k);
    if (!table_[k]) {
      if (c != 0) return std::nullopt;
      continue;
    }
    const Integer& lead = entry_at(*table_[k], basis_, k);
    if (c % lead != 0) return std::nullopt;
    const Integer e = c / lead;
    cert.push_back(e);
    if (e != 0) x = multiply(power(*table_[k], Integer(-e)), x);
  }
  if (!x.is_identity()) throw std::logic_error("sifting did not terminate at the identity");
  return cert;
}

bool StandardizedSequence::insert(const UnitriangularMatrix& g) {
  if (g.size() != ambient()) throw std::invalid_argument("element size does not match the ambient group");
  bool changed = false;
  std::deque<UnitriangularMatrix> queue{g};
  while (!queue.empty()) {
    UnitriangularMatrix x = std::move(queue.front());
    queue.pop_front();
    while (auto k = leading_position(x, basis_)) {
      const Integer a = entry_at(x, basis_, *k);
      if (!table_[*k]) {
        table_[*k] = a < 0 ? inverse(x) : x;
        changed = true;
        break;
      }
      const UnitriangularMatrix s = *table_[*k];
      const Integer b = entry_at(s, basis_, *k);
      if (a % b == 0) {
        x = multiply(power(s, Integer(-a / b)), x);
        continue;
      }
      // d = u a + v b; coordinate k is additive on the tail subgroup
      Integer d, u, v;
      mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const UnitriangularMatrix s2 = multiply(power(x, u), power(s, v));
      table_[*k] = s2;
      changed = true;
      queue.push_back(multiply(power(s2, Integer(-b / d)), s));
      x = multiply(power(s2, Integer(-a / d)), x);
    }
  }
  return changed;
}

StandardizedSequence standardize(const SubgroupGens& h) {
  StandardizedSequence seq(h.ambient());
  for (const auto& g : h.generators()) seq.insert(g);
  const std::size_t cap = seq.basis().length() * seq.basis().length() + 1;
  for (std::size_t round = 0;; ++round) {
    if (round >= cap) throw std::logic_error("commutator closure did not stabilize");
    bool changed = false;
    const auto elems = seq.elements();
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        changed = seq.insert(commutator(elems[i], elems[j])) || changed;
        changed = seq.insert(commutator(inverse(elems[i]), elems[j])) || changed;
      }
    if (!changed) break;
  }
  return seq;
}

Membership member(const UnitriangularMatrix& h, const StandardizedSequence& seq) {
  auto cert = seq.sift(h);
  if (!cert) return {};
  return {true, std::move(*cert)};
}

std::size_t slot_level(const StandardizedSequence& seq, std::size_t index) {
  const auto [i, j] = seq.basis().position(index);
  return j - i;
}

SubgroupGens intersect_gamma(const StandardizedSequence& seq, std::size_t l) {
  if (l < 1 || l >= seq.ambient()) throw std::invalid_argument("series index out of range");
  std::vector<UnitriangularMatrix> gens;
  for (const auto& s : seq.slots())
    if (slot_level(seq, s.index) >= l) gens.push_back(s.element);
  return SubgroupGens(seq.ambient(), gens);
}

SubgroupGens lower_central_gens(const SubgroupGens& h, std::size_t k) {
  if (k < 1) throw std::invalid_argument("series index must be at least 1");
  if (k == 1) return h;
  const auto layers = commutator_layers(h);
  std::vector<UnitriangularMatrix> gens;
  for (std::size_t w = k; w <= layers.size(); ++w)
    gens.insert(gens.end(), layers[w - 1].begin(), layers[w - 1].end());
  return SubgroupGens(h.ambient(), standardize(SubgroupGens(h.ambient(), gens)).elements());
}

LieAlgebraSpan::LieAlgebraSpan(std::size_t n) : n_(n) {}

std::vector<Rational> LieAlgebraSpan::reduce(std::vector<Rational> v) const {
  for (std::size_t b = 0; b < basis_.size(); ++b) {
    const std::size_t p = pivots_[b];
    if (v[p] == 0) continue;
    const Rational f = v[p] / basis_[b][p];
    for (std::size_t q = p; q < v.size(); ++q)
      if (basis_[b][q] != 0) v[q] -= f * basis_[b][q];
  }
  return v;
}

NilpotentMatrix LieAlgebraSpan::unflatten(const std::vector<Rational>& v) const {
  RationalMatrix m(n_);
  std::size_t k = 0;
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = i + 1; j <= n_; ++j) m(i, j) = v[k++];
  return NilpotentMatrix(std::move(m));
}

bool LieAlgebraSpan::contains(const NilpotentMatrix& x) const {
  if (x.size() != n_) throw std::invalid_argument("matrix size does not match the span");
  const auto r = reduce(x.flatten());
  return std::all_of(r.begin(), r.end(), [](const Rational& c) { return c == 0; });
}

bool LieAlgebraSpan::add(const NilpotentMatrix& x) {
  if (x.size() != n_) throw std::invalid_argument("matrix size does not match the span");
  auto r = reduce(x.flatten());
  auto it = std::find_if(r.begin(), r.end(), [](const Rational& c) { return c != 0; });
  if (it == r.end()) return false;
  pivots_.push_back(static_cast<std::size_t>(it - r.begin()));
  basis_.push_back(std::move(r));
  closed_ = false;
  return true;
}

void LieAlgebraSpan::close() {
  // basis vectors never change, so checking each pair once suffices
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    const NilpotentMatrix y = unflatten(basis_[j]);
    for (std::size_t i = 0; i < j; ++i) add(bracket(unflatten(basis_[i]), y));
  }
  closed_ = true;
}

LieAlgebraSpan lie_span(const SubgroupGens& k) {
  LieAlgebraSpan span(k.ambient());
  for (const auto& g : k.generators()) span.add(log_unipotent(g));
  span.close();
  return span;
}

WeightFiltration::WeightFiltration(const SubgroupGens& h) : h_(h), seq_(standardize(h)) {
  const auto layers = commutator_layers(h);
  // span of Gamma_k from the layers of weight >= k, deepest first
  std::vector<LieAlgebraSpan> rev;
  LieAlgebraSpan acc(h.ambient());
  for (std::size_t w = layers.size(); w >= 1; --w) {
    for (const auto& g : layers[w - 1]) acc.add(log_unipotent(g));
    acc.close();
    rev.push_back(acc);
  }
  spans_.assign(rev.rbegin(), rev.rend());
}

std::size_t WeightFiltration::nu(const UnitriangularMatrix& h) const {
  if (h.is_identity()) throw std::invalid_argument("the weight of the identity is undefined");
  if (!seq_.sift(h)) throw std::invalid_argument("element is not in the subgroup");
  const NilpotentMatrix x = log_unipotent(h);
  std::size_t k = 0;
  while (k < spans_.size() && spans_[k].contains(x)) ++k;
  return k;
}

std::size_t nu_H(const UnitriangularMatrix& h, const SubgroupGens& H) { return WeightFiltration(H).nu(h); }

DistortionReport distortion_degree(const SubgroupGens& H) {
  if (H.is_trivial()) throw std::invalid_argument("the distortion degree of the trivial subgroup is undefined");
  const WeightFiltration filt(H);
  const auto slots = filt.sequence().slots();
  std::vector<std::size_t> levels;
  for (const auto& s : slots) levels.push_back(slot_level(filt.sequence(), s.index));
  std::vector<std::size_t> strata_levels(levels.begin(), levels.end());
  std::sort(strata_levels.begin(), strata_levels.end(), std::greater<>());
  strata_levels.erase(std::unique(strata_levels.begin(), strata_levels.end()), strata_levels.end());

  DistortionReport report;
  bool first = true;
  for (std::size_t m : strata_levels) {
    std::optional<std::size_t> best;
    std::size_t count = 0;
    std::size_t t = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (levels[s] < m) continue;
      ++count;
      const std::size_t nu = filt.nu(slots[s].element);
      const bool better = !best || nu < t || (nu == t && levels[s] == m && levels[*best] != m);
      if (better) {
        best = s;
        t = nu;
      }
    }
    report.strata.push_back({m, t, slots[*best].element, count});
    const Rational r(static_cast<unsigned long>(m), static_cast<unsigned long>(t));
    if (first || r > report.d_H) {
      report.d_H = r;
      report.witness = slots[*best].element;
      first = false;
    }
  }
  report.d_H.canonicalize();
  return report;
}

SubgroupGens construct_pq(std::size_t p, std::size_t q) {
  if (q < 2 || p < q) throw std::invalid_argument("construction needs p >= q >= 2");
  const std::size_t n = p + 1, m = q + 1;
  std::vector<UnitriangularMatrix> gens;
  for (std::size_t i = 1; i + 1 <= m - 1; ++i) gens.push_back(elementary(n, i, i + 1));
  gens.push_back(multiply(elementary(n, n - 1, n), elementary(n, m - 1, n)));
  gens.push_back(elementary(n, 1, n));
  return SubgroupGens(n, gens);
}

Rational brute_force_degree(const SubgroupGens& H, std::size_t len) {
  if (H.is_trivial()) throw std::invalid_argument("the distortion degree of the trivial subgroup is undefined");
  const WeightFiltration filt(H);
  std::vector<UnitriangularMatrix> letters;
  for (const auto& g : filt.sequence().elements()) {
    letters.push_back(g);
    letters.push_back(inverse(g));
  }
  Rational best = 0;
  std::set<UnitriangularMatrix> seen;
  std::vector<UnitriangularMatrix> frontier{UnitriangularMatrix(H.ambient())};
  seen.insert(frontier.front());
  for (std::size_t l = 0; l < len; ++l) {
    std::vector<UnitriangularMatrix> next;
    for (const auto& w : frontier)
      for (const auto& x : letters) {
        UnitriangularMatrix y = multiply(w, x);
        if (!seen.insert(y).second) continue;
        const Rational r(static_cast<unsigned long>(*level_weight(y)), static_cast<unsigned long>(filt.nu(y)));
        if (r > best) best = r;
        next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  best.canonicalize();
  return best;
}

std::map<UnitriangularMatrix, std::size_t> ball(std::size_t n, std::size_t radius) {
  if (n < 2 || n > 4) throw GuardError("ball: ambient size must be between 2 and 4");
  if (radius > 10) throw GuardError("ball: radius must be at most 10");
  std::vector<UnitriangularMatrix> gens;
  for (std::size_t i = 1; i < n; ++i) {
    gens.push_back(elementary(n, i, i + 1, 1));
    gens.push_back(elementary(n, i, i + 1, -1));
  }
  std::unordered_map<UnitriangularMatrix, std::size_t, UnitriangularHash> dist;
  std::vector<UnitriangularMatrix> frontier{UnitriangularMatrix(n)};
  dist.emplace(frontier.front(), 0);
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<UnitriangularMatrix> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        UnitriangularMatrix y = multiply(w, g);
        if (dist.emplace(y, r).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {dist.begin(), dist.end()};
}

std::vector<EmpiricalEntry> empirical_distortion(const SubgroupGens& H, std::size_t radius, std::size_t node_cap) {
  const auto b = ball(H.ambient(), radius);
  const StandardizedSequence seq = standardize(H);
  std::unordered_map<UnitriangularMatrix, std::size_t, UnitriangularHash> targets;  // -> ambient distance
  for (const auto& [g, d] : b)
    if (seq.sift(g)) targets.emplace(g, d);

  std::vector<UnitriangularMatrix> letters;
  for (const auto& g : H.generators()) {
    letters.push_back(g);
    letters.push_back(inverse(g));
  }
  std::unordered_map<UnitriangularMatrix, std::size_t, UnitriangularHash> hdist;
  std::vector<UnitriangularMatrix> frontier{UnitriangularMatrix(H.ambient())};
  hdist.emplace(frontier.front(), 0);
  std::size_t found = targets.count(frontier.front());
  for (std::size_t r = 1; found < targets.size() && hdist.size() < node_cap && !frontier.empty(); ++r) {
    std::vector<UnitriangularMatrix> next;
    for (const auto& w : frontier) {
      for (const auto& g : letters) {
        UnitriangularMatrix y = multiply(w, g);
        if (!hdist.emplace(y, r).second) continue;
        if (targets.count(y)) ++found;
        next.push_back(std::move(y));
      }
      if (hdist.size() >= node_cap) break;
    }
    frontier = std::move(next);
  }

  std::vector<EmpiricalEntry> table;
  for (std::size_t n = 0; n <= radius; ++n) table.push_back({n, 0, false});
  for (const auto& [g, d] : targets) {
    auto it = hdist.find(g);
    for (std::size_t n = d; n <= radius; ++n) {
      if (it == hdist.end()) {
        table[n].capped = true;
      } else {
        table[n].value = std::max(table[n].value, it->second);
      }
    }
  }
  return table;
}

}  // namespace nilmat
