#include "nilmat/nickel.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nilmat {

namespace {

// coefficient of x^j in binomial(x, k), k, j <= d
std::vector<std::vector<Rational>> binomial_to_monomial(unsigned d) {
  std::vector<std::vector<Rational>> s(d + 1, std::vector<Rational>(d + 1));
  std::vector<Rational> falling{Rational(1)};  // x (x-1) ... (x-k+1)
  Integer fact = 1;
  for (unsigned k = 0; k <= d; ++k) {
    if (k > 0) {
      std::vector<Rational> next(falling.size() + 1);
      for (std::size_t j = 0; j < falling.size(); ++j) {
        next[j + 1] += falling[j];
        next[j] -= Rational(k - 1) * falling[j];
      }
      falling = std::move(next);
      fact *= k;
    }
    for (std::size_t j = 0; j < falling.size(); ++j) {
      s[k][j] = falling[j] / Rational(fact);
      s[k][j].canonicalize();
    }
  }
  return s;
}

// Exact interpolation of grid values on {0..d}^vars, variable 0 fastest.
CoordinatePolynomial interpolate(std::vector<Rational> values, std::size_t vars, unsigned d) {
  const auto s = binomial_to_monomial(d);
  const std::size_t side = d + 1;
  std::size_t stride = 1;
  std::vector<Rational> line(side), coeffs(side);
  for (std::size_t v = 0; v < vars; ++v, stride *= side) {
    for (std::size_t base = 0; base < values.size(); ++base) {
      if ((base / stride) % side != 0) continue;
      for (std::size_t x = 0; x < side; ++x) line[x] = values[base + x * stride];
      // forward differences in place: line[k] = Delta^k f(0)
      for (std::size_t k = 1; k < side; ++k)
        for (std::size_t x = side - 1; x >= k; --x) line[x] -= line[x - 1];
      std::fill(coeffs.begin(), coeffs.end(), Rational(0));
      for (std::size_t k = 0; k < side; ++k)
        if (line[k] != 0)
          for (std::size_t j = 0; j <= k; ++j) coeffs[j] += line[k] * s[k][j];
      for (std::size_t x = 0; x < side; ++x) values[base + x * stride] = coeffs[x];
    }
  }
  CoordinatePolynomial f(vars);
  CoordinatePolynomial::Exponents e(vars);
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    if (values[idx] == 0) continue;
    std::size_t r = idx;
    for (std::size_t v = 0; v < vars; ++v, r /= side) e[v] = static_cast<unsigned>(r % side);
    f.add(e, values[idx]);
  }
  return f;
}

RationalMatrix permuted(const RationalMatrix& a, const std::vector<std::size_t>& order) {
  RationalMatrix m(a.size());
  for (std::size_t p = 0; p < order.size(); ++p)
    for (std::size_t q = 0; q < order.size(); ++q) m(p + 1, q + 1) = a(order[p] + 1, order[q] + 1);
  return m;
}

std::optional<IntegerMatrix> to_integer(const RationalMatrix& a) {
  IntegerMatrix m(a.size());
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= a.size(); ++j) {
      if (a(i, j).get_den() != 1) return std::nullopt;
      m(i, j) = a(i, j).get_num();
    }
  return m;
}

constexpr std::size_t kMaxGridPoints = 2000000;

}  // namespace

CoordinatePolynomial CoordinatePolynomial::constant(std::size_t vars, const Rational& c) {
  CoordinatePolynomial f(vars);
  f.add(Exponents(vars), c);
  return f;
}

Rational CoordinatePolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void CoordinatePolynomial::add(const Exponents& e, const Rational& c) {
  if (e.size() != vars_) throw std::invalid_argument("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned CoordinatePolynomial::max_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_)
    for (unsigned x : e) d = std::max(d, x);
  return d;
}

Rational CoordinatePolynomial::evaluate(const NormalWord& a) const {
  if (a.size() != vars_) throw std::invalid_argument("normal word has wrong length");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Integer prod = 1;
    for (std::size_t v = 0; v < vars_; ++v)
      if (e[v] > 0) {
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), a[v].get_mpz_t(), e[v]);
        prod *= pw;
      }
    sum += c * Rational(prod);
  }
  return sum;
}

CoordinatePolynomial& CoordinatePolynomial::operator+=(const CoordinatePolynomial& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

CoordinatePolynomial& CoordinatePolynomial::operator-=(const CoordinatePolynomial& o) {
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

CoordinatePolynomial operator*(const Rational& s, const CoordinatePolynomial& f) {
  CoordinatePolynomial out(f.vars_);
  if (s == 0) return out;
  for (const auto& [e, c] : f.terms_) out.terms_.emplace(e, s * c);
  return out;
}

std::string to_string(const CoordinatePolynomial& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // higher total degree first, then the map order reversed so t1 precedes t2
  std::vector<std::pair<CoordinatePolynomial::Exponents, Rational>> terms(f.terms().begin(), f.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (unsigned x : a.first) da += x;
    for (unsigned x : b.first) db += x;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  for (const auto& [e, c] : terms) {
    Rational mag = abs(c);
    std::string mono;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mono.empty()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << mono;
    }
    first = false;
  }
  return os.str();
}

CoordinatePolynomial coordinate_function(std::size_t i, std::size_t vars) {
  if (i < 1 || i > vars) throw std::out_of_range("coordinate index out of range");
  CoordinatePolynomial f(vars);
  CoordinatePolynomial::Exponents e(vars);
  e[i - 1] = 1;
  f.add(e, 1);
  return f;
}

std::vector<std::string> coordinate_names(const NilpotentPresentation& p) {
  std::vector<std::string> out;
  for (std::string l : p.generator_labels()) {
    l[0] = 't';
    out.push_back(std::move(l));
  }
  return out;
}

CoordinatePolynomial act(const CoordinatePolynomial& f, const NormalWord& g, const NilpotentPresentation& p,
                         const ActOptions& opt) {
  const std::size_t m = p.generator_count();
  if (f.variables() != m) throw std::invalid_argument("polynomial has the wrong number of variables");
  if (f.max_degree() == 0) return f;
  const NormalWord ginv = p.inverse(g);
  auto raw = [&](const NormalWord& a) { return f.evaluate(p.multiply(a, ginv)); };
  std::mt19937_64 rng(opt.seed);
  for (unsigned d = opt.start_degree; d <= opt.max_degree; d *= 2) {
    const std::size_t side = d + 1;
    std::size_t points = 1;
    for (std::size_t v = 0; v < m; ++v) {
      points *= side;
      if (points > kMaxGridPoints) throw std::runtime_error("interpolation grid too large");
    }
    std::vector<Rational> values(points);
    NormalWord a(m);
    for (std::size_t idx = 0; idx < points; ++idx) {
      std::size_t r = idx;
      for (std::size_t v = 0; v < m; ++v, r /= side) a[v] = static_cast<long>(r % side);
      values[idx] = raw(a);
    }
    CoordinatePolynomial h = interpolate(std::move(values), m, d);
    std::uniform_int_distribution<long> coord(-static_cast<long>(d) - 5, 2 * static_cast<long>(d) + 5);
    bool ok = true;
    for (unsigned t = 0; t < opt.verify_points && ok; ++t) {
      NormalWord pt(m);
      bool outside = false;
      while (!outside) {
        for (std::size_t v = 0; v < m; ++v) {
          pt[v] = coord(rng);
          outside = outside || pt[v] < 0 || pt[v] > static_cast<long>(d);
        }
      }
      ok = h.evaluate(pt) == raw(pt);
    }
    if (ok) return h;
    if (d == 0) break;
  }
  throw std::runtime_error("act: interpolation degree cap exceeded");
}

std::size_t FunctionModule::label_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("unknown basis label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

CoordinatePolynomial FunctionModule::reduce(CoordinatePolynomial f, std::vector<Rational>& coeffs) const {
  coeffs.assign(basis_.size(), Rational(0));
  for (const auto& row : echelon_) {
    const Rational c = f.coefficient(row.pivot);
    if (c == 0) continue;
    const Rational factor = c / row.poly.coefficient(row.pivot);
    f -= factor * row.poly;
    for (std::size_t j = 0; j < row.combination.size(); ++j) coeffs[j] += factor * row.combination[j];
  }
  return f;
}

void FunctionModule::append(const CoordinatePolynomial& element, const CoordinatePolynomial& reduced,
                            std::vector<Rational> combination, std::string label) {
  combination.push_back(1);
  echelon_.push_back({reduced, reduced.terms().begin()->first, std::move(combination)});
  basis_.push_back(element);
  labels_.push_back(std::move(label));
}

std::vector<Rational> FunctionModule::coordinates(const CoordinatePolynomial& f) const {
  std::vector<Rational> coeffs;
  if (!reduce(f, coeffs).is_zero()) throw std::invalid_argument("function lies outside the module");
  return coeffs;
}

FunctionModule closure(const NilpotentPresentation& p, std::size_t cap, const ActOptions& opt) {
  const std::size_t m = p.generator_count();
  const auto names = coordinate_names(p);
  FunctionModule mod;
  std::size_t fresh = 0;
  auto admit = [&](const CoordinatePolynomial& f, const std::string& label_hint) {
    std::vector<Rational> coeffs;
    const CoordinatePolynomial r = mod.reduce(f, coeffs);
    if (r.is_zero()) return;
    if (mod.dimension() >= cap) throw GuardError("closure: module dimension cap exceeded");
    // remove only whole multiples of the basis so integer-valued functions stay integral:
    // b = f - sum floor(c_j) B_j = r + sum frac(c_j) B_j
    CoordinatePolynomial b = f;
    std::vector<Rational> combination(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      Integer fl;
      mpz_fdiv_q(fl.get_mpz_t(), coeffs[j].get_num_mpz_t(), coeffs[j].get_den_mpz_t());
      if (fl != 0) b -= Rational(fl) * mod.basis_[j];
      combination[j] = coeffs[j] - Rational(fl);
    }
    const Rational sign = r.terms().begin()->second < 0 ? -1 : 1;
    for (auto& c : combination) c = -sign * c;  // sign*r = sign*b - sign*sum frac_j B_j
    std::string label = label_hint;
    if (label.empty()) label = r.max_degree() == 0 ? "1" : "f" + std::to_string(++fresh);
    mod.append(sign * b, sign * r, std::move(combination), label);
  };
  for (std::size_t i = 1; i <= m; ++i) admit(coordinate_function(i, m), names[i - 1]);
  for (std::size_t i = 0; i < mod.dimension(); ++i)
    for (std::size_t k = 0; k < m; ++k) admit(act(mod.basis_[i], p.generator(k), p, opt), "");
  admit(CoordinatePolynomial::constant(m, 1), "1");

  const std::size_t d = mod.dimension();
  for (std::size_t k = 0; k < m; ++k)
    for (int e : {1, -1}) {
      RationalMatrix a(d);
      for (std::size_t i = 0; i < d; ++i) {
        const auto c = mod.coordinates(act(mod.basis_[i], p.generator(k, e), p, opt));
        for (std::size_t j = 0; j < d; ++j) a(i + 1, j + 1) = c[j];
      }
      (e == 1 ? mod.gens_ : mod.inv_gens_).push_back(std::move(a));
    }
  return mod;
}

std::vector<std::size_t> declared_ordering(const NilpotentPresentation& p, const FunctionModule& m) {
  std::vector<std::size_t> order;
  const std::size_t gens = p.generator_count();
  if (p.realization() && p.realization()->positions) {
    const PositionBasis& pos = *p.realization()->positions;
    for (std::size_t j = 2; j <= pos.matrix_size(); ++j)
      for (std::size_t i = 1; i < j; ++i) order.push_back(pos.index_of(i, j));
  } else {
    for (std::size_t k = 0; k < gens; ++k) order.push_back(k);
  }
  const std::size_t one = m.label_index("1");
  for (std::size_t k = gens; k < m.dimension(); ++k)
    if (k != one) order.push_back(k);
  order.push_back(one);
  return order;
}

std::vector<std::size_t> parse_ordering(const std::string& text, const FunctionModule& m) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    tokens.push_back(tok);
  }
  const bool numeric = std::all_of(tokens.begin(), tokens.end(), [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  });
  std::vector<std::size_t> order;
  if (numeric) {
    // plain indices, unless that reading is not a permutation (then "1" is the constant's label)
    for (const auto& t : tokens) order.push_back(std::stoul(t));
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    bool perm = sorted.size() == m.dimension();
    for (std::size_t k = 0; perm && k < sorted.size(); ++k) perm = sorted[k] == k;
    if (perm) return order;
    order.clear();
  }
  for (const auto& t : tokens) order.push_back(m.label_index(t));
  std::vector<std::size_t> check = order;
  std::sort(check.begin(), check.end());
  if (check.size() != m.dimension()) throw std::invalid_argument("ordering is not a permutation of the module basis");
  for (std::size_t k = 0; k < check.size(); ++k)
    if (check[k] != k) throw std::invalid_argument("ordering is not a permutation of the module basis");
  return order;
}

NickelEmbedding nickel_embedding(const NilpotentPresentation& p, const FunctionModule& m,
                                 const std::vector<std::size_t>& order) {
  if (order.size() != m.dimension()) throw std::invalid_argument("ordering is not a permutation of the module basis");
  NickelEmbedding r;
  r.d = m.dimension();
  r.permutation = order;
  for (std::size_t k : order) r.ordering.push_back(m.labels().at(k));
  r.integral = true;
  r.unitriangular = true;
  for (std::size_t k = 0; k < m.generators().size(); ++k) {
    auto a = to_integer(permuted(m.generators()[k], order));
    auto b = to_integer(permuted(m.inverse_generators()[k], order));
    if (!a || !b) {
      r.integral = false;
      r.unitriangular = false;
      continue;
    }
    r.unitriangular = r.unitriangular && a->is_unitriangular();
    r.generators.push_back(std::move(*a));
    r.inverse_generators.push_back(std::move(*b));
  }
  r.relators_ok = r.integral && relators_hold(p, r.generators, r.inverse_generators);
  return r;
}

std::vector<OrderingReport> ordering_search(const FunctionModule& m, SearchMode mode, std::size_t threads,
                                            std::size_t max_dim) {
  std::vector<IntegerMatrix> gens;
  for (const auto& g : m.generators()) {
    auto a = to_integer(g);
    if (!a) throw std::logic_error("module matrices are not integral");
    gens.push_back(std::move(*a));
  }
  return ordering_search(gens, mode, threads, max_dim);
}

std::vector<OrderingReport> ordering_search(const std::vector<IntegerMatrix>& gens, SearchMode mode,
                                            std::size_t threads, std::size_t max_dim) {
  if (gens.empty()) throw std::invalid_argument("ordering search: no generators");
  const std::size_t d = gens.front().size();
  if (mode == SearchMode::Exhaustive && d > max_dim)
    throw GuardError("ordering search: exhaustive mode needs dimension <= " + std::to_string(max_dim));
  auto evaluate = [&](const std::vector<std::size_t>& order) {
    OrderingReport rep{order, false, {}, Rational(0)};
    std::vector<std::size_t> pos(d);
    for (std::size_t k = 0; k < d; ++k) pos[order[k]] = k;
    for (const auto& g : gens)
      for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t j = 1; j <= d; ++j)
          if (i != j && g(i, j) != 0 && pos[i - 1] > pos[j - 1]) return rep;
    rep.unitriangular = true;
    std::vector<UnitriangularMatrix> images;
    for (const auto& g : gens) {
      images.push_back(g.permuted(order).to_unitriangular());
      rep.weights.push_back(static_cast<unsigned>(*level_weight(images.back())));
    }
    rep.d_H = distortion_degree(SubgroupGens(d, images)).d_H;
    return rep;
  };

  std::vector<std::size_t> order(d);
  for (std::size_t k = 0; k < d; ++k) order[k] = k;
  std::vector<OrderingReport> out;
  if (mode == SearchMode::ReportFirst) {
    do {
      out.push_back(evaluate(order));
      if (out.back().unitriangular) break;
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
  }
  std::vector<std::vector<std::size_t>> perms;
  do perms.push_back(order);
  while (std::next_permutation(order.begin(), order.end()));
  out.resize(perms.size());
  threads = std::max<std::size_t>(1, std::min(threads, perms.size()));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < perms.size(); i += threads) out[i] = evaluate(perms[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace nilmat
