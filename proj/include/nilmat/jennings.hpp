// Jennings embedding: the truncated group algebra QG/I^n in the basis of
// ordered monomials u_1^{r_1} ... u_M^{r_M}, u_i = 1 - x_i, and the right
// action of the generators on it.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilmat/integer_matrix.hpp"
#include "nilmat/presentation.hpp"

namespace nilmat {

struct WeightedMonomial {
  std::vector<unsigned> exponents;
  unsigned weight = 0;

  bool is_unit() const;
  friend bool operator==(const WeightedMonomial& a, const WeightedMonomial& b) { return a.exponents == b.exponents; }
  friend bool operator<(const WeightedMonomial& a, const WeightedMonomial& b) { return a.exponents < b.exponents; }
};

/// "1", "u12^2*u23", ... using the presentation's generator labels.
std::string monomial_label(const WeightedMonomial& v, const NilpotentPresentation& p);

class AlgebraElement {
 public:
  explicit AlgebraElement(unsigned n_trunc) : n_trunc_(n_trunc) {}

  unsigned truncation() const noexcept { return n_trunc_; }
  const std::map<std::vector<unsigned>, Integer>& terms() const noexcept { return terms_; }
  Integer coefficient(const std::vector<unsigned>& exponents) const;
  /// Adds c times the monomial; monomials of weight >= n_trunc are dropped by the caller.
  void add(const std::vector<unsigned>& exponents, const Integer& c);
  bool is_zero() const noexcept { return terms_.empty(); }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.n_trunc_ == b.n_trunc_ && a.terms_ == b.terms_;
  }

 private:
  unsigned n_trunc_;
  std::map<std::vector<unsigned>, Integer> terms_;
};

class JenningsBasis {
 public:
  enum class Order { WeightLex, SchemePerturbed, Explicit };

  /// All monomials of weight < n_trunc in the requested order. SchemePerturbed
  /// needs a ut presentation whose realization carries a PositionBasis.
  JenningsBasis(const NilpotentPresentation& p, unsigned n_trunc, Order order = Order::WeightLex);
  /// Explicit permutation of the weight-lex basis: element k is weight-lex element perm[k].
  JenningsBasis(const NilpotentPresentation& p, unsigned n_trunc, const std::vector<std::size_t>& perm);

  std::size_t size() const noexcept { return monomials_.size(); }
  unsigned truncation() const noexcept { return n_trunc_; }
  Order order() const noexcept { return order_; }
  const std::vector<WeightedMonomial>& monomials() const noexcept { return monomials_; }
  const WeightedMonomial& operator[](std::size_t k) const { return monomials_[k]; }
  std::optional<std::size_t> index_of(const std::vector<unsigned>& exponents) const;
  /// d_k = number of monomials of weight k, k = 0..n_trunc-1.
  std::vector<std::size_t> graded_dimensions() const;

 private:
  void index();

  unsigned n_trunc_;
  Order order_;
  std::vector<WeightedMonomial> monomials_;
  std::map<std::vector<unsigned>, std::size_t> index_;
};

std::string to_string(JenningsBasis::Order order);
JenningsBasis::Order parse_jennings_order(const std::string& name);

/// Coordinates of the group element x^a in the monomial basis of QG/I^n.
AlgebraElement expand_group(const NormalWord& a, const NilpotentPresentation& p, unsigned n_trunc);

/// Row i = coordinates of (basis element i) * x_gen^e, e = +1 or -1.
IntegerMatrix action_matrix(const NilpotentPresentation& p, const JenningsBasis& basis, std::size_t gen,
                            int e = 1);

struct EmbeddingResult {
  std::size_t d = 0;
  std::vector<std::string> ordering;
  std::vector<IntegerMatrix> generators;
  std::vector<IntegerMatrix> inverse_generators;
  bool unitriangular = false;
  bool relators_ok = false;
};

/// Images of every generator; checks the relations and that inverse images invert.
EmbeddingResult jennings_embedding(const NilpotentPresentation& p, const JenningsBasis& basis);
EmbeddingResult jennings_embedding(const NilpotentPresentation& p,
                                   JenningsBasis::Order order = JenningsBasis::Order::WeightLex);

/// Checks M_j^-1 M_i^-1 M_j M_i = product of M_k^{r_k} for every pair i < j.
bool relators_hold(const NilpotentPresentation& p, const std::vector<IntegerMatrix>& images,
                   const std::vector<IntegerMatrix>& inverse_images);
/// Matrix of a normal word from the generator images.
IntegerMatrix word_image(const NormalWord& w, const std::vector<IntegerMatrix>& images,
                         const std::vector<IntegerMatrix>& inverse_images);

/// level_weight of each generator image; throws if the embedding is not unitriangular.
std::vector<unsigned> image_weights(const EmbeddingResult& r);

}  // namespace nilmat
