// Nilpotent (polycyclic) presentations on a Mal'cev basis x_1..x_M and
// collection of products into normal form x_1^{a_1} ... x_M^{a_M}.
//
// Generators are 0-based inside the library. A presentation stores, for each
// pair i < j, the commutator [x_j, x_i] = x_j^-1 x_i^-1 x_j x_i as a normal
// word supported on indices > j.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nilmat/matgroup.hpp"

namespace nilmat {

class NormalWord {
 public:
  NormalWord() = default;
  explicit NormalWord(std::size_t length) : exps_(length) {}
  explicit NormalWord(std::vector<Integer> exponents) : exps_(std::move(exponents)) {}
  NormalWord(std::initializer_list<long> exponents);

  /// x_k^e as a word of the given length.
  static NormalWord generator(std::size_t length, std::size_t k, const Integer& e = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  const Integer& operator[](std::size_t k) const { return exps_[k]; }
  Integer& operator[](std::size_t k) { return exps_[k]; }
  const std::vector<Integer>& exponents() const noexcept { return exps_; }
  bool is_identity() const;
  /// Smallest index with nonzero exponent, or size() for the identity.
  std::size_t leading_index() const;

  friend bool operator==(const NormalWord& a, const NormalWord& b) { return a.exps_ == b.exps_; }
  friend bool operator<(const NormalWord& a, const NormalWord& b) { return a.exps_ < b.exps_; }

 private:
  std::vector<Integer> exps_;
};

std::string to_string(const NormalWord& w);

/// [x_j, x_i] = word (0-based, i < j).
struct Relation {
  std::size_t j;
  std::size_t i;
  NormalWord word;
};

/// Faithful unitriangular matrix images of the generators.
struct Realization {
  std::vector<UnitriangularMatrix> generators;
  /// Present when the generators are exactly the elementary matrices of a
  /// PositionBasis of UT_n(Z).
  std::optional<PositionBasis> positions;
};

class NilpotentPresentation {
 public:
  /// Validates the support restriction and weight consistency of every
  /// relation; throws std::invalid_argument otherwise.
  NilpotentPresentation(std::vector<unsigned> weights, std::vector<Relation> relations, std::string label,
                        std::optional<Realization> realization = std::nullopt,
                        std::vector<std::string> generator_labels = {});

  std::size_t generator_count() const noexcept { return weights_.size(); }
  const std::vector<unsigned>& weights() const noexcept { return weights_; }
  unsigned weight(std::size_t k) const { return weights_.at(k); }
  unsigned nilpotency_class() const noexcept { return class_; }
  const std::string& label() const noexcept { return label_; }
  const std::vector<std::string>& generator_labels() const noexcept { return labels_; }
  /// Nontrivial relations, ordered by (j, i).
  std::vector<Relation> relations() const;
  /// The stored word for [x_j, x_i], i < j.
  const NormalWord& relation(std::size_t j, std::size_t i) const { return rel_[j][i]; }
  /// Weights non-decreasing along the generator order (basis refines the
  /// isolated lower central series in order).
  bool lcs_adapted() const;
  const std::optional<Realization>& realization() const noexcept { return realization_; }

  NormalWord identity() const { return NormalWord(generator_count()); }
  NormalWord generator(std::size_t k, const Integer& e = 1) const {
    return NormalWord::generator(generator_count(), k, e);
  }

  NormalWord multiply(const NormalWord& a, const NormalWord& b) const;
  NormalWord inverse(const NormalWord& a) const;
  NormalWord power(const NormalWord& a, const Integer& e) const;
  /// a * x_k^e
  NormalWord multiply_generator(const NormalWord& a, std::size_t k, const Integer& e) const;

  /// Matrix of the normal word through the realization; throws if absent.
  UnitriangularMatrix to_matrix(const NormalWord& w) const;

 private:
  using Images = std::vector<NormalWord>;

  void check_length(const NormalWord& w) const;
  NormalWord apply(const Images& images, std::size_t k, const NormalWord& tail) const;
  Images compose(const Images& outer, const Images& inner, std::size_t k) const;
  NormalWord conjugate_tail(std::size_t k, const Integer& e, const NormalWord& tail) const;

  std::vector<unsigned> weights_;
  unsigned class_ = 0;
  std::vector<std::vector<NormalWord>> rel_;
  std::string label_;
  std::vector<std::string> labels_;
  std::optional<Realization> realization_;
  // conj_[k][l] = x_k^-1 x_l x_k and conj_inv_[k][l] = x_k x_l x_k^-1 for l > k
  std::vector<Images> conj_;
  std::vector<Images> conj_inv_;
};

NilpotentPresentation unitriangular_presentation(std::size_t m, PositionBasis::Flavor flavor);
/// (2n+1)-dimensional Heisenberg group: x_i = s_{1,i+1}, x_{n+i} = s_{i+1,n+2},
/// x_{2n+1} = s_{1,n+2} inside UT_{n+2}(Z).
NilpotentPresentation heisenberg_presentation(std::size_t n);
/// Free nilpotent group of rank 2 and class 3 on (y1..y5) with
/// [y1,y2] = y3, [y3,y1] = y4, [y3,y2] = y5.
NilpotentPresentation freenil23_presentation();

/// "ut:m", "ut:m:scheme", "ut:m:lcs-standard", "heisenberg:n", "freenil23".
NilpotentPresentation builtin_presentation(const std::string& name);

}  // namespace nilmat
