// Nickel's embedding: the finite dimensional module of polynomial functions
// on G spanned by the coordinate functions t_i under f^g(h) = f(h g^-1).

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nilmat/distortion.hpp"
#include "nilmat/errors.hpp"
#include "nilmat/jennings.hpp"
#include "nilmat/presentation.hpp"

namespace nilmat {

/// Polynomial in the exponents a_1..a_M of a normal word.
class CoordinatePolynomial {
 public:
  using Exponents = std::vector<unsigned>;

  explicit CoordinatePolynomial(std::size_t vars = 0) : vars_(vars) {}
  static CoordinatePolynomial constant(std::size_t vars, const Rational& c);

  std::size_t variables() const noexcept { return vars_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  Rational coefficient(const Exponents& e) const;
  void add(const Exponents& e, const Rational& c);
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest exponent of any variable.
  unsigned max_degree() const;

  Rational evaluate(const NormalWord& a) const;

  CoordinatePolynomial& operator+=(const CoordinatePolynomial& o);
  CoordinatePolynomial& operator-=(const CoordinatePolynomial& o);
  friend CoordinatePolynomial operator*(const Rational& s, const CoordinatePolynomial& f);
  friend CoordinatePolynomial operator+(CoordinatePolynomial a, const CoordinatePolynomial& b) { return a += b; }
  friend CoordinatePolynomial operator-(CoordinatePolynomial a, const CoordinatePolynomial& b) { return a -= b; }
  friend bool operator==(const CoordinatePolynomial& a, const CoordinatePolynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t vars_;
  std::map<Exponents, Rational> terms_;
};

/// "t13 - t23 + 1" style rendering with the given variable names.
std::string to_string(const CoordinatePolynomial& f, const std::vector<std::string>& names);

/// t_i (1-based i), the function x^a -> a_i.
CoordinatePolynomial coordinate_function(std::size_t i, std::size_t vars);

/// Variable names t12, t1, ... derived from the generator labels.
std::vector<std::string> coordinate_names(const NilpotentPresentation& p);

struct ActOptions {
  unsigned start_degree = 2;
  unsigned max_degree = 16;
  unsigned verify_points = 3;
  unsigned long seed = 0x5eed;
};

/// h -> f(h g^-1) by evaluation on a tensor grid 0..D and exact interpolation.
/// Throws std::runtime_error when the degree cap is exceeded.
CoordinatePolynomial act(const CoordinatePolynomial& f, const NormalWord& g, const NilpotentPresentation& p,
                         const ActOptions& opt = {});

class FunctionModule {
 public:
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<CoordinatePolynomial>& basis() const noexcept { return basis_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Action of x_k (row i = coordinates of basis_i^{x_k}).
  const std::vector<RationalMatrix>& generators() const noexcept { return gens_; }
  const std::vector<RationalMatrix>& inverse_generators() const noexcept { return inv_gens_; }
  std::size_t label_index(const std::string& label) const;

  /// Coordinates of f in the basis; throws if f is outside the span.
  std::vector<Rational> coordinates(const CoordinatePolynomial& f) const;

 private:
  friend FunctionModule closure(const NilpotentPresentation& p, std::size_t cap, const ActOptions& opt);
  struct EchelonRow {
    CoordinatePolynomial poly;
    CoordinatePolynomial::Exponents pivot;
    std::vector<Rational> combination;  // poly = sum combination_j basis_j
  };
  /// Residual of f against the echelon rows and the coefficients removed.
  CoordinatePolynomial reduce(CoordinatePolynomial f, std::vector<Rational>& coeffs) const;
  /// reduced = element - sum combination_j basis_j, zero at all earlier pivots.
  void append(const CoordinatePolynomial& element, const CoordinatePolynomial& reduced,
              std::vector<Rational> combination, std::string label);

  std::vector<CoordinatePolynomial> basis_;
  std::vector<std::string> labels_;
  std::vector<EchelonRow> echelon_;
  std::vector<RationalMatrix> gens_;
  std::vector<RationalMatrix> inv_gens_;
};

/// Smallest subspace containing t_1..t_M and 1 closed under every generator;
/// throws GuardError beyond cap dimensions.
FunctionModule closure(const NilpotentPresentation& p, std::size_t cap = 512, const ActOptions& opt = {});

/// The ordering the undistortion argument for UT_m uses: t_ij by column j,
/// then row i, followed by 1. Only for presentations with a PositionBasis.
std::vector<std::size_t> declared_ordering(const NilpotentPresentation& p, const FunctionModule& m);
/// Labels like "t12,t13,t23,1" or 0-based indices "0,2,1,3".
std::vector<std::size_t> parse_ordering(const std::string& text, const FunctionModule& m);

struct NickelEmbedding : EmbeddingResult {
  bool integral = false;
  std::vector<std::size_t> permutation;
};

/// Module matrices conjugated by the ordering (entry (p,q) = original (order[p], order[q])).
NickelEmbedding nickel_embedding(const NilpotentPresentation& p, const FunctionModule& m,
                                 const std::vector<std::size_t>& order);

struct OrderingReport {
  std::vector<std::size_t> permutation;
  bool unitriangular = false;
  std::vector<unsigned> weights;  // nu_K per generator, unitriangular orderings only
  Rational d_H;                   // unitriangular orderings only
};

enum class SearchMode { Exhaustive, ReportFirst };

/// Every permutation (in lexicographic rank order) for Exhaustive, stopping
/// at the first unitriangular one for ReportFirst. Exhaustive needs
/// dimension <= max_dim. Parallel over permutations with `threads` workers.
std::vector<OrderingReport> ordering_search(const FunctionModule& m, SearchMode mode, std::size_t threads = 1,
                                            std::size_t max_dim = 8);
/// Same search over arbitrary integer generator matrices (e.g. a Jennings embedding).
std::vector<OrderingReport> ordering_search(const std::vector<IntegerMatrix>& gens, SearchMode mode,
                                            std::size_t threads = 1, std::size_t max_dim = 8);

}  // namespace nilmat
