// Subgroups of UT_N(Z): standardized generating sequences, membership,
// lower central series, weights nu_H and the distortion degree d_H.

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "nilmat/errors.hpp"
#include "nilmat/matgroup.hpp"

namespace nilmat {

class SubgroupGens {
 public:
  /// Identity generators are dropped; sizes must equal N.
  SubgroupGens(std::size_t n, const std::vector<UnitriangularMatrix>& generators);

  std::size_t ambient() const noexcept { return n_; }
  const std::vector<UnitriangularMatrix>& generators() const noexcept { return gens_; }
  bool is_trivial() const noexcept { return gens_.empty(); }

 private:
  std::size_t n_;
  std::vector<UnitriangularMatrix> gens_;
};

/// Slot k holds an element whose lcs-standard coordinates vanish before k and
/// are positive at k. Every element of the subgroup is g_{k1}^{e1} g_{k2}^{e2} ...
class StandardizedSequence {
 public:
  struct Slot {
    std::size_t index;
    Integer lead;
    UnitriangularMatrix element;
  };

  explicit StandardizedSequence(std::size_t n);

  std::size_t ambient() const noexcept { return basis_.matrix_size(); }
  const PositionBasis& basis() const noexcept { return basis_; }
  std::vector<Slot> slots() const;
  std::vector<UnitriangularMatrix> elements() const;
  std::size_t size() const;

  /// Exponents e_k with h = prod g_k^{e_k} in slot order, if h is a member.
  std::optional<std::vector<Integer>> sift(const UnitriangularMatrix& h) const;
  /// Adds an element of the ambient group; true if the table changed.
  bool insert(const UnitriangularMatrix& g);

 private:
  PositionBasis basis_;
  std::vector<std::optional<UnitriangularMatrix>> table_;
};

StandardizedSequence standardize(const SubgroupGens& h);

struct Membership {
  bool member = false;
  std::vector<Integer> certificate;
};
Membership member(const UnitriangularMatrix& h, const StandardizedSequence& seq);

/// Level (j - i) of ambient position k of the lcs-standard basis.
std::size_t slot_level(const StandardizedSequence& seq, std::size_t index);

/// H intersected with Gamma_l of the ambient group.
SubgroupGens intersect_gamma(const StandardizedSequence& seq, std::size_t l);
/// Generators of Gamma_k(H): left-normed commutators of weight >= k in H's generators.
SubgroupGens lower_central_gens(const SubgroupGens& h, std::size_t k);

/// Rational span of strictly upper triangular matrices, kept in echelon form.
class LieAlgebraSpan {
 public:
  explicit LieAlgebraSpan(std::size_t n);

  std::size_t ambient() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  bool bracket_closed() const noexcept { return closed_; }
  const std::vector<std::vector<Rational>>& basis() const noexcept { return basis_; }

  bool contains(const NilpotentMatrix& x) const;
  /// True if x was independent of the current span.
  bool add(const NilpotentMatrix& x);
  /// Adds brackets until the span is a Lie subalgebra.
  void close();

 private:
  std::vector<Rational> reduce(std::vector<Rational> v) const;
  NilpotentMatrix unflatten(const std::vector<Rational>& v) const;

  std::size_t n_;
  std::vector<std::vector<Rational>> basis_;
  std::vector<std::size_t> pivots_;
  bool closed_ = true;
};

LieAlgebraSpan lie_span(const SubgroupGens& k);

/// Lie spans of Gamma_k(H) for every k, computed once.
class WeightFiltration {
 public:
  explicit WeightFiltration(const SubgroupGens& h);

  const SubgroupGens& subgroup() const noexcept { return h_; }
  const StandardizedSequence& sequence() const noexcept { return seq_; }
  /// Class of H (number of nontrivial terms of its lower central series).
  std::size_t nilpotency_class() const noexcept { return spans_.size(); }
  /// Weight of h in H; throws std::invalid_argument for non-members or the identity.
  std::size_t nu(const UnitriangularMatrix& h) const;

 private:
  SubgroupGens h_;
  StandardizedSequence seq_;
  std::vector<LieAlgebraSpan> spans_;  // spans_[k-1] for Gamma_k(H)
};

std::size_t nu_H(const UnitriangularMatrix& h, const SubgroupGens& H);

struct Stratum {
  std::size_t m;
  std::size_t t;
  UnitriangularMatrix witness;
  std::size_t generator_count;
};

struct DistortionReport {
  Rational d_H;
  UnitriangularMatrix witness;
  std::vector<Stratum> strata;
};

/// Throws std::invalid_argument for the trivial subgroup.
DistortionReport distortion_degree(const SubgroupGens& H);

/// H = <s12, ..., s_{(m-2)(m-1)}, s_{(N-1)N} s_{(m-1)N}, s_{1N}> with N = p+1, m = q+1.
SubgroupGens construct_pq(std::size_t p, std::size_t q);

/// max nu_G(h) / nu_H(h) over products of at most len standardized generators
/// and their inverses.
Rational brute_force_degree(const SubgroupGens& H, std::size_t len);

/// Word-metric ball of UT_N(Z) for the generators s_{i,i+1}^{+-1}: element -> distance.
std::map<UnitriangularMatrix, std::size_t> ball(std::size_t n, std::size_t radius);

struct EmpiricalEntry {
  std::size_t n;
  std::size_t value;
  bool capped;
};

/// Delta_H^G(n) for n = 0..radius; dist_H found by search over H's generators
/// up to node_cap visited elements.
std::vector<EmpiricalEntry> empirical_distortion(const SubgroupGens& H, std::size_t radius,
                                                 std::size_t node_cap = 2000000);

}  // namespace nilmat
