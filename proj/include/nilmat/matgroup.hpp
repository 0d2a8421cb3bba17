// Exact unitriangular integer matrices, Mal'cev coordinates and the
// nilpotent log/exp pair.
//
// Indices in the public API follow the mathematical convention: rows and
// columns run over 1..n, and an elementary matrix s_ij(alpha) has alpha at
// row i, column j.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nilmat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Upper unitriangular n x n matrix over Z.
class UnitriangularMatrix {
 public:
  /// Identity of size n (n >= 1).
  explicit UnitriangularMatrix(std::size_t n = 1);

  /// Throws std::invalid_argument unless rows form a unitriangular matrix.
  static UnitriangularMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  std::size_t size() const noexcept { return n_; }

  /// Entry at (i, j), 1-based.
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[(i - 1) * n_ + (j - 1)]; }

  /// Sets a strictly upper entry; throws on i >= j.
  void set(std::size_t i, std::size_t j, Integer value);

  bool is_identity() const;
  std::vector<std::vector<Integer>> rows() const;

  friend bool operator==(const UnitriangularMatrix& a, const UnitriangularMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }
  friend bool operator<(const UnitriangularMatrix& a, const UnitriangularMatrix& b);

  std::size_t hash() const noexcept;

 private:
  std::size_t n_;
  std::vector<Integer> data_;
};

struct UnitriangularHash {
  std::size_t operator()(const UnitriangularMatrix& m) const noexcept { return m.hash(); }
};

/// Dense square matrix over Q.
class RationalMatrix {
 public:
  explicit RationalMatrix(std::size_t n = 1) : n_(n), data_(n * n) {}
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from(const UnitriangularMatrix& a);

  std::size_t size() const noexcept { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[(i - 1) * n_ + (j - 1)]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[(i - 1) * n_ + (j - 1)]; }

  bool is_zero() const;
  bool is_strictly_upper() const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  std::size_t n_;
  std::vector<Rational> data_;
};

/// Strictly upper triangular rational matrix (Lie algebra side).
class NilpotentMatrix {
 public:
  explicit NilpotentMatrix(std::size_t n = 1) : m_(n) {}
  /// Throws std::invalid_argument if m has entries on or below the diagonal.
  explicit NilpotentMatrix(RationalMatrix m);

  std::size_t size() const noexcept { return m_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const RationalMatrix& matrix() const noexcept { return m_; }
  bool is_zero() const { return m_.is_zero(); }

  /// Entries above the diagonal, row by row: the coordinate vector used for
  /// linear algebra on the Lie side.
  std::vector<Rational> flatten() const;

  friend bool operator==(const NilpotentMatrix& a, const NilpotentMatrix& b) { return a.m_ == b.m_; }

 private:
  RationalMatrix m_;
};

/// Lie bracket XY - YX.
NilpotentMatrix bracket(const NilpotentMatrix& x, const NilpotentMatrix& y);

/// Ordered list of strictly-upper positions; the Mal'cev basis of UT_n(Z)
/// whose k-th element is the elementary matrix at positions[k].
class PositionBasis {
 public:
  enum class Flavor { LcsStandard, Scheme };

  PositionBasis(std::size_t n, Flavor flavor);

  std::size_t matrix_size() const noexcept { return n_; }
  std::size_t length() const noexcept { return positions_.size(); }
  Flavor flavor() const noexcept { return flavor_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& positions() const noexcept { return positions_; }
  std::pair<std::size_t, std::size_t> position(std::size_t k) const { return positions_.at(k); }
  /// 0-based index of position (i, j).
  std::size_t index_of(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
  Flavor flavor_;
  std::vector<std::pair<std::size_t, std::size_t>> positions_;
};

std::string to_string(PositionBasis::Flavor f);
PositionBasis::Flavor parse_flavor(const std::string& s);

/// s_ij(alpha) = 1 + alpha e_ij.
UnitriangularMatrix elementary(std::size_t n, std::size_t i, std::size_t j, const Integer& alpha = 1);

UnitriangularMatrix multiply(const UnitriangularMatrix& a, const UnitriangularMatrix& b);
UnitriangularMatrix inverse(const UnitriangularMatrix& a);
/// a^-1 b^-1 a b
UnitriangularMatrix commutator(const UnitriangularMatrix& a, const UnitriangularMatrix& b);
UnitriangularMatrix power(const UnitriangularMatrix& a, const Integer& e);

inline UnitriangularMatrix operator*(const UnitriangularMatrix& a, const UnitriangularMatrix& b) {
  return multiply(a, b);
}

/// Least super-diagonal level carrying a nonzero entry; this is the weight
/// in UT_n(Z). std::nullopt encodes the infinite weight of the identity.
std::optional<std::size_t> level_weight(const UnitriangularMatrix& a);

NilpotentMatrix log_unipotent(const UnitriangularMatrix& a);
NilpotentMatrix log_unipotent(const RationalMatrix& a);
RationalMatrix exp_nilpotent(const NilpotentMatrix& x);
/// Integral unitriangular view of a rational matrix, if it is one.
std::optional<UnitriangularMatrix> to_unitriangular(const RationalMatrix& a);

std::vector<Integer> malcev_coordinates(const UnitriangularMatrix& a, const PositionBasis& basis);
UnitriangularMatrix from_coordinates(const std::vector<Integer>& v, const PositionBasis& basis);

}  // namespace nilmat
