#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nilmat/matgroup.hpp"

namespace nilmat {

/// Dense square integer matrix; the raw form of an action matrix before it
/// is known to be unitriangular.
class IntegerMatrix {
 public:
  explicit IntegerMatrix(std::size_t n = 1) : n_(n), data_(n * n) {}
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from(const UnitriangularMatrix& a);

  std::size_t size() const noexcept { return n_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[(i - 1) * n_ + (j - 1)]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[(i - 1) * n_ + (j - 1)]; }

  bool is_unitriangular() const;
  /// Throws std::logic_error if the matrix is not unitriangular.
  UnitriangularMatrix to_unitriangular() const;
  /// Conjugation by a permutation: entry (p, q) of the result is entry
  /// (order[p], order[q]) of this matrix (0-based order).
  IntegerMatrix permuted(const std::vector<std::size_t>& order) const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }
  friend bool operator<(const IntegerMatrix& a, const IntegerMatrix& b);

 private:
  std::size_t n_;
  std::vector<Integer> data_;
};

/// Non-negative power.
IntegerMatrix power(const IntegerMatrix& a, unsigned long e);

}  // namespace nilmat
