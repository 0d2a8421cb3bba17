#include "nilmat/integer_matrix.hpp"

#include <stdexcept>

namespace nilmat {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n);
  for (std::size_t i = 1; i <= n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from(const UnitriangularMatrix& a) {
  IntegerMatrix m(a.size());
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = i; j <= a.size(); ++j) m(i, j) = a(i, j);
  return m;
}

bool IntegerMatrix::is_unitriangular() const {
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = 1; j <= i; ++j) {
      const Integer& v = (*this)(i, j);
      if (i == j ? v != 1 : v != 0) return false;
    }
  return true;
}

UnitriangularMatrix IntegerMatrix::to_unitriangular() const {
  if (!is_unitriangular()) throw std::logic_error("matrix is not unitriangular");
  UnitriangularMatrix u(n_);
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = i + 1; j <= n_; ++j)
      if ((*this)(i, j) != 0) u.set(i, j, (*this)(i, j));
  return u;
}

IntegerMatrix IntegerMatrix::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != n_) throw std::invalid_argument("permutation length mismatch");
  IntegerMatrix m(n_);
  for (std::size_t p = 0; p < n_; ++p)
    for (std::size_t q = 0; q < n_; ++q) m.data_[p * n_ + q] = data_[order[p] * n_ + order[q]];
  return m;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("size mismatch");
  const std::size_t n = a.n_;
  IntegerMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Integer& aik = a.data_[i * n + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Integer& bkj = b.data_[k * n + j];
        if (bkj != 0) c.data_[i * n + j] += aik * bkj;
      }
    }
  return c;
}

bool operator<(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  for (std::size_t k = 0; k < a.data_.size(); ++k) {
    const int c = cmp(a.data_[k], b.data_[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

IntegerMatrix power(const IntegerMatrix& a, unsigned long e) {
  IntegerMatrix result = IntegerMatrix::identity(a.size());
  IntegerMatrix base = a;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

}  // namespace nilmat
