#include "nilmat/matgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilmat {

UnitriangularMatrix::UnitriangularMatrix(std::size_t n) : n_(n), data_(n * n) {
  if (n == 0) throw std::invalid_argument("matrix size must be positive");
  for (std::size_t i = 0; i < n; ++i) data_[i * n + i] = 1;
}

UnitriangularMatrix UnitriangularMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t n = rows.size();
  UnitriangularMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("matrix rows must be square");
    for (std::size_t j = 0; j < n; ++j) {
      const Integer& v = rows[i][j];
      if (i == j && v != 1) throw std::invalid_argument("diagonal entries must equal 1");
      if (i > j && v != 0) throw std::invalid_argument("entries below the diagonal must vanish");
      if (i < j) m.data_[i * n + j] = v;
    }
  }
  return m;
}

void UnitriangularMatrix::set(std::size_t i, std::size_t j, Integer value) {
  if (i < 1 || j > n_ || i >= j) throw std::out_of_range("only strictly upper entries can be set");
  data_[(i - 1) * n_ + (j - 1)] = std::move(value);
}

bool UnitriangularMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (data_[i * n_ + j] != 0) return false;
  return true;
}

std::vector<std::vector<Integer>> UnitriangularMatrix::rows() const {
  std::vector<std::vector<Integer>> out(n_, std::vector<Integer>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = data_[i * n_ + j];
  return out;
}

bool operator<(const UnitriangularMatrix& a, const UnitriangularMatrix& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  for (std::size_t k = 0; k < a.data_.size(); ++k) {
    const int c = cmp(a.data_[k], b.data_[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::size_t UnitriangularMatrix::hash() const noexcept {
  std::size_t h = n_;
  for (const auto& v : data_) {
    const std::size_t limb = mpz_size(v.get_mpz_t()) ? mpz_getlimbn(v.get_mpz_t(), 0) : 0;
    h ^= limb + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2) + static_cast<std::size_t>(mpz_sgn(v.get_mpz_t()) + 1);
  }
  return h;
}

// ---------------------------------------------------------------------------

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 1; i <= n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from(const UnitriangularMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix m(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) m(i, j) = a(i, j);
  return m;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

bool RationalMatrix::is_strictly_upper() const {
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = 1; j <= i; ++j)
      if ((*this)(i, j) != 0) return false;
  return true;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("size mismatch");
  RationalMatrix c(a.n_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("size mismatch");
  RationalMatrix c(a.n_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
  return c;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("size mismatch");
  const std::size_t n = a.n_;
  RationalMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& aik = a.data_[i * n + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& bkj = b.data_[k * n + j];
        if (bkj != 0) c.data_[i * n + j] += aik * bkj;
      }
    }
  return c;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& a) {
  RationalMatrix c(a.n_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = s * a.data_[k];
  return c;
}

NilpotentMatrix::NilpotentMatrix(RationalMatrix m) : m_(std::move(m)) {
  if (!m_.is_strictly_upper()) throw std::invalid_argument("matrix is not strictly upper triangular");
}

std::vector<Rational> NilpotentMatrix::flatten() const {
  const std::size_t n = size();
  std::vector<Rational> v;
  v.reserve(n * (n - 1) / 2);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) v.push_back(m_(i, j));
  return v;
}

NilpotentMatrix bracket(const NilpotentMatrix& x, const NilpotentMatrix& y) {
  return NilpotentMatrix(x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

// ---------------------------------------------------------------------------

PositionBasis::PositionBasis(std::size_t n, Flavor flavor) : n_(n), flavor_(flavor) {
  if (n < 2) throw std::invalid_argument("position basis needs n >= 2");
  if (flavor == Flavor::LcsStandard) {
    for (std::size_t level = 1; level < n; ++level)
      for (std::size_t i = 1; i + level <= n; ++i) positions_.emplace_back(i, i + level);
  } else {
    // column by column, each column read bottom to top
    for (std::size_t j = 2; j <= n; ++j)
      for (std::size_t i = j - 1; i >= 1; --i) positions_.emplace_back(i, j);
  }
}

std::size_t PositionBasis::index_of(std::size_t i, std::size_t j) const {
  for (std::size_t k = 0; k < positions_.size(); ++k)
    if (positions_[k] == std::pair{i, j}) return k;
  throw std::out_of_range("position not in basis");
}

std::string to_string(PositionBasis::Flavor f) {
  return f == PositionBasis::Flavor::LcsStandard ? "lcs-standard" : "scheme";
}

PositionBasis::Flavor parse_flavor(const std::string& s) {
  if (s == "lcs-standard" || s == "lcs") return PositionBasis::Flavor::LcsStandard;
  if (s == "scheme") return PositionBasis::Flavor::Scheme;
  throw std::invalid_argument("unknown basis flavor '" + s + "'");
}

// ---------------------------------------------------------------------------

UnitriangularMatrix elementary(std::size_t n, std::size_t i, std::size_t j, const Integer& alpha) {
  if (i < 1 || j > n) throw std::out_of_range("elementary: index out of range");
  if (i >= j) throw std::invalid_argument("elementary: need i < j");
  UnitriangularMatrix m(n);
  m.set(i, j, alpha);
  return m;
}

UnitriangularMatrix multiply(const UnitriangularMatrix& a, const UnitriangularMatrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("multiply: size mismatch");
  UnitriangularMatrix c(n);
  Integer acc;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      acc = a(i, j) + b(i, j);
      for (std::size_t k = i + 1; k < j; ++k) {
        const Integer& aik = a(i, k);
        if (aik != 0) {
          const Integer& bkj = b(k, j);
          if (bkj != 0) acc += aik * bkj;
        }
      }
      if (acc != 0) c.set(i, j, acc);
    }
  return c;
}

UnitriangularMatrix inverse(const UnitriangularMatrix& a) {
  const std::size_t n = a.size();
  // Solve A X = I row by row from the bottom: X_ij = -sum_{i<k<=j} A_ik X_kj.
  UnitriangularMatrix x(n);
  Integer acc;
  for (std::size_t i = n; i >= 1; --i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      acc = a(i, j);
      for (std::size_t k = i + 1; k < j; ++k) {
        const Integer& aik = a(i, k);
        if (aik != 0) {
          const Integer& xkj = x(k, j);
          if (xkj != 0) acc += aik * xkj;
        }
      }
      if (acc != 0) x.set(i, j, -acc);
    }
  return x;
}

UnitriangularMatrix commutator(const UnitriangularMatrix& a, const UnitriangularMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("commutator: size mismatch");
  return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

UnitriangularMatrix power(const UnitriangularMatrix& a, const Integer& e) {
  UnitriangularMatrix base = e < 0 ? inverse(a) : a;
  Integer k = abs(e);
  UnitriangularMatrix result(a.size());
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = multiply(result, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

std::optional<std::size_t> level_weight(const UnitriangularMatrix& a) {
  const std::size_t n = a.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 1; i + level <= n; ++i)
      if (a(i, i + level) != 0) return level;
  return std::nullopt;
}

NilpotentMatrix log_unipotent(const RationalMatrix& a) {
  const std::size_t n = a.size();
  const RationalMatrix nil = a - RationalMatrix::identity(n);
  if (!nil.is_strictly_upper()) throw std::invalid_argument("log: matrix is not unipotent upper triangular");
  RationalMatrix sum(n);
  RationalMatrix term = nil;
  for (std::size_t k = 1; k < n && !term.is_zero(); ++k) {
    const Rational coef(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
    sum = sum + coef * term;
    term = term * nil;
  }
  return NilpotentMatrix(std::move(sum));
}

NilpotentMatrix log_unipotent(const UnitriangularMatrix& a) { return log_unipotent(RationalMatrix::from(a)); }

RationalMatrix exp_nilpotent(const NilpotentMatrix& x) {
  const std::size_t n = x.size();
  RationalMatrix sum = RationalMatrix::identity(n);
  RationalMatrix term = x.matrix();
  Rational factorial = 1;
  for (std::size_t k = 1; k < n && !term.is_zero(); ++k) {
    factorial *= static_cast<long>(k);
    sum = sum + Rational(1) / factorial * term;
    term = term * x.matrix();
  }
  return sum;
}

std::optional<UnitriangularMatrix> to_unitriangular(const RationalMatrix& a) {
  const std::size_t n = a.size();
  UnitriangularMatrix m(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const Rational& q = a(i, j);
      if (i == j) {
        if (q != 1) return std::nullopt;
      } else if (i > j) {
        if (q != 0) return std::nullopt;
      } else {
        if (q.get_den() != 1) return std::nullopt;
        if (q != 0) m.set(i, j, q.get_num());
      }
    }
  return m;
}

std::vector<Integer> malcev_coordinates(const UnitriangularMatrix& a, const PositionBasis& basis) {
  const std::size_t n = a.size();
  if (basis.matrix_size() != n) throw std::invalid_argument("malcev_coordinates: basis size mismatch");
  // Peel x_k^{a_k} off the left: after clearing positions 1..k-1 the
  // remainder lies in the tail subgroup, whose k-th coordinate is the entry.
  std::vector<std::vector<Integer>> r = a.rows();
  std::vector<Integer> coords;
  coords.reserve(basis.length());
  for (const auto& [i, j] : basis.positions()) {
    const Integer c = r[i - 1][j - 1];
    coords.push_back(c);
    if (c == 0) continue;
    // row_i -= c * row_j
    for (std::size_t col = j; col <= n; ++col)
      if (r[j - 1][col - 1] != 0) r[i - 1][col - 1] -= c * r[j - 1][col - 1];
  }
  return coords;
}

UnitriangularMatrix from_coordinates(const std::vector<Integer>& v, const PositionBasis& basis) {
  if (v.size() != basis.length()) throw std::invalid_argument("from_coordinates: length mismatch");
  const std::size_t n = basis.matrix_size();
  std::vector<std::vector<Integer>> r(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    const auto [i, j] = basis.position(k);
    // right multiplication by s_ij(v): column j += v * column i
    for (std::size_t row = 1; row <= i; ++row)
      if (r[row - 1][i - 1] != 0) r[row - 1][j - 1] += v[k] * r[row - 1][i - 1];
  }
  return UnitriangularMatrix::from_rows(r);
}

}  // namespace nilmat
