#include "viscoid/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace viscoid {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const {
  if (row + rows > rows_ || col + cols > cols_) throw std::out_of_range("block exceeds matrix bounds");
  RationalMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(row + r, col + c);
  }
  return out;
}

RationalMatrix RationalMatrix::with_columns(const std::vector<std::size_t>& order) const {
  RationalMatrix out(rows_, order.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    if (order[c] >= cols_) throw std::out_of_range("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, c) = (*this)(r, order[c]);
  }
  return out;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t r = 0; r < rows_; ++r) {
    out << '[';
    for (std::size_t c = 0; c < cols_; ++c) out << (c ? ", " : "") << (*this)(r, c).get_str();
    out << "]\n";
  }
  return out.str();
}

namespace {

// Integer matrix with each row scaled by the lcm of its denominators.
// Returns the product of the scale factors.
mpz_class to_integer_rows(const RationalMatrix& m, std::vector<mpz_class>& out) {
  out.assign(m.rows() * m.cols(), 0);
  mpz_class scale_product = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out[r * m.cols() + c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }
    scale_product *= l;
  }
  return scale_product;
}

// Bareiss elimination in place; returns rank. Tracks the sign of row swaps.
std::size_t bareiss(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols, int& sign) {
  sign = 1;
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[pivot * cols + c], a[rank * cols + c]);
      sign = -sign;
    }
    const mpz_class p = a[rank * cols + col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const mpz_class f = a[r * cols + col];
      for (std::size_t c = col + 1; c < cols; ++c) {
        mpz_class v = p * a[r * cols + c] - f * a[rank * cols + c];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[r * cols + c] = std::move(v);
      }
      a[r * cols + col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

}  // namespace

Rational determinant(const RationalMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  std::vector<mpz_class> a;
  const mpz_class scale = to_integer_rows(m, a);
  int sign = 1;
  if (bareiss(a, n, n, sign) < n) return Rational(0);
  Rational det(a[n * n - 1] * sign, scale);
  det.canonicalize();
  return det;
}

std::size_t rank(const RationalMatrix& m) {
  std::vector<mpz_class> a;
  to_integer_rows(m, a);
  int sign = 1;
  return bareiss(a, m.rows(), m.cols(), sign);
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace viscoid
