#pragma once

#include <string>
#include <vector>

#include "viscoid/rational.hpp"

namespace viscoid {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
  RationalMatrix with_columns(const std::vector<std::size_t>& order) const;

  std::string to_string() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact determinant. Rows are scaled to integers and reduced with
/// Bareiss' fraction-free elimination. The 0x0 determinant is 1.
Rational determinant(const RationalMatrix& m);

/// Exact rank by fraction-free elimination.
std::size_t rank(const RationalMatrix& m);

/// Sign of a permutation given as an image vector.
int permutation_sign(const std::vector<std::size_t>& perm);

}  // namespace viscoid
