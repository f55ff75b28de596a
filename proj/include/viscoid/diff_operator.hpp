#pragma once

#include <span>
#include <string>
#include <vector>

#include "viscoid/param_poly.hpp"

namespace viscoid {

/// Highest and lowest differential order [n, m] of an operator.
struct Shape {
  unsigned n = 0;
  unsigned m = 0;

  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& s);

/// Linear differential operator sum_k c_k (d/dt)^k with ParamPoly
/// coefficients, treated as a polynomial in x = d/dt.
///
/// Coefficients are stored by order starting at 0; the top coefficient is
/// always nonzero, so the shape of a nonzero operator is tight.
class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(std::size_t num_vars) : num_vars_(num_vars) {}
  DiffOperator(std::size_t num_vars, std::vector<ParamPoly> coeffs_by_order);

  /// coeff * x^order
  static DiffOperator monomial(ParamPoly coeff, unsigned order);

  std::size_t num_vars() const { return num_vars_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Throws std::logic_error for the zero operator.
  Shape shape() const;

  /// Coefficient of x^order (zero polynomial when out of range).
  ParamPoly coeff(unsigned order) const;
  const std::vector<ParamPoly>& coeffs() const { return coeffs_; }

  /// Exact division by x^k. Throws std::domain_error if one of the k lowest
  /// coefficients is nonzero.
  DiffOperator divided_by_x_power(unsigned k) const;

  DiffOperator embedded(std::size_t offset, std::size_t total) const;
  DiffOperator scaled(const ParamPoly& factor) const;

  /// Exact value of every coefficient, indexed by order.
  std::vector<Rational> evaluate(std::span<const Rational> point) const;
  std::vector<double> evaluate(std::span<const double> point) const;

  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
  friend bool operator==(const DiffOperator&, const DiffOperator&) = default;

 private:
  void trim();

  std::size_t num_vars_ = 0;
  std::vector<ParamPoly> coeffs_;
};

}  // namespace viscoid
