#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "viscoid/rational.hpp"

namespace viscoid {

/// Sparse multivariate polynomial with rational coefficients over a fixed
/// number of variables (the network parameters, in canonical order).
///
/// Terms are kept in graded lexicographic order, highest first. Zero
/// coefficients are never stored, so the zero polynomial has no terms.
class ParamPoly {
 public:
  using Exponents = std::vector<unsigned>;

  struct GradedLexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  ParamPoly() = default;
  explicit ParamPoly(std::size_t num_vars) : num_vars_(num_vars) {}

  static ParamPoly constant(std::size_t num_vars, const Rational& value);
  static ParamPoly variable(std::size_t num_vars, std::size_t index);
  static ParamPoly monomial(const Rational& coeff, Exponents exponents);

  std::size_t num_vars() const { return num_vars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  unsigned total_degree() const;

  /// Coefficient of the graded-lex leading term; zero for the zero polynomial.
  Rational leading_coefficient() const;

  ParamPoly& operator+=(const ParamPoly& rhs);
  ParamPoly& operator-=(const ParamPoly& rhs);
  ParamPoly& operator*=(const ParamPoly& rhs);
  ParamPoly& operator*=(const Rational& scalar);
  ParamPoly operator-() const;

  friend ParamPoly operator+(ParamPoly lhs, const ParamPoly& rhs) { return lhs += rhs; }
  friend ParamPoly operator-(ParamPoly lhs, const ParamPoly& rhs) { return lhs -= rhs; }
  friend ParamPoly operator*(const ParamPoly& lhs, const ParamPoly& rhs);
  friend ParamPoly operator*(ParamPoly lhs, const Rational& rhs) { return lhs *= rhs; }
  friend bool operator==(const ParamPoly& a, const ParamPoly& b);

  ParamPoly derivative(std::size_t var) const;

  /// Re-indexes this polynomial into a larger variable space: variable i
  /// becomes variable offset + i of total.
  ParamPoly embedded(std::size_t offset, std::size_t total) const;

  /// Largest monomial dividing every term (componentwise minimum exponent).
  Exponents monomial_content() const;
  /// Exact division by a monomial; throws std::domain_error if inexact.
  ParamPoly divided_by_monomial(const Exponents& exponents) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Canonical text: terms in graded-lex order joined by " + " / " - ",
  /// each term "c*x^k*y" with the coefficient omitted when it is 1.
  std::string to_string(std::span<const std::string> names) const;

  /// Inverse of to_string (accepts any sum of products of rationals and
  /// names with optional integer powers).
  static ParamPoly parse(std::string_view text, std::span<const std::string> names);

 private:
  void check_compatible(const ParamPoly& other) const;
  void add_term(const Exponents& exponents, const Rational& coeff);

  std::size_t num_vars_ = 0;
  TermMap terms_;
};

}  // namespace viscoid
