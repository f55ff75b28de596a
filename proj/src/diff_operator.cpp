#include "viscoid/diff_operator.hpp"

#include <stdexcept>

namespace viscoid {

std::string to_string(const Shape& s) {
  return "[" + std::to_string(s.n) + "," + std::to_string(s.m) + "]";
}

DiffOperator::DiffOperator(std::size_t num_vars, std::vector<ParamPoly> coeffs_by_order)
    : num_vars_(num_vars), coeffs_(std::move(coeffs_by_order)) {
  for (const auto& c : coeffs_) {
    if (c.num_vars() != num_vars_) throw std::invalid_argument("operator coefficient has wrong variable count");
  }
  trim();
}

DiffOperator DiffOperator::monomial(ParamPoly coeff, unsigned order) {
  const std::size_t nv = coeff.num_vars();
  std::vector<ParamPoly> coeffs(order + 1, ParamPoly(nv));
  coeffs[order] = std::move(coeff);
  return DiffOperator(nv, std::move(coeffs));
}

void DiffOperator::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Shape DiffOperator::shape() const {
  if (coeffs_.empty()) throw std::logic_error("the zero operator has no shape");
  unsigned m = 0;
  while (coeffs_[m].is_zero()) ++m;
  return {static_cast<unsigned>(coeffs_.size() - 1), m};
}

ParamPoly DiffOperator::coeff(unsigned order) const {
  return order < coeffs_.size() ? coeffs_[order] : ParamPoly(num_vars_);
}

DiffOperator DiffOperator::divided_by_x_power(unsigned k) const {
  if (k == 0) return *this;
  for (unsigned i = 0; i < k && i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) {
      throw std::domain_error("operator is not divisible by (d/dt)^" + std::to_string(k));
    }
  }
  if (k >= coeffs_.size()) return DiffOperator(num_vars_);
  return DiffOperator(num_vars_, std::vector<ParamPoly>(coeffs_.begin() + k, coeffs_.end()));
}

DiffOperator DiffOperator::embedded(std::size_t offset, std::size_t total) const {
  std::vector<ParamPoly> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.embedded(offset, total));
  return DiffOperator(total, std::move(out));
}

DiffOperator DiffOperator::scaled(const ParamPoly& factor) const {
  std::vector<ParamPoly> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c * factor);
  return DiffOperator(num_vars_, std::move(out));
}

std::vector<Rational> DiffOperator::evaluate(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.evaluate(point));
  return out;
}

std::vector<double> DiffOperator::evaluate(std::span<const double> point) const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.evaluate(point));
  return out;
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("operator variable count mismatch");
  std::vector<ParamPoly> out(std::max(a.coeffs_.size(), b.coeffs_.size()), ParamPoly(a.num_vars_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return DiffOperator(a.num_vars_, std::move(out));
}

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("operator variable count mismatch");
  if (a.is_zero() || b.is_zero()) return DiffOperator(a.num_vars_);
  std::vector<ParamPoly> out(a.coeffs_.size() + b.coeffs_.size() - 1, ParamPoly(a.num_vars_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return DiffOperator(a.num_vars_, std::move(out));
}

}  // namespace viscoid
