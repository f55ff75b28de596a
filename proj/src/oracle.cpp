#include "viscoid/oracle.hpp"

#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "viscoid/ident.hpp"

namespace viscoid {

ParamPoint random_point(std::size_t num_params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return {sample_parameters(num_params, rng), seed};
}

CoefficientJacobian::CoefficientJacobian(const ConstitutiveEq& eq)
    : num_params_(eq.num_vars()), entries_(coefficient_map(eq)) {
  const ParamPoly& pivot = entries_.empty() ? eq.sigma.coeffs().back() : entries_.front().denominator;
  for (std::size_t j = 0; j < num_params_; ++j) pivot_grad_.push_back(pivot.derivative(j));
  for (const auto& e : entries_) {
    std::vector<ParamPoly> grad;
    grad.reserve(num_params_);
    for (std::size_t j = 0; j < num_params_; ++j) grad.push_back(e.numerator.derivative(j));
    numerator_grad_.push_back(std::move(grad));
  }
}

RationalMatrix CoefficientJacobian::jacobian(std::span<const Rational> theta) const {
  RationalMatrix jac(entries_.size(), num_params_);
  if (entries_.empty()) return jac;
  const Rational pivot = entries_.front().denominator.evaluate(theta);
  if (pivot == 0) throw DegenerateSample("pivot vanishes at the sampled point");
  const Rational pivot_sq = pivot * pivot;
  std::vector<Rational> dpivot;
  dpivot.reserve(num_params_);
  for (const auto& g : pivot_grad_) dpivot.push_back(g.evaluate(theta));
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Rational num = entries_[i].numerator.evaluate(theta);
    for (std::size_t j = 0; j < num_params_; ++j) {
      jac(i, j) = (numerator_grad_[i][j].evaluate(theta) * pivot - num * dpivot[j]) / pivot_sq;
    }
  }
  return jac;
}

std::vector<Rational> CoefficientJacobian::values(std::span<const Rational> theta) const {
  std::vector<Rational> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.evaluate(theta));
  return out;
}

std::vector<double> CoefficientJacobian::values(std::span<const double> theta) const {
  std::vector<double> out;
  out.reserve(entries_.size());
  if (entries_.empty()) return out;
  const double pivot = entries_.front().denominator.evaluate(theta);
  for (const auto& e : entries_) out.push_back(e.numerator.evaluate(theta) / pivot);
  return out;
}

std::vector<double> CoefficientJacobian::jacobian(std::span<const double> theta) const {
  std::vector<double> jac(entries_.size() * num_params_, 0.0);
  if (entries_.empty()) return jac;
  const double pivot = entries_.front().denominator.evaluate(theta);
  std::vector<double> dpivot;
  for (const auto& g : pivot_grad_) dpivot.push_back(g.evaluate(theta));
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double num = entries_[i].numerator.evaluate(theta);
    for (std::size_t j = 0; j < num_params_; ++j) {
      jac[i * num_params_ + j] = (numerator_grad_[i][j].evaluate(theta) * pivot - num * dpivot[j]) / (pivot * pivot);
    }
  }
  return jac;
}

namespace {

std::size_t rank_with_resampling(const CoefficientJacobian& cj, const ParamPoint& theta, std::size_t* resamples) {
  ParamPoint point = theta;
  for (int attempt = 0;; ++attempt) {
    try {
      return rank(cj.jacobian(point.values));
    } catch (const DegenerateSample&) {
      if (attempt == 2) throw;
      point = random_point(theta.values.size(), theta.seed + 0x9e3779b97f4a7c15ULL * (attempt + 1));
      if (resamples) ++*resamples;
    }
  }
}

}  // namespace

std::size_t jacobian_rank(const NetworkExpr& expr, const ParamPoint& theta) {
  if (theta.values.size() != expr.leaf_count()) throw std::invalid_argument("parameter point has wrong dimension");
  for (const auto& v : theta.values) {
    if (v <= 0) throw std::invalid_argument("parameters must be strictly positive");
  }
  return rank_with_resampling(CoefficientJacobian(constitutive(expr)), theta, nullptr);
}

std::size_t jacobian_rank_svd(const NetworkExpr& expr, const ParamPoint& theta, double rel_cutoff) {
  const CoefficientJacobian cj(constitutive(expr));
  const auto x = to_double(theta.values);
  const auto jac = cj.jacobian(std::span<const double>(x));
  if (jac.empty()) return 0;
  Eigen::MatrixXd m(cj.num_coefficients(), cj.num_params());
  for (std::size_t i = 0; i < cj.num_coefficients(); ++i) {
    for (std::size_t j = 0; j < cj.num_params(); ++j) m(i, j) = jac[i * cj.num_params() + j];
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_cutoff * sv(0)) ++r;
  }
  return r;
}

LocalCheck verify_local(const NetworkExpr& expr, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("verify_local needs at least one trial");
  const ConstitutiveEq eq = constitutive(expr);
  const CoefficientJacobian cj(eq);
  LocalCheck check;
  check.param_count = expr.leaf_count();
  check.nonmonic_count = nonmonic_count(eq);
  check.symbolic_identifiable = check.param_count == check.nonmonic_count;

  std::mt19937_64 seeds(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    ParamPoint point = random_point(check.param_count, seeds());
    std::size_t r = rank_with_resampling(cj, point, &check.resamples);
    if ((r == check.param_count) != check.symbolic_identifiable) {
      // A full-rank map can still drop rank on a measure-zero set.
      point = random_point(check.param_count, seeds());
      ++check.resamples;
      r = rank_with_resampling(cj, point, &check.resamples);
      if ((r == check.param_count) != check.symbolic_identifiable) {
        check.agrees = false;
        check.counterexample = point;
      }
    }
    check.ranks.push_back(r);
    if (!check.agrees) break;
  }
  return check;
}

namespace {

std::vector<Rational> drop_low(std::vector<Rational> v, unsigned k) {
  v.erase(v.begin(), v.begin() + k);
  return v;
}

}  // namespace

bool check_coprimality(const ConstitutiveEq& first, std::span<const Rational> theta1, const ConstitutiveEq& second,
                       std::span<const Rational> theta2, Connection op) {
  const bool series = op == Connection::Series;
  const DiffOperator& a = series ? first.eps : first.sigma;
  const DiffOperator& b = series ? second.eps : second.sigma;
  auto pa = eval_operator(a, theta1);
  auto pb = eval_operator(b, theta2);
  const unsigned k = std::min(a.shape().m, b.shape().m);
  return resultant(drop_low(std::move(pa), k), drop_low(std::move(pb), k)) != 0;
}

bool coprime_generic(const ConstitutiveEq& first, const ConstitutiveEq& second, Connection op, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto t1 = sample_parameters(first.num_vars(), rng);
    const auto t2 = sample_parameters(second.num_vars(), rng);
    if (check_coprimality(first, t1, second, t2, op)) return true;
  }
  return false;
}

}  // namespace viscoid
