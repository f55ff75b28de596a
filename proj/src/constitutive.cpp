#include "viscoid/constitutive.hpp"

#include <algorithm>
#include <stdexcept>

namespace viscoid {

ConstitutiveEq ConstitutiveEq::embedded(std::size_t offset, std::size_t total) const {
  return {eps.embedded(offset, total), sigma.embedded(offset, total)};
}

ConstitutiveEq element_equation(ElementKind kind, std::size_t index, std::size_t num_vars) {
  const ParamPoly param = ParamPoly::variable(num_vars, index);
  const ParamPoly one = ParamPoly::constant(num_vars, Rational(1));
  const unsigned order = kind == ElementKind::Spring ? 0 : 1;
  return {DiffOperator::monomial(param, order), DiffOperator::monomial(one, 0)};
}

ConstitutiveEq combine_series(const ConstitutiveEq& first, const ConstitutiveEq& second) {
  const DiffOperator& l1 = first.eps;
  const DiffOperator& l2 = first.sigma;
  const DiffOperator& l3 = second.eps;
  const DiffOperator& l4 = second.sigma;
  // Two operators without a constant term share the factor d/dt.
  const unsigned k = std::min(l1.shape().m, l3.shape().m);
  return {(l1 * l3).divided_by_x_power(k), (l1 * l4 + l2 * l3).divided_by_x_power(k)};
}

ConstitutiveEq combine_parallel(const ConstitutiveEq& first, const ConstitutiveEq& second) {
  const DiffOperator& l1 = first.eps;
  const DiffOperator& l2 = first.sigma;
  const DiffOperator& l3 = second.eps;
  const DiffOperator& l4 = second.sigma;
  return {l1 * l4 + l2 * l3, l2 * l4};
}

ConstitutiveEq combine(Connection connection, const ConstitutiveEq& first, const ConstitutiveEq& second) {
  return connection == Connection::Series ? combine_series(first, second) : combine_parallel(first, second);
}

namespace {

ConstitutiveEq derive(const NetworkExpr& e, std::size_t& next_index, std::size_t num_vars) {
  if (e.is_leaf()) return element_equation(e.element().kind, next_index++, num_vars);
  const auto& children = e.children();
  ConstitutiveEq acc = derive(children.front(), next_index, num_vars);
  for (std::size_t i = 1; i < children.size(); ++i) {
    acc = combine(e.connection(), acc, derive(children[i], next_index, num_vars));
  }
  return acc;
}

}  // namespace

ConstitutiveEq constitutive(const NetworkExpr& expr) {
  std::size_t next_index = 0;
  return derive(expr, next_index, expr.leaf_count());
}

std::vector<Rational> eval_operator(const DiffOperator& op, std::span<const Rational> theta) {
  if (theta.size() != op.num_vars()) {
    throw std::invalid_argument("parameter vector has length " + std::to_string(theta.size()) + ", expected " +
                                std::to_string(op.num_vars()));
  }
  return op.evaluate(theta);
}

Rational CoefficientEntry::evaluate(std::span<const Rational> theta) const {
  const Rational den = denominator.evaluate(theta);
  if (den == 0) throw std::domain_error("coefficient denominator vanishes at this point");
  return numerator.evaluate(theta) / den;
}

double CoefficientEntry::evaluate(std::span<const double> theta) const {
  return numerator.evaluate(theta) / denominator.evaluate(theta);
}

std::vector<CoefficientEntry> coefficient_map(const ConstitutiveEq& eq) {
  if (eq.sigma.is_zero() || eq.eps.is_zero()) throw std::domain_error("constitutive equation has a zero side");
  const Shape se = eq.eps.shape();
  const Shape ss = eq.sigma.shape();
  const ParamPoly& pivot = eq.sigma.coeffs()[ss.n];
  if (pivot.is_zero()) throw std::domain_error("pivot coefficient is identically zero");

  std::vector<CoefficientEntry> out;
  for (unsigned k = se.n + 1; k-- > se.m;) {
    out.push_back({Side::Strain, k, eq.eps.coeffs()[k], pivot});
  }
  for (unsigned k = ss.n; k-- > 0;) {
    out.push_back({Side::Stress, k, eq.sigma.coeffs()[k], pivot});
  }
  return out;
}

namespace {

bool is_monomial(const ParamPoly& p) { return p.term_count() == 1; }

std::string wrap_if_sum(const std::string& s, const ParamPoly& p) {
  return p.term_count() > 1 ? "(" + s + ")" : s;
}

// Denominators also need parentheses around products: a/(b*c).
std::string wrap_denominator(const std::string& s, const ParamPoly& p) {
  return p.term_count() > 1 || s.find('*') != std::string::npos ? "(" + s + ")" : s;
}

std::string format_term_ratio(const ParamPoly& num, const ParamPoly& den, std::span<const std::string> names) {
  if (den.is_constant()) {
    ParamPoly q = num * (Rational(1) / den.leading_coefficient());
    return q.to_string(names);
  }
  if (num == den) return "1";
  return wrap_if_sum(num.to_string(names), num) + "/" + wrap_denominator(den.to_string(names), den);
}

}  // namespace

std::string format_ratio(const ParamPoly& numerator, const ParamPoly& denominator,
                         std::span<const std::string> names) {
  if (denominator.is_zero()) throw std::domain_error("zero denominator");
  if (numerator.is_zero()) return "0";

  if (!is_monomial(denominator)) {
    // Cancel only the shared monomial factor; no general polynomial gcd.
    ParamPoly::Exponents common = numerator.monomial_content();
    const ParamPoly::Exponents dc = denominator.monomial_content();
    for (std::size_t i = 0; i < common.size(); ++i) common[i] = std::min(common[i], dc[i]);
    return format_term_ratio(numerator.divided_by_monomial(common), denominator.divided_by_monomial(common), names);
  }

  const auto& [den_exp, den_coeff] = *denominator.terms().begin();
  std::string out;
  bool first = true;
  for (const auto& [e, c] : numerator.terms()) {
    ParamPoly::Exponents top = e;
    ParamPoly::Exponents bottom = den_exp;
    for (std::size_t i = 0; i < top.size(); ++i) {
      const unsigned shared = std::min(top[i], bottom[i]);
      top[i] -= shared;
      bottom[i] -= shared;
    }
    const Rational value = c / den_coeff;
    std::string text = ParamPoly::monomial(abs(value), top).to_string(names);
    const ParamPoly rest = ParamPoly::monomial(Rational(1), bottom);
    if (!rest.is_constant()) {
      text += "/" + wrap_denominator(rest.to_string(names), rest);
    }
    if (first) {
      out += value < 0 ? "-" + text : text;
    } else {
      out += (value < 0 ? " - " : " + ") + text;
    }
    first = false;
  }
  return out;
}

namespace {

std::string derivative_symbol(const char* base, unsigned order) {
  switch (order) {
    case 0: return base;
    case 1: return std::string(base) + "̇";
    case 2: return std::string(base) + "̈";
    default: return std::string(base) + "^(" + std::to_string(order) + ")";
  }
}

std::string format_side(const DiffOperator& op, const char* symbol, const ParamPoly* pivot,
                        std::span<const std::string> names) {
  std::string out;
  const auto& coeffs = op.coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    std::string c = pivot ? format_ratio(coeffs[k], *pivot, names) : coeffs[k].to_string(names);
    const bool compound = c.find_first_of("+-", 1) != std::string::npos;
    if (!out.empty()) out += " + ";
    if (c == "1") {
      out += derivative_symbol(symbol, static_cast<unsigned>(k));
    } else {
      out += (compound ? "(" + c + ")" : c) + "·" + derivative_symbol(symbol, static_cast<unsigned>(k));
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string format_equation(const ConstitutiveEq& eq, std::span<const std::string> names, bool normalize) {
  const ParamPoly* pivot = nullptr;
  ParamPoly pivot_value;
  if (normalize) {
    pivot_value = eq.sigma.coeffs().back();
    pivot = &pivot_value;
  }
  return format_side(eq.eps, "ε", pivot, names) + " = " + format_side(eq.sigma, "σ", pivot, names);
}

namespace {

nlohmann::json side_json(const DiffOperator& op, std::span<const std::string> names) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t k = 0; k < op.coeffs().size(); ++k) {
    if (op.coeffs()[k].is_zero()) continue;
    arr.push_back({{"order", k}, {"poly", op.coeffs()[k].to_string(names)}});
  }
  return arr;
}

DiffOperator side_from_json(const nlohmann::json& arr, std::span<const std::string> names) {
  std::vector<ParamPoly> coeffs;
  for (const auto& entry : arr) {
    const auto order = entry.at("order").get<std::size_t>();
    if (coeffs.size() <= order) coeffs.resize(order + 1, ParamPoly(names.size()));
    coeffs[order] = ParamPoly::parse(entry.at("poly").get<std::string>(), names);
  }
  return DiffOperator(names.size(), std::move(coeffs));
}

}  // namespace

nlohmann::json to_json(const ConstitutiveEq& eq, std::span<const std::string> names) {
  return {{"eps", side_json(eq.eps, names)}, {"sigma", side_json(eq.sigma, names)}};
}

ConstitutiveEq equation_from_json(const nlohmann::json& j, std::span<const std::string> names) {
  return {side_from_json(j.at("eps"), names), side_from_json(j.at("sigma"), names)};
}

}  // namespace viscoid
