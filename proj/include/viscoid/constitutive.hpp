#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "viscoid/diff_operator.hpp"
#include "viscoid/network.hpp"

namespace viscoid {

/// L_eps(d/dt) eps = L_sigma(d/dt) sigma, with denominators cleared. The
/// pair is only defined up to a common nonzero factor.
struct ConstitutiveEq {
  DiffOperator eps;
  DiffOperator sigma;

  std::size_t num_vars() const { return eps.num_vars(); }
  ConstitutiveEq embedded(std::size_t offset, std::size_t total) const;

  friend bool operator==(const ConstitutiveEq&, const ConstitutiveEq&) = default;
};

/// Spring: E eps = sigma. Dashpot: eta eps' = sigma. The element parameter
/// is variable `index` of a `num_vars`-dimensional space.
ConstitutiveEq element_equation(ElementKind kind, std::size_t index, std::size_t num_vars);

/// Series connection (common stress, strains add):
///   (L1 L3, L1 L4 + L2 L3) / x^k,  k = min(m(L1), m(L3)).
/// Both arguments must live in the same parameter space.
ConstitutiveEq combine_series(const ConstitutiveEq& first, const ConstitutiveEq& second);

/// Parallel connection (common strain, stresses add):
///   (L1 L4 + L2 L3, L2 L4).
ConstitutiveEq combine_parallel(const ConstitutiveEq& first, const ConstitutiveEq& second);

ConstitutiveEq combine(Connection connection, const ConstitutiveEq& first, const ConstitutiveEq& second);

/// Constitutive equation of a whole network, over params(expr). Children of
/// each n-ary node are folded left to right.
ConstitutiveEq constitutive(const NetworkExpr& expr);

std::vector<Rational> eval_operator(const DiffOperator& op, std::span<const Rational> theta);

enum class Side { Strain, Stress };

/// One entry of the normalized coefficient map: the coefficient of the
/// given derivative order on one side, divided by the pivot (the leading
/// stress coefficient).
struct CoefficientEntry {
  Side side;
  unsigned order;
  ParamPoly numerator;
  ParamPoly denominator;

  Rational evaluate(std::span<const Rational> theta) const;
  double evaluate(std::span<const double> theta) const;
};

/// Non-monic coefficients of the normalized equation: strain coefficients
/// from the highest order down, then stress coefficients below the pivot.
/// Throws std::domain_error if the pivot is identically zero.
std::vector<CoefficientEntry> coefficient_map(const ConstitutiveEq& eq);

/// Text of num/den after cancelling common monomial factors. A monomial
/// denominator is distributed over the numerator terms.
std::string format_ratio(const ParamPoly& numerator, const ParamPoly& denominator,
                         std::span<const std::string> names);

/// Human-readable equation, e.g. "E·ε + n·ε̇ = σ". With normalize=true every
/// coefficient is divided by the pivot so the leading stress term is monic.
std::string format_equation(const ConstitutiveEq& eq, std::span<const std::string> names, bool normalize);

/// { "eps": [{"order": k, "poly": "..."}...], "sigma": [...] }, nonzero
/// coefficients only, ascending order.
nlohmann::json to_json(const ConstitutiveEq& eq, std::span<const std::string> names);
ConstitutiveEq equation_from_json(const nlohmann::json& j, std::span<const std::string> names);

}  // namespace viscoid
