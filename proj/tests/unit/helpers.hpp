#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "viscoid/constitutive.hpp"
#include "viscoid/network.hpp"

namespace testing {

using namespace viscoid;

/// Parameter vector for expr, taking each value from `values` by name.
inline std::vector<Rational> theta_by_name(const NetworkExpr& expr, const std::map<std::string, Rational>& values) {
  std::vector<Rational> out;
  for (const auto& name : param_names(expr)) out.push_back(values.at(name));
  return out;
}

inline std::map<std::string, Rational> random_values(const NetworkExpr& expr, std::mt19937_64& rng) {
  std::map<std::string, Rational> out;
  for (const auto& name : param_names(expr)) out[name] = sample_parameter(rng);
  return out;
}

/// Constitutive equation with children combined in a random order and a
/// random binary bracketing at every node. Parameters follow params(expr).
inline ConstitutiveEq random_fold(const NetworkExpr& expr, std::size_t offset, std::size_t total,
                                  std::mt19937_64& rng) {
  if (expr.is_leaf()) return element_equation(expr.element().kind, offset, total);
  std::vector<ConstitutiveEq> parts;
  std::size_t at = offset;
  for (const auto& c : expr.children()) {
    parts.push_back(random_fold(c, at, total, rng));
    at += c.leaf_count();
  }
  std::shuffle(parts.begin(), parts.end(), rng);
  while (parts.size() > 1) {
    const std::size_t i = rng() % (parts.size() - 1);
    parts[i] = combine(expr.connection(), parts[i], parts[i + 1]);
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
  return parts.front();
}

inline std::vector<Rational> coefficient_values(const ConstitutiveEq& eq, const std::vector<Rational>& theta) {
  std::vector<Rational> out;
  for (const auto& e : coefficient_map(eq)) out.push_back(e.evaluate(theta));
  return out;
}

/// Same network with the children of every internal node reversed.
inline NetworkExpr mirrored(const NetworkExpr& expr) {
  if (expr.is_leaf()) return expr;
  std::vector<NetworkExpr> kids;
  for (auto it = expr.children().rbegin(); it != expr.children().rend(); ++it) kids.push_back(mirrored(*it));
  return NetworkExpr::node(expr.connection(), std::move(kids));
}

}  // namespace testing
