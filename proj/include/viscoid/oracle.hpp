#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "viscoid/constitutive.hpp"
#include "viscoid/matrix.hpp"
#include "viscoid/network.hpp"

namespace viscoid {

/// Positive parameter values in canonical order, plus the seed they were
/// drawn from.
struct ParamPoint {
  std::vector<Rational> values;
  std::uint64_t seed = 0;
};

/// Draws every coordinate from the sampling grid {1..10^6}/1000.
ParamPoint random_point(std::size_t num_params, std::uint64_t seed);

class DegenerateSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient map with symbolic first derivatives, ready for evaluation.
class CoefficientJacobian {
 public:
  explicit CoefficientJacobian(const ConstitutiveEq& eq);

  std::size_t num_params() const { return num_params_; }
  std::size_t num_coefficients() const { return entries_.size(); }
  const std::vector<CoefficientEntry>& entries() const { return entries_; }

  /// Exact Jacobian by the quotient rule. Throws DegenerateSample if the
  /// pivot vanishes at theta.
  RationalMatrix jacobian(std::span<const Rational> theta) const;

  std::vector<Rational> values(std::span<const Rational> theta) const;
  std::vector<double> values(std::span<const double> theta) const;
  /// Floating-point Jacobian, row-major num_coefficients x num_params.
  std::vector<double> jacobian(std::span<const double> theta) const;

 private:
  std::size_t num_params_;
  std::vector<CoefficientEntry> entries_;
  std::vector<std::vector<ParamPoly>> numerator_grad_;
  std::vector<ParamPoly> pivot_grad_;
};

/// Exact rank of the Jacobian of the coefficient map at theta. A point at
/// which the pivot vanishes is replaced by a fresh draw, at most twice.
std::size_t jacobian_rank(const NetworkExpr& expr, const ParamPoint& theta);

/// Floating-point cross-check: number of singular values above
/// rel_cutoff times the largest.
std::size_t jacobian_rank_svd(const NetworkExpr& expr, const ParamPoint& theta, double rel_cutoff = 1e-8);

struct LocalCheck {
  bool agrees = true;
  bool symbolic_identifiable = false;
  std::size_t param_count = 0;
  std::size_t nonmonic_count = 0;
  std::vector<std::size_t> ranks;
  std::size_t resamples = 0;
  std::optional<ParamPoint> counterexample;
};

/// Compares full Jacobian rank at `trials` random points against the
/// coefficient-counting verdict. A disagreeing point gets one resample
/// before it is reported.
LocalCheck verify_local(const NetworkExpr& expr, std::size_t trials, std::uint64_t seed);

/// Resultant test for a common factor of the operators that must be
/// coprime when the two equations are combined: L1, L3 (after removing the
/// shared power of d/dt) in series, L2, L4 in parallel. Each equation is
/// evaluated at its own parameter vector.
bool check_coprimality(const ConstitutiveEq& first, std::span<const Rational> theta1, const ConstitutiveEq& second,
                       std::span<const Rational> theta2, Connection op);

/// Same check at random points, allowing one resample on a zero resultant.
bool coprime_generic(const ConstitutiveEq& first, const ConstitutiveEq& second, Connection op, std::uint64_t seed);

// Fiber search ------------------------------------------------------------------

enum class FiberMethod { Base, Permutation, RootExchange, Multistart };
std::string to_string(FiberMethod m);

struct FiberConfig {
  std::size_t multistarts = 200;
  double tol = 1e-8;
  std::size_t max_solutions = 64;
  std::uint64_t seed = 0;
  double dedup_distance = 1e-6;
  std::size_t newton_iterations = 100;
};

struct FiberSolution {
  std::vector<double> values;
  std::set<FiberMethod> methods;
  /// Largest |c_i(theta) - c_i(base)| / |c_i(base)|; this bounds the error
  /// scaled by 1 + |c_i(base)| as well.
  double residual = 0.0;
  /// Set when the point is an exact rational solution (permutations).
  bool exact = false;
};

struct FiberReport {
  ParamPoint base;
  std::vector<FiberSolution> solutions;
  bool truncated = false;
  std::size_t starts_run = 0;
  std::size_t starts_converged = 0;
  std::size_t permutation_candidates = 0;
  std::size_t root_exchange_candidates = 0;
};

/// Points with the same coefficient vector as `base`, from sibling
/// permutations, root exchanges between connected sub-networks, and
/// multistart damped Newton in log coordinates. The base point is always
/// the first solution.
FiberReport fiber_solutions(const NetworkExpr& expr, const ParamPoint& base, const FiberConfig& config);

}  // namespace viscoid
