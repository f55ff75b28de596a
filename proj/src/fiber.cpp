#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "viscoid/oracle.hpp"

namespace viscoid {

std::string to_string(FiberMethod m) {
  switch (m) {
    case FiberMethod::Base: return "base";
    case FiberMethod::Permutation: return "permutation";
    case FiberMethod::RootExchange: return "root-exchange";
    case FiberMethod::Multistart: return "multistart";
  }
  return "?";
}

namespace {

// Newton in log coordinates -------------------------------------------------

struct NewtonResult {
  bool converged = false;
  std::vector<double> theta;
};

std::vector<double> scaled_residual(const CoefficientJacobian& cj, std::span<const double> theta,
                                    const std::vector<double>& target) {
  auto c = cj.values(theta);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double scale = target[i] != 0.0 ? std::abs(target[i]) : 1.0;
    c[i] = (c[i] - target[i]) / scale;
  }
  return c;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Damped Gauss-Newton on c(exp(u)) = target, u = log(theta).
NewtonResult solve_for_target(const CoefficientJacobian& cj, const std::vector<double>& target,
                              std::vector<double> start, std::size_t iterations) {
  const std::size_t n = cj.num_params();
  const std::size_t d = cj.num_coefficients();
  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = std::log(start[j]);
  std::vector<double> theta = start;
  std::vector<double> r = scaled_residual(cj, theta, target);
  double rn = norm2(r);
  if (!std::isfinite(rn)) return {};

  for (std::size_t it = 0; it < iterations; ++it) {
    if (max_abs(r) < 1e-14) return {true, theta};
    const auto jac = cj.jacobian(std::span<const double>(theta));
    Eigen::MatrixXd ju(d, n);
    Eigen::VectorXd rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double scale = target[i] != 0.0 ? std::abs(target[i]) : 1.0;
      for (std::size_t j = 0; j < n; ++j) ju(i, j) = jac[i * n + j] * theta[j] / scale;
      rhs(i) = -r[i];
    }
    Eigen::VectorXd step = ju.completeOrthogonalDecomposition().solve(rhs);
    if (!step.allFinite()) return {};
    const double big = step.cwiseAbs().maxCoeff();
    if (big > 2.0) step *= 2.0 / big;

    double alpha = 1.0;
    bool improved = false;
    std::vector<double> u_try(n), theta_try(n), r_try;
    while (alpha > 1e-8) {
      for (std::size_t j = 0; j < n; ++j) {
        u_try[j] = u[j] + alpha * step(static_cast<Eigen::Index>(j));
        theta_try[j] = std::exp(u_try[j]);
      }
      r_try = scaled_residual(cj, theta_try, target);
      const double rn_try = norm2(r_try);
      if (std::isfinite(rn_try) && rn_try < rn) {
        u = u_try;
        theta = theta_try;
        r = r_try;
        rn = rn_try;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;
  }
  return {max_abs(r) < 1e-10, theta};
}

double relative_residual(const CoefficientJacobian& cj, std::span<const double> theta,
                         const std::vector<double>& target) {
  const auto c = cj.values(theta);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double scale = target[i] != 0.0 ? std::abs(target[i]) : 1.0;
    worst = std::max(worst, std::abs(c[i] - target[i]) / scale);
  }
  return std::isfinite(worst) ? worst : std::numeric_limits<double>::infinity();
}

// Sibling permutations ----------------------------------------------------------

// Leaf indices of a subtree in an order that is canonical for its structure:
// children are visited sorted by structure key.
void canonical_leaves(const NetworkExpr& e, std::size_t offset, std::vector<std::size_t>& out) {
  if (e.is_leaf()) {
    out.push_back(offset);
    return;
  }
  std::vector<std::pair<std::string, std::size_t>> order;
  std::vector<std::size_t> offsets;
  std::size_t at = offset;
  for (std::size_t i = 0; i < e.children().size(); ++i) {
    order.emplace_back(structure_key(e.children()[i]), i);
    offsets.push_back(at);
    at += e.children()[i].leaf_count();
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [key, i] : order) canonical_leaves(e.children()[i], offsets[i], out);
}

using SiblingGroup = std::vector<std::vector<std::size_t>>;

void sibling_groups(const NetworkExpr& e, std::size_t offset, std::vector<SiblingGroup>& out) {
  if (e.is_leaf()) return;
  std::map<std::string, SiblingGroup> by_key;
  std::size_t at = offset;
  for (const auto& c : e.children()) {
    std::vector<std::size_t> leaves;
    canonical_leaves(c, at, leaves);
    by_key[structure_key(c)].push_back(std::move(leaves));
    sibling_groups(c, at, out);
    at += c.leaf_count();
  }
  for (auto& [key, group] : by_key) {
    if (group.size() >= 2) out.push_back(std::move(group));
  }
}

std::vector<std::vector<Rational>> permutation_candidates(const NetworkExpr& expr, const std::vector<Rational>& base,
                                                          std::size_t limit) {
  std::vector<SiblingGroup> groups;
  sibling_groups(expr, 0, groups);
  std::vector<std::vector<Rational>> out;
  if (groups.empty()) return out;

  std::vector<std::vector<std::size_t>> perms(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    perms[g].resize(groups[g].size());
    std::iota(perms[g].begin(), perms[g].end(), 0);
  }
  for (;;) {
    std::vector<Rational> theta = base;
    bool identity = true;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const std::vector<Rational> before = theta;
      for (std::size_t i = 0; i < groups[g].size(); ++i) {
        if (perms[g][i] != i) identity = false;
        const auto& dst = groups[g][i];
        const auto& src = groups[g][perms[g][i]];
        for (std::size_t t = 0; t < dst.size(); ++t) theta[dst[t]] = before[src[t]];
      }
    }
    if (!identity) {
      out.push_back(std::move(theta));
      if (out.size() >= limit) break;
    }
    std::size_t g = 0;
    while (g < groups.size() && !std::next_permutation(perms[g].begin(), perms[g].end())) ++g;
    if (g == groups.size()) break;
  }
  return out;
}

// Root exchange -------------------------------------------------------------------

using Poly = std::vector<double>;  // coefficient k multiplies x^k

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<std::complex<double>> poly_roots(const Poly& p) {
  const std::size_t deg = p.size() - 1;
  if (deg == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -p[i] / p[deg];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

// A real root or a conjugate pair; the factor it contributes is real.
struct RootUnit {
  Poly factor;
  std::size_t degree;
  std::size_t owner;  // 0 or 1: which operator it came from
};

std::vector<RootUnit> root_units(const Poly& p, std::size_t owner) {
  std::vector<RootUnit> units;
  auto roots = poly_roots(p);
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const auto r = roots[i];
    const double tol = 1e-9 * std::max(1.0, std::abs(r));
    if (std::abs(r.imag()) <= tol) {
      units.push_back({{-r.real(), 1.0}, 1, owner});
      continue;
    }
    std::size_t best = roots.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(roots[j] - std::conj(r));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best == roots.size()) continue;
    used[best] = true;
    units.push_back({{std::norm(r), -2.0 * r.real(), 1.0}, 2, owner});
  }
  return units;
}

struct ChildView {
  const NetworkExpr* expr;
  std::size_t offset;
  ConstitutiveEq eq;
  std::vector<double> theta;
};

// Least-squares solve of fa*kb + ka*fb = g for ka, kb of the given shapes.
bool solve_companions(const Poly& fa, const Poly& fb, const Poly& g, Shape sa, Shape sb, Poly& ka, Poly& kb) {
  const std::size_t rows = std::max({fa.size() + sb.n, fb.size() + sa.n, g.size()});
  const std::size_t na = sa.n - sa.m + 1;
  const std::size_t nb = sb.n - sb.m + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(na + nb));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows));
  for (std::size_t k = 0; k < g.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = g[k];
  for (std::size_t c = 0; c < na; ++c) {
    for (std::size_t k = 0; k < fb.size(); ++k) {
      m(static_cast<Eigen::Index>(k + sa.m + c), static_cast<Eigen::Index>(c)) += fb[k];
    }
  }
  for (std::size_t c = 0; c < nb; ++c) {
    for (std::size_t k = 0; k < fa.size(); ++k) {
      m(static_cast<Eigen::Index>(k + sb.m + c), static_cast<Eigen::Index>(na + c)) += fa[k];
    }
  }
  const Eigen::VectorXd sol = m.completeOrthogonalDecomposition().solve(rhs);
  if (!sol.allFinite()) return false;
  if ((m * sol - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm())) return false;
  ka.assign(sa.n + 1, 0.0);
  kb.assign(sb.n + 1, 0.0);
  for (std::size_t c = 0; c < na; ++c) ka[sa.m + c] = sol(static_cast<Eigen::Index>(c));
  for (std::size_t c = 0; c < nb; ++c) kb[sb.m + c] = sol(static_cast<Eigen::Index>(na + c));
  return true;
}

// Normalized coefficient vector of a numeric (eps, sigma) pair, in the
// order used by coefficient_map, provided the shapes match.
bool normalized_target(const Poly& eps, const Poly& sigma, const ConstitutiveEq& reference, std::vector<double>& out) {
  const Shape se = reference.eps.shape();
  const Shape ss = reference.sigma.shape();
  if (eps.size() < se.n + 1 || sigma.size() < ss.n + 1) return false;
  const double pivot = sigma[ss.n];
  if (pivot == 0.0 || eps[se.n] == 0.0 || eps[se.m] == 0.0 || sigma[0] == 0.0) return false;
  out.clear();
  for (unsigned k = se.n + 1; k-- > se.m;) out.push_back(eps[k] / pivot);
  for (unsigned k = ss.n; k-- > 0;) out.push_back(sigma[k] / pivot);
  return true;
}

bool invert_child(const ChildView& child, const std::vector<double>& target, std::mt19937_64& rng,
                  std::vector<double>& theta_out) {
  const CoefficientJacobian cj(child.eq);
  std::uniform_real_distribution<double> spread(-1.0, 1.0);
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<double> start = child.theta;
    if (attempt > 0) {
      for (double& v : start) v *= std::pow(10.0, spread(rng));
    }
    NewtonResult res = solve_for_target(cj, target, start, 100);
    if (res.converged) {
      theta_out = std::move(res.theta);
      return true;
    }
  }
  return false;
}

void exchange_pair(Connection op, const ChildView& a, const ChildView& b, std::size_t limit, std::mt19937_64& rng,
                   std::vector<std::vector<double>>& out, const std::vector<double>& base) {
  const bool series = op == Connection::Series;
  const DiffOperator& fa_op = series ? a.eq.eps : a.eq.sigma;
  const DiffOperator& ka_op = series ? a.eq.sigma : a.eq.eps;
  const DiffOperator& fb_op = series ? b.eq.eps : b.eq.sigma;
  const DiffOperator& kb_op = series ? b.eq.sigma : b.eq.eps;
  const Shape sfa = fa_op.shape(), sfb = fb_op.shape();
  if (sfa.n == sfa.m || sfb.n == sfb.m) return;

  const Poly fa = fa_op.evaluate(std::span<const double>(a.theta));
  const Poly fb = fb_op.evaluate(std::span<const double>(b.theta));
  const Poly ka = ka_op.evaluate(std::span<const double>(a.theta));
  const Poly kb = kb_op.evaluate(std::span<const double>(b.theta));
  const Poly g = poly_add(poly_mul(fa, kb), poly_mul(ka, fb));

  auto units = root_units(Poly(fa.begin() + sfa.m, fa.end()), 0);
  auto more = root_units(Poly(fb.begin() + sfb.m, fb.end()), 1);
  units.insert(units.end(), more.begin(), more.end());
  if (units.size() > 20) return;
  const std::size_t deg_a = sfa.n - sfa.m;

  for (std::uint32_t mask = 0; mask < (1u << units.size()); ++mask) {
    std::size_t deg = 0;
    bool original = true;
    for (std::size_t i = 0; i < units.size(); ++i) {
      const bool to_a = mask & (1u << i);
      if (to_a) deg += units[i].degree;
      if (to_a != (units[i].owner == 0)) original = false;
    }
    if (deg != deg_a || original) continue;

    Poly new_fa{fa[sfa.n]}, new_fb{fb[sfb.n]};
    for (std::size_t i = 0; i < units.size(); ++i) {
      Poly& dst = (mask & (1u << i)) ? new_fa : new_fb;
      dst = poly_mul(dst, units[i].factor);
    }
    new_fa.insert(new_fa.begin(), sfa.m, 0.0);
    new_fb.insert(new_fb.begin(), sfb.m, 0.0);

    Poly new_ka, new_kb;
    if (!solve_companions(new_fa, new_fb, g, ka_op.shape(), kb_op.shape(), new_ka, new_kb)) continue;

    std::vector<double> target_a, target_b;
    const bool ok_a = series ? normalized_target(new_fa, new_ka, a.eq, target_a)
                             : normalized_target(new_ka, new_fa, a.eq, target_a);
    const bool ok_b = series ? normalized_target(new_fb, new_kb, b.eq, target_b)
                             : normalized_target(new_kb, new_fb, b.eq, target_b);
    if (!ok_a || !ok_b) continue;

    std::vector<double> theta_a, theta_b;
    if (!invert_child(a, target_a, rng, theta_a) || !invert_child(b, target_b, rng, theta_b)) continue;
    std::vector<double> theta = base;
    std::copy(theta_a.begin(), theta_a.end(), theta.begin() + static_cast<std::ptrdiff_t>(a.offset));
    std::copy(theta_b.begin(), theta_b.end(), theta.begin() + static_cast<std::ptrdiff_t>(b.offset));
    out.push_back(std::move(theta));
    if (out.size() >= limit) return;
  }
}

void root_exchange_candidates(const NetworkExpr& e, std::size_t offset, const std::vector<double>& base,
                              std::size_t limit, std::mt19937_64& rng, std::vector<std::vector<double>>& out) {
  if (e.is_leaf() || out.size() >= limit) return;
  std::vector<ChildView> children;
  std::size_t at = offset;
  for (const auto& c : e.children()) {
    ChildView v{&c, at, constitutive(c), {}};
    v.theta.assign(base.begin() + static_cast<std::ptrdiff_t>(at),
                   base.begin() + static_cast<std::ptrdiff_t>(at + c.leaf_count()));
    children.push_back(std::move(v));
    root_exchange_candidates(c, at, base, limit, rng, out);
    at += c.leaf_count();
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    for (std::size_t j = i + 1; j < children.size(); ++j) {
      if (out.size() >= limit) return;
      exchange_pair(e.connection(), children[i], children[j], limit, rng, out, base);
    }
  }
}

double relative_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-300});
}

struct Candidate {
  std::vector<double> values;
  FiberMethod method;
  double residual;
  bool exact;
};

}  // namespace

FiberReport fiber_solutions(const NetworkExpr& expr, const ParamPoint& base, const FiberConfig& config) {
  const std::size_t n = expr.leaf_count();
  if (base.values.size() != n) throw std::invalid_argument("base point has wrong dimension");
  for (const auto& v : base.values) {
    if (v <= 0) throw std::invalid_argument("base point must be strictly positive");
  }

  const CoefficientJacobian cj(constitutive(expr));
  const std::vector<Rational> exact_target = cj.values(base.values);
  const std::vector<double> target = to_double(exact_target);
  const std::vector<double> base_d = to_double(base.values);

  FiberReport report;
  report.base = base;
  std::vector<Candidate> candidates;

  for (auto& theta : permutation_candidates(expr, base.values, config.max_solutions)) {
    ++report.permutation_candidates;
    if (cj.values(theta) != exact_target) continue;
    candidates.push_back({to_double(theta), FiberMethod::Permutation, 0.0, true});
  }

  std::mt19937_64 rng(config.seed);
  std::vector<std::vector<double>> exchanged;
  root_exchange_candidates(expr, 0, base_d, config.max_solutions, rng, exchanged);
  for (auto& theta : exchanged) {
    ++report.root_exchange_candidates;
    const double res = relative_residual(cj, theta, target);
    if (res <= config.tol) candidates.push_back({std::move(theta), FiberMethod::RootExchange, res, false});
  }

  std::uniform_real_distribution<double> spread(-1.0, 1.0);
  for (std::size_t s = 0; s < config.multistarts; ++s) {
    std::vector<double> start = base_d;
    for (double& v : start) v *= std::pow(10.0, spread(rng));
    ++report.starts_run;
    NewtonResult res = solve_for_target(cj, target, std::move(start), config.newton_iterations);
    if (!res.converged) continue;
    const double r = relative_residual(cj, res.theta, target);
    if (r > config.tol) continue;
    ++report.starts_converged;
    candidates.push_back({std::move(res.theta), FiberMethod::Multistart, r, false});
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.values < b.values; });

  report.solutions.push_back({base_d, {FiberMethod::Base}, 0.0, true});
  for (auto& c : candidates) {
    auto match = std::find_if(report.solutions.begin(), report.solutions.end(), [&](const FiberSolution& s) {
      return relative_distance(s.values, c.values) <= config.dedup_distance;
    });
    if (match != report.solutions.end()) {
      match->methods.insert(c.method);
      if (c.exact && !match->exact) {
        match->values = c.values;
        match->exact = true;
        match->residual = 0.0;
      }
      continue;
    }
    if (report.solutions.size() >= config.max_solutions) {
      report.truncated = true;
      continue;
    }
    report.solutions.push_back({std::move(c.values), {c.method}, c.residual, c.exact});
  }
  return report;
}

}  // namespace viscoid
