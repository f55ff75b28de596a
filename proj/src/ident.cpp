#include "viscoid/ident.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace viscoid {

std::string to_string(LocalVerdict v) {
  return v == LocalVerdict::Identifiable ? "Identifiable" : "Unidentifiable";
}

std::string to_string(GlobalVerdict v) {
  switch (v) {
    case GlobalVerdict::Global: return "Global";
    case GlobalVerdict::LocalOnly: return "LocalOnly";
    case GlobalVerdict::Unidentifiable: return "Unidentifiable";
  }
  return "?";
}

bool Verdict::consistent() const {
  const bool by_count = param_count == nonmonic_count;
  const bool by_table = net_type != NetType::U;
  if (by_count != by_table) return false;
  if ((local == LocalVerdict::Identifiable) != by_count) return false;
  if (by_table && net_type != classification.type) return false;
  if (global && *global != GlobalVerdict::Unidentifiable && local != LocalVerdict::Identifiable) return false;
  return true;
}

std::size_t nonmonic_count(const ConstitutiveEq& eq) {
  const Shape se = eq.eps.shape();
  const Shape ss = eq.sigma.shape();
  return (se.n - se.m + 1) + (ss.n + 1) - 1;
}

Verdict local_identifiable(const NetworkExpr& expr) {
  Verdict v;
  const ConstitutiveEq eq = constitutive(expr);
  v.param_count = expr.leaf_count();
  v.nonmonic_count = nonmonic_count(eq);
  v.eps_shape = eq.eps.shape();
  v.sigma_shape = eq.sigma.shape();
  v.classification = classify(eq);
  v.local = v.param_count == v.nonmonic_count ? LocalVerdict::Identifiable : LocalVerdict::Unidentifiable;
  TypeDerivation d = derive_type(expr);
  v.net_type = d.type;
  v.trace = std::move(d.steps);
  return v;
}

bool constructible_one_at_a_time(const NetworkExpr& expr) {
  if (expr.is_leaf()) return true;
  const NetworkExpr* internal = nullptr;
  for (const auto& c : expr.children()) {
    if (c.is_leaf()) continue;
    if (internal) return false;
    internal = &c;
  }
  return internal == nullptr || constructible_one_at_a_time(*internal);
}

Verdict globally_identifiable(const NetworkExpr& expr) {
  Verdict v = local_identifiable(expr);
  v.constructible = constructible_one_at_a_time(expr);
  if (v.local != LocalVerdict::Identifiable) {
    v.global = GlobalVerdict::Unidentifiable;
  } else {
    v.global = v.constructible ? GlobalVerdict::Global : GlobalVerdict::LocalOnly;
  }
  return v;
}

Quadruple factorization_quadruple(Connection op, const ConstitutiveEq& first, const ConstitutiveEq& second) {
  if (op == Connection::Series) {
    return {{first.eps.shape(), first.sigma.shape(), second.eps.shape(), second.sigma.shape()}};
  }
  return {{first.sigma.shape(), first.eps.shape(), second.sigma.shape(), second.eps.shape()}};
}

namespace {

void check_operator(std::span<const Rational> coeffs, Shape s, const char* what) {
  if (s.n < s.m) throw std::invalid_argument(std::string(what) + " shape has n < m");
  if (coeffs.size() < s.n + 1) throw std::invalid_argument(std::string(what) + " coefficient vector is too short");
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if ((k < s.m || k > s.n) && coeffs[k] != 0) {
      throw std::invalid_argument(std::string(what) + " has a nonzero coefficient outside its shape");
    }
  }
}

std::vector<Rational> trimmed(std::span<const Rational> p) {
  std::size_t deg = p.size();
  while (deg > 0 && p[deg - 1] == 0) --deg;
  if (deg == 0) throw std::invalid_argument("zero polynomial");
  return {p.begin(), p.begin() + static_cast<std::ptrdiff_t>(deg)};
}

}  // namespace

GhMatrix gh_matrix(std::span<const Rational> l1, Shape s1, std::span<const Rational> l3, Shape s3, Shape s2,
                   Shape s4) {
  check_operator(l1, s1, "L1");
  check_operator(l3, s3, "L3");
  if (s2.n < s2.m || s4.n < s4.m) throw std::invalid_argument("L2/L4 shape has n < m");

  GhMatrix gh;
  gh.quadruple = {{s1, s2, s3, s4}};
  gh.l1.assign(l1.begin(), l1.begin() + s1.n + 1);
  gh.l3.assign(l3.begin(), l3.begin() + s3.n + 1);
  gh.top_degree = std::max(s1.n + s4.n, s2.n + s3.n);
  gh.bottom_degree = std::min(s1.m + s4.m, s2.m + s3.m);
  gh.l1_columns = s4.n - s4.m + 1;
  gh.l3_columns = s2.n - s2.m + 1;
  const std::size_t rows = gh.top_degree - gh.bottom_degree + 1;
  gh.matrix = RationalMatrix(rows, gh.l1_columns + gh.l3_columns);

  std::size_t col = 0;
  for (unsigned j = s4.n + 1; j-- > s4.m; ++col) {
    for (unsigned k = s1.m; k <= s1.n; ++k) gh.matrix(gh.top_degree - (k + j), col) = l1[k];
  }
  for (unsigned j = s2.n + 1; j-- > s2.m; ++col) {
    for (unsigned k = s3.m; k <= s3.n; ++k) gh.matrix(gh.top_degree - (k + j), col) = l3[k];
  }
  return gh;
}

GhMatrix gh_matrix(Connection op, const ConstitutiveEq& first, std::span<const Rational> theta1,
                   const ConstitutiveEq& second, std::span<const Rational> theta2) {
  const Quadruple q = factorization_quadruple(op, first, second);
  const bool series = op == Connection::Series;
  const auto l1 = eval_operator(series ? first.eps : first.sigma, theta1);
  const auto l3 = eval_operator(series ? second.eps : second.sigma, theta2);
  return gh_matrix(l1, q.shapes[0], l3, q.shapes[2], q.shapes[1], q.shapes[3]);
}

RationalMatrix sylvester(std::span<const Rational> p_in, std::span<const Rational> q_in) {
  const auto p = trimmed(p_in);
  const auto q = trimmed(q_in);
  const std::size_t dp = p.size() - 1;
  const std::size_t dq = q.size() - 1;
  RationalMatrix s(dp + dq, dp + dq);
  for (std::size_t i = 0; i < dq; ++i) {
    for (std::size_t k = 0; k <= dp; ++k) s(i + k, i) = p[dp - k];
  }
  for (std::size_t i = 0; i < dp; ++i) {
    for (std::size_t k = 0; k <= dq; ++k) s(i + k, dq + i) = q[dq - k];
  }
  return s;
}

Rational resultant(std::span<const Rational> p, std::span<const Rational> q) {
  return determinant(sylvester(p, q));
}

Rational SylvesterBlockForm::factored_determinant() const {
  return Rational(column_sign) * determinant(s_prime) * determinant(s) * determinant(s_double_prime);
}

SylvesterBlockForm sylvester_block_form(const GhMatrix& gh) {
  if (!gh.square()) throw std::invalid_argument("block form needs a square (G H) matrix");
  const auto& [s1, s2, s3, s4] = gh.quadruple.shapes;
  const std::size_t n = gh.matrix.rows();
  const unsigned hi1 = s1.n + s4.n, hi3 = s2.n + s3.n;
  const unsigned lo1 = s1.m + s4.m, lo3 = s2.m + s3.m;

  SylvesterBlockForm f;
  f.top = hi1 > hi3 ? hi1 - hi3 : hi3 - hi1;
  f.bottom = lo1 > lo3 ? lo1 - lo3 : lo3 - lo1;

  // Column index ranges of the two blocks, highest shift first.
  std::vector<std::size_t> l1_cols(gh.l1_columns), l3_cols(gh.l3_columns);
  for (std::size_t i = 0; i < gh.l1_columns; ++i) l1_cols[i] = i;
  for (std::size_t i = 0; i < gh.l3_columns; ++i) l3_cols[i] = gh.l1_columns + i;

  auto& top_src = hi1 > hi3 ? l1_cols : l3_cols;
  auto& bottom_src = lo1 < lo3 ? l1_cols : l3_cols;
  if (f.top + (&top_src == &bottom_src ? f.bottom : 0) > top_src.size() || f.bottom > bottom_src.size()) {
    f.structure_ok = false;
    f.reordered = gh.matrix;
    f.column_order.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.column_order[i] = i;
    return f;
  }
  std::vector<std::size_t> top_cols(top_src.begin(), top_src.begin() + static_cast<std::ptrdiff_t>(f.top));
  top_src.erase(top_src.begin(), top_src.begin() + static_cast<std::ptrdiff_t>(f.top));
  std::vector<std::size_t> bottom_cols(bottom_src.end() - static_cast<std::ptrdiff_t>(f.bottom), bottom_src.end());
  bottom_src.erase(bottom_src.end() - static_cast<std::ptrdiff_t>(f.bottom), bottom_src.end());

  f.column_order = top_cols;
  f.column_order.insert(f.column_order.end(), l1_cols.begin(), l1_cols.end());
  f.column_order.insert(f.column_order.end(), l3_cols.begin(), l3_cols.end());
  f.column_order.insert(f.column_order.end(), bottom_cols.begin(), bottom_cols.end());
  f.column_sign = permutation_sign(f.column_order);
  f.reordered = gh.matrix.with_columns(f.column_order);

  const std::size_t mid = n - f.top - f.bottom;
  f.s_prime = f.reordered.block(0, 0, f.top, f.top);
  f.s = f.reordered.block(f.top, f.top, mid, mid);
  f.s_double_prime = f.reordered.block(n - f.bottom, n - f.bottom, f.bottom, f.bottom);

  bool ok = true;
  for (std::size_t r = 0; r < f.top; ++r) {
    for (std::size_t c = f.top; c < n; ++c) ok = ok && f.reordered(r, c) == 0;
  }
  for (std::size_t r = n - f.bottom; r < n; ++r) {
    for (std::size_t c = 0; c < n - f.bottom; ++c) ok = ok && f.reordered(r, c) == 0;
  }
  // Middle block against the Sylvester matrix of the x-free parts.
  const std::vector<Rational> p(gh.l1.begin() + s1.m, gh.l1.end());
  const std::vector<Rational> q(gh.l3.begin() + s3.m, gh.l3.end());
  if (p.back() == 0 || q.back() == 0 || p.front() == 0 || q.front() == 0) {
    ok = false;
  } else {
    ok = ok && l1_cols.size() == s3.n - s3.m && l3_cols.size() == s1.n - s1.m && f.s == sylvester(p, q);
  }
  f.structure_ok = ok;
  return f;
}

bool good_quadruple(const Quadruple& q, std::size_t samples, std::uint64_t seed) {
  const auto& [s1, s2, s3, s4] = q.shapes;
  const std::size_t rows = std::max(s1.n + s4.n, s2.n + s3.n) - std::min(s1.m + s4.m, s2.m + s3.m) + 1;
  const std::size_t cols = (s2.n - s2.m + 1) + (s4.n - s4.m + 1);
  if (rows != cols) return false;

  std::mt19937_64 rng(seed);
  const auto monic = [&](Shape s) {
    std::vector<Rational> c(s.n + 1, 0);
    for (unsigned k = s.m; k < s.n; ++k) c[k] = sample_parameter(rng);
    c[s.n] = 1;
    return c;
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const auto l1 = monic(s1);
    const auto l3 = monic(s3);
    if (determinant(gh_matrix(l1, s1, l3, s3, s2, s4).matrix) != 0) return true;
  }
  return false;
}

}  // namespace viscoid
