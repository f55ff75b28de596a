#include <doctest.h>

#include "helpers.hpp"
#include "viscoid/typing.hpp"

using namespace viscoid;
using testing::coefficient_values;
using testing::random_fold;
using testing::theta_by_name;

namespace {

ParamPoly var(std::size_t n, std::size_t i) { return ParamPoly::variable(n, i); }
ParamPoly num(std::size_t n, long v) { return ParamPoly::constant(n, Rational(v)); }

DiffOperator op(std::size_t n, std::vector<ParamPoly> c) { return DiffOperator(n, std::move(c)); }

/// (eps, sigma) equal to (eps2, sigma2) up to one common scalar factor.
bool proportional(const ConstitutiveEq& a, const ConstitutiveEq& b) {
  if (a.eps.coeffs().size() != b.eps.coeffs().size() || a.sigma.coeffs().size() != b.sigma.coeffs().size()) {
    return false;
  }
  const ParamPoly& ra = a.sigma.coeffs().back();
  const ParamPoly& rb = b.sigma.coeffs().back();
  for (std::size_t k = 0; k < a.eps.coeffs().size(); ++k) {
    if (a.eps.coeffs()[k] * rb != b.eps.coeffs()[k] * ra) return false;
  }
  for (std::size_t k = 0; k < a.sigma.coeffs().size(); ++k) {
    if (a.sigma.coeffs()[k] * rb != b.sigma.coeffs()[k] * ra) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ParamPoly arithmetic") {
  const std::vector<std::string> names{"x", "y"};
  const auto x = var(2, 0), y = var(2, 1);
  const ParamPoly sq = (x + y) * (x + y);
  CHECK(sq.to_string(names) == "x^2 + 2*x*y + y^2");
  CHECK(sq.term_count() == 3);
  CHECK(sq.total_degree() == 2);
  CHECK(sq - sq == ParamPoly(2));
  CHECK((sq - sq).is_zero());
  CHECK((sq - sq).to_string(names) == "0");
  CHECK(sq.derivative(0) == x * num(2, 2) + y * num(2, 2));
  const std::vector<Rational> at{Rational(1, 2), Rational(3)};
  CHECK(sq.evaluate(at) == Rational(49, 4));
  CHECK(ParamPoly::parse("x^2 + 2*x*y + y^2", names) == sq);
  CHECK(ParamPoly::parse("-3/2*x*y^2 - y", names).to_string(names) == "-3/2*x*y^2 - y");
  CHECK_THROWS(x + var(3, 0));
  CHECK((x * y * y).monomial_content() == ParamPoly::Exponents{1, 2});
  CHECK((x * x * y + x * y * y).divided_by_monomial({1, 1}) == x + y);
}

TEST_CASE("DiffOperator shapes") {
  CHECK(to_string(op(1, {num(1, 0), var(1, 0), var(1, 0)}).shape()) == "[2,1]");
  CHECK(op(1, {var(1, 0), num(1, 0)}).shape() == Shape{0, 0});
  CHECK_THROWS(DiffOperator(1).shape());
  const DiffOperator d = op(1, {num(1, 0), num(1, 0), var(1, 0)});
  CHECK(d.divided_by_x_power(2) == op(1, {var(1, 0)}));
  CHECK_THROWS_AS(op(1, {num(1, 1), var(1, 0)}).divided_by_x_power(1), std::domain_error);
}

TEST_CASE("series: spring and dashpot give the Maxwell equation") {
  // E eps' eta = eta sigma' + E sigma, i.e. eps' = sigma'/E + sigma/eta.
  const auto eq = constitutive(parse("E & n"));
  const auto E = var(2, 0), n = var(2, 1);
  CHECK(eq.eps == op(2, {num(2, 0), E * n}));
  CHECK(eq.sigma == op(2, {E, n}));
  CHECK(eq.eps.shape() == Shape{1, 1});
  CHECK(eq.sigma.shape() == Shape{1, 0});
}

TEST_CASE("series: two Maxwell elements cancel one power of d/dt") {
  const auto eq = constitutive(parse("(E1 & n1) & (E2 & n2)"));
  const auto E1 = var(4, 0), n1 = var(4, 1), E2 = var(4, 2), n2 = var(4, 3);
  CHECK(eq.eps == op(4, {num(4, 0), E1 * n1 * E2 * n2}));
  CHECK(eq.sigma == op(4, {E1 * E2 * (n1 + n2), (E1 + E2) * n1 * n2}));
  CHECK(eq.eps.shape() == Shape{1, 1});
  CHECK(eq.sigma.shape() == Shape{1, 0});

  const auto lhs = constitutive(NetworkExpr::series({parse("E1 & n1"), parse("E2 & n2")}));
  CHECK(lhs == eq);
}

TEST_CASE("series: Voigt with Maxwell is the Burgers equation") {
  // Published form, multiplied through by nm*nv:
  //   Em nm nv eps'' + Em Ev nm eps' = nm nv sigma'' + (Em nv + Em nm + Ev nm) sigma' + Em Ev sigma
  const auto expr = parse("(Ev | nv) & Em & nm");
  const auto Ev = var(4, 0), nv = var(4, 1), Em = var(4, 2), nm = var(4, 3);
  const ConstitutiveEq published{op(4, {num(4, 0), Em * Ev * nm, Em * nm * nv}),
                             op(4, {Em * Ev, Em * nv + Em * nm + Ev * nm, nm * nv})};
  CHECK(proportional(constitutive(expr), published));
}

TEST_CASE("parallel: elementary cases") {
  const auto E = var(2, 0), n = var(2, 1);
  const auto voigt = constitutive(parse("E | n"));
  CHECK(voigt.eps == op(2, {E, n}));
  CHECK(voigt.sigma == op(2, {num(2, 1)}));

  const auto springs = constitutive(parse("E1 | E2"));
  CHECK(springs.eps == op(2, {var(2, 0) + var(2, 1)}));
  CHECK(springs.eps.shape() == Shape{0, 0});
  CHECK(coefficient_map(springs).size() == 1);

  const auto mm = constitutive(parse("(E1 & n1) | (E2 & n2)"));
  CHECK(mm.eps.shape() == Shape{2, 1});
  CHECK(mm.sigma.shape() == Shape{2, 0});
}

TEST_CASE("constitutive: base cases and Dietrich shapes") {
  const auto spring = constitutive(parse("E"));
  CHECK(spring.eps == op(1, {var(1, 0)}));
  CHECK(spring.sigma == op(1, {num(1, 1)}));
  CHECK(spring.eps.shape() == Shape{0, 0});
  CHECK(spring.sigma.shape() == Shape{0, 0});

  const auto d = constitutive(parse("((((((E1|n1)&E2)&n2)|n3)&E3)|n4)&E4"));
  const unsigned n = d.sigma.shape().n;
  CHECK(n >= 1);
  CHECK(d.eps.shape() == Shape{n, 1});
  CHECK(d.sigma.shape() == Shape{n, 0});
}

TEST_CASE("eval_operator") {
  const auto eq = constitutive(parse("E & n"));
  const std::vector<Rational> theta{2, 3};
  CHECK(eval_operator(eq.sigma, theta) == std::vector<Rational>{2, 3});
  CHECK(eval_operator(eq.eps, theta) == std::vector<Rational>{0, 6});
  CHECK_THROWS(eval_operator(eq.sigma, std::vector<Rational>{1}));

  // Burgers at (Em, Ev, nm, nv) = (2, 3, 5, 7); canonical order is Ev, nv, Em, nm.
  const auto expr = parse("(Ev | nv) & Em & nm");
  const auto burgers = constitutive(expr);
  const auto t = theta_by_name(expr, {{"Em", 2}, {"Ev", 3}, {"nm", 5}, {"nv", 7}});
  const auto sig = eval_operator(burgers.sigma, t);
  CHECK(sig[0] / sig[2] == Rational(6, 35));
}

TEST_CASE("coefficient_map: reference examples") {
  const auto spring = coefficient_map(constitutive(parse("E")));
  REQUIRE(spring.size() == 1);
  CHECK(spring[0].evaluate(std::vector<Rational>{Rational(7, 3)}) == Rational(7, 3));

  const std::vector<Rational> me{2, 5};
  CHECK(coefficient_values(constitutive(parse("E & n")), me) == std::vector<Rational>{2, Rational(2, 5)});

  // Burgers: (Em, Em Ev/nv, Em/nm + Em/nv + Ev/nv, Em Ev/(nm nv)) as exact rational functions.
  const auto map = coefficient_map(constitutive(parse("(Ev | nv) & Em & nm")));
  REQUIRE(map.size() == 4);
  const auto Ev = var(4, 0), nv = var(4, 1), Em = var(4, 2), nm = var(4, 3);
  const std::vector<std::pair<ParamPoly, ParamPoly>> expected{
      {Em, num(4, 1)}, {Em * Ev, nv}, {Em * nv + Em * nm + Ev * nm, nm * nv}, {Em * Ev, nm * nv}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(map[i].numerator * expected[i].second == expected[i].first * map[i].denominator);
  }
  CHECK(map[0].side == Side::Strain);
  CHECK(map[0].order == 2);
  CHECK(map[3].side == Side::Stress);
  CHECK(map[3].order == 0);
}

TEST_CASE("text and JSON forms") {
  const auto expr = parse("E | n");
  const auto names = param_names(expr);
  const auto eq = constitutive(expr);
  CHECK(format_equation(eq, names, false) == "E·ε + n·ε̇ = σ");
  const auto maxwell = parse("E & n");
  CHECK(format_equation(constitutive(maxwell), param_names(maxwell), true) == "E·ε̇ = E/n·σ + σ̇");

  const auto burgers = parse("(Ev | nv) & Em & nm");
  const auto bn = param_names(burgers);
  const auto beq = constitutive(burgers);
  const auto j = to_json(beq, bn);
  CHECK(j["eps"][0]["order"] == 1);
  CHECK(equation_from_json(j, bn) == beq);
  CHECK(equation_from_json(nlohmann::json::parse(j.dump()), bn) == beq);
}

TEST_CASE("property: fold order and child order do not change the coefficient map") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto expr = random_network(seed, 2 + seed % 7);
    CAPTURE(render(expr));
    const auto values = testing::random_values(expr, rng);
    const auto theta = theta_by_name(expr, values);
    const auto reference = coefficient_values(constitutive(expr), theta);
    const auto folded = random_fold(expr, 0, expr.leaf_count(), rng);
    CHECK(coefficient_values(folded, theta) == reference);
    CHECK(proportional(folded, constitutive(expr)));

    const auto mirror = testing::mirrored(expr);
    CHECK(coefficient_values(constitutive(mirror), theta_by_name(mirror, values)) == reference);
  }
}

TEST_CASE("property: shapes conform to the predicted table and are tight") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto expr = random_network(seed, 1 + seed % 8);
    CAPTURE(render(expr));
    const auto eq = constitutive(expr);
    const Shape se = eq.eps.shape(), ss = eq.sigma.shape();
    CHECK(ss.m == 0);
    for (unsigned k = se.m; k <= se.n; ++k) CHECK_FALSE(eq.eps.coeff(k).is_zero());
    for (unsigned k = 0; k <= ss.n; ++k) CHECK_FALSE(eq.sigma.coeff(k).is_zero());
    const NetType t = type_of(expr);
    if (t == NetType::U) continue;
    const auto [pe, ps] = predicted_shapes(t, ss.n);
    CHECK(pe == se);
    CHECK(ps == ss);
  }
}

TEST_CASE("property: series cancellation divides both sides by x^k") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto a = random_network(seed, 1 + seed % 4);
    const auto b = random_network(seed + 1000, 1 + (seed / 4) % 4);
    const std::size_t na = a.leaf_count(), nb = b.leaf_count(), total = na + nb;
    const auto e1 = constitutive(a).embedded(0, total);
    const auto e2 = constitutive(b).embedded(na, total);
    const DiffOperator f = e1.eps * e2.eps;
    const DiffOperator g = e1.eps * e2.sigma + e1.sigma * e2.eps;
    const auto cancelled = combine_series(e1, e2);
    const unsigned k = std::min(e1.eps.shape().m, e2.eps.shape().m);

    const auto theta = sample_parameters(total, rng);
    const Rational x = sample_parameter(rng);
    const auto at = [&](const DiffOperator& d) {
      Rational s = 0, p = 1;
      for (const auto& c : eval_operator(d, theta)) {
        s += c * p;
        p *= x;
      }
      return s;
    };
    Rational xk = 1;
    for (unsigned i = 0; i < k; ++i) xk *= x;
    CHECK(at(f) == at(cancelled.eps) * xk);
    CHECK(at(g) == at(cancelled.sigma) * xk);
  }
}
