#include <doctest.h>

#include "helpers.hpp"
#include "viscoid/ident.hpp"
#include "viscoid/oracle.hpp"

using namespace viscoid;
using testing::theta_by_name;

namespace {

const char* const kBurgers = "(Ev | nv) & Em & nm";
const char* const kDietrich = "((((((E1|n1)&E2)&n2)|n3)&E3)|n4)&E4";
const char* const kRoscoe = "((((E1&n1)|(E2&n2))&E3&n3)|(E4&n4))&E5&n5";
const char* const kGkv = "E0 & (E1|n1) & (E2|n2) & (E3|n3)";

/// Independent Jacobian of the Burgers map (Em, Em Ev/nv, Em/nm + Em/nv + Ev/nv, Em Ev/(nm nv))
/// in the parameter order (Ev, nv, Em, nm).
RationalMatrix burgers_jacobian(Rational Ev, Rational nv, Rational Em, Rational nm) {
  return RationalMatrix{
      {0, 0, 1, 0},
      {Em / nv, -Em * Ev / (nv * nv), Ev / nv, 0},
      {1 / nv, -(Em + Ev) / (nv * nv), 1 / nm + 1 / nv, -Em / (nm * nm)},
      {Em / (nm * nv), -Em * Ev / (nm * nv * nv), Ev / (nm * nv), -Em * Ev / (nm * nm * nv)},
  };
}

}  // namespace

TEST_CASE("random_point draws from the sampling grid") {
  const auto p = random_point(6, 42);
  CHECK(p.seed == 42);
  CHECK(p.values.size() == 6);
  for (const auto& v : p.values) {
    CHECK(v > 0);
    CHECK(v <= 1000);
    const Rational scaled = v * 1000;
    CHECK(scaled.get_den() == 1);
  }
  CHECK(random_point(6, 42).values == p.values);
}

TEST_CASE("jacobian: exact values match an independent derivation") {
  const auto expr = parse(kBurgers);
  const CoefficientJacobian cj(constitutive(expr));
  const std::vector<Rational> theta{3, 7, 2, 5};
  CHECK(cj.jacobian(theta) == burgers_jacobian(3, 7, 2, 5));
  CHECK(jacobian_rank(expr, {theta, 0}) == 4);

  const std::vector<double> x{3, 7, 2, 5};
  const auto jd = cj.jacobian(std::span<const double>(x));
  const auto je = burgers_jacobian(3, 7, 2, 5);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(jd[i * 4 + j] == doctest::Approx(to_double(je(i, j))));
  }
}

TEST_CASE("jacobian_rank examples") {
  const auto mm = parse("(E1 & n1) & (E2 & n2)");
  CHECK(jacobian_rank(mm, random_point(4, 1)) <= 2);
  CHECK(jacobian_rank(parse(kGkv), random_point(7, 9)) == 7);
  CHECK(jacobian_rank_svd(parse(kGkv), random_point(7, 9)) == 7);
  CHECK(jacobian_rank(parse("E"), {{Rational(3)}, 0}) == 1);
  CHECK_THROWS_AS(jacobian_rank(mm, random_point(3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(jacobian_rank(parse("E & n"), {{Rational(1), Rational(-1)}, 0}), std::invalid_argument);
}

TEST_CASE("verify_local examples") {
  const auto burgers = verify_local(parse(kBurgers), 5, 1);
  CHECK(burgers.agrees);
  CHECK(burgers.symbolic_identifiable);
  CHECK(burgers.ranks == std::vector<std::size_t>(5, 4));

  const auto roscoe = verify_local(parse(kRoscoe), 5, 2);
  CHECK(roscoe.agrees);
  CHECK_FALSE(roscoe.symbolic_identifiable);
  for (auto r : roscoe.ranks) CHECK(r < 10);

  const auto spring = verify_local(parse("E"), 1, 3);
  CHECK(spring.agrees);
  CHECK(spring.ranks == std::vector<std::size_t>{1});

  CHECK_THROWS(verify_local(parse("E"), 0, 3));
}

TEST_CASE("property: rank bounded by parameter and coefficient counts") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto expr = random_network(seed, 1 + seed % 7);
    const auto eq = constitutive(expr);
    const std::size_t r = jacobian_rank(expr, random_point(expr.leaf_count(), seed));
    CHECK(r <= std::min(expr.leaf_count(), nonmonic_count(eq)));
  }
}

TEST_CASE("check_coprimality") {
  const auto spring = constitutive(parse("E"));
  const auto dashpot = constitutive(parse("n"));
  CHECK(check_coprimality(spring, std::vector<Rational>{2}, dashpot, std::vector<Rational>{3}, Connection::Series));

  const auto maxwell = constitutive(parse("E & n"));
  const std::vector<Rational> t1{2, 3}, t2{5, 7};
  CHECK(check_coprimality(maxwell, t1, maxwell, t2, Connection::Series));
  // In series the Maxwell strain operators reduce to constants, so even
  // identical parameters leave nothing to collide. In parallel the stress
  // operators n x + E coincide and share their root.
  CHECK(check_coprimality(maxwell, t1, maxwell, t1, Connection::Series));
  CHECK_FALSE(check_coprimality(maxwell, t1, maxwell, t1, Connection::Parallel));
  CHECK(check_coprimality(maxwell, t1, maxwell, t2, Connection::Parallel));

  const auto voigt = constitutive(parse("E | n"));
  CHECK_FALSE(check_coprimality(voigt, t1, voigt, t1, Connection::Series));
  CHECK(check_coprimality(voigt, t1, voigt, t2, Connection::Series));
  // Different parameters can still collide: roots -E/n are equal for (2,3) and (4,6).
  CHECK_FALSE(check_coprimality(voigt, t1, voigt, std::vector<Rational>{4, 6}, Connection::Series));

  CHECK(coprime_generic(voigt, voigt, Connection::Series, 1));
  CHECK(coprime_generic(maxwell, maxwell, Connection::Parallel, 1));
}

TEST_CASE("fiber: generalized Kelvin-Voigt has the Voigt permutations") {
  const auto expr = parse(kGkv);
  const auto base = random_point(7, 4);
  const auto rep = fiber_solutions(expr, base, {});
  CHECK(rep.solutions.size() >= 6);
  CHECK(rep.solutions.front().methods.count(FiberMethod::Base) == 1);
  CHECK(rep.permutation_candidates == 5);
  std::size_t exact = 0;
  for (const auto& s : rep.solutions) {
    CHECK(s.residual <= 1e-8);
    exact += s.exact;
  }
  CHECK(exact >= 6);
  CHECK_FALSE(globally_identifiable(expr).global == GlobalVerdict::Global);
}

TEST_CASE("fiber: globally identifiable examples are singletons") {
  for (const char* text : {kBurgers, "E1 & n1", "E1 | n1", kDietrich, "E"}) {
    CAPTURE(text);
    const auto expr = parse(text);
    const auto rep = fiber_solutions(expr, random_point(expr.leaf_count(), 8), {});
    CHECK(rep.solutions.size() == 1);
    CHECK(rep.starts_run == 200);
    CHECK_FALSE(rep.truncated);
  }
}

TEST_CASE("fiber: truncation flag") {
  FiberConfig config;
  config.max_solutions = 3;
  const auto rep = fiber_solutions(parse(kGkv), random_point(7, 4), config);
  CHECK(rep.solutions.size() == 3);
  CHECK(rep.truncated);
}

TEST_CASE("fiber: root exchange finds Voigt swaps without permutation search") {
  // Two Voigt elements in series: exchanging the roots of E+nx between the
  // factors is the swap of the two branches.
  const auto expr = parse("(E1|n1) & (E2|n2)");
  const std::vector<Rational> base{2, 3, 5, 7};
  const auto rep = fiber_solutions(expr, {base, 0}, {});
  REQUIRE(rep.solutions.size() == 2);
  const auto& swapped = rep.solutions[1];
  CHECK(swapped.methods.count(FiberMethod::RootExchange) == 1);
  CHECK(swapped.values[0] == doctest::Approx(5.0));
  CHECK(swapped.values[1] == doctest::Approx(7.0));
}

TEST_CASE("property: fiber lower bound for identical siblings") {
  // k identical sibling branches give at least k! fiber points.
  const char* cases[] = {"(E1|n1) & (E2|n2) & (E3|n3)", "(E1&n1) | (E2&n2) | E3", "E0 | (E1 & n1) | (E2 & n2)"};
  const std::size_t expected[] = {6, 2, 2};
  for (std::size_t i = 0; i < 3; ++i) {
    CAPTURE(cases[i]);
    const auto expr = parse(cases[i]);
    const auto rep = fiber_solutions(expr, random_point(expr.leaf_count(), 21), {});
    CHECK(rep.solutions.size() >= expected[i]);
    CHECK_FALSE(globally_identifiable(expr).global == GlobalVerdict::Global);
  }
}

TEST_CASE("property: every reported fiber point reproduces the coefficients") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto expr = random_network(seed, 2 + seed % 5);
    if (type_of(expr) == NetType::U) continue;
    CAPTURE(render(expr));
    const auto base = random_point(expr.leaf_count(), seed);
    FiberConfig config;
    config.multistarts = 40;
    const auto rep = fiber_solutions(expr, base, config);
    const CoefficientJacobian cj(constitutive(expr));
    const auto target = to_double(cj.values(base.values));
    for (const auto& s : rep.solutions) {
      const auto c = cj.values(std::span<const double>(s.values));
      for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(std::abs(c[i] - target[i]) <= 1e-8 * (1 + std::abs(target[i])));
      }
    }
    if (globally_identifiable(expr).global == GlobalVerdict::Global) CHECK(rep.solutions.size() == 1);
  }
}
