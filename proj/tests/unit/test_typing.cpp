#include <doctest.h>

#include "helpers.hpp"
#include "viscoid/typing.hpp"

using namespace viscoid;

namespace {

const char* const kDietrich = "((((((E1|n1)&E2)&n2)|n3)&E3)|n4)&E4";
const char* const kRoscoe = "((((E1&n1)|(E2&n2))&E3&n3)|(E4&n4))&E5&n5";
const char* const kGkv = "E0 & (E1|n1) & (E2|n2) & (E3|n3)";

Classification classify_text(const char* text) { return classify(constitutive(parse(text))); }

}  // namespace

TEST_CASE("classify: elements and small models") {
  CHECK(classify_text("E") == Classification{NetType::A, 0});
  CHECK(classify_text("n") == Classification{NetType::B, 0});
  CHECK(classify_text("E | n") == Classification{NetType::C, 0});
  CHECK(classify_text("E & n") == Classification{NetType::D, 1});
  CHECK(classify_text("(Ev | nv) & Em & nm") == Classification{NetType::D, 2});
}

TEST_CASE("table lookups") {
  CHECK(table_parallel(NetType::A, NetType::D) == NetType::A);
  CHECK(table_parallel(NetType::A, NetType::B) == NetType::C);
  CHECK(table_parallel(NetType::C, NetType::C) == NetType::U);
  CHECK(table_series(NetType::A, NetType::B) == NetType::D);
  CHECK(table_series(NetType::D, NetType::D) == NetType::U);
  CHECK(table_series(NetType::C, NetType::D) == NetType::D);
  CHECK(table_series(NetType::A, NetType::D) == NetType::U);
}

TEST_CASE("tables: full data") {
  // Rows and columns A B C D u.
  const char* parallel[5] = {"uCuAu", "CuuBu", "uuuCu", "ABCDu", "uuuuu"};
  const char* series[5] = {"uDAuu", "DuBuu", "ABCDu", "uuDuu", "uuuuu"};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(to_string(table_parallel(kAllTypes[i], kAllTypes[j])) == std::string(1, parallel[i][j]));
      CHECK(to_string(table_series(kAllTypes[i], kAllTypes[j])) == std::string(1, series[i][j]));
    }
  }
}

TEST_CASE("tables: absorption and symmetry") {
  for (NetType a : kAllTypes) {
    CHECK(table_parallel(NetType::U, a) == NetType::U);
    CHECK(table_series(a, NetType::U) == NetType::U);
    for (NetType b : kAllTypes) {
      CHECK(table_parallel(a, b) == table_parallel(b, a));
      CHECK(table_series(a, b) == table_series(b, a));
    }
  }
}

TEST_CASE("tables: associativity, so fold order cannot matter") {
  for (NetType a : kAllTypes) {
    for (NetType b : kAllTypes) {
      for (NetType c : kAllTypes) {
        CHECK(table_series(table_series(a, b), c) == table_series(a, table_series(b, c)));
        CHECK(table_parallel(table_parallel(a, b), c) == table_parallel(a, table_parallel(b, c)));
      }
    }
  }
}

TEST_CASE("type_of: reference networks") {
  CHECK(type_of(parse("E1 & n1")) == NetType::D);
  CHECK(type_of(parse("(Ev | nv) & Em & nm")) == NetType::D);
  CHECK(type_of(parse(kDietrich)) == NetType::D);
  CHECK(type_of(parse(kRoscoe)) == NetType::U);
  CHECK(type_of(parse(kGkv)) == NetType::A);
}

TEST_CASE("derive_type: traces") {
  const auto maxwell = derive_type(parse("E & n"));
  REQUIRE(maxwell.steps.size() == 1);
  CHECK(format_trace(maxwell.steps) == "E & n: A ⊙ B = D\n");

  // Burgers reduces as C ⊙ (A ⊙ B) = C ⊙ D = D.
  const auto burgers = derive_type(parse("(Ev | nv) & Em & nm"));
  REQUIRE(burgers.steps.size() == 3);
  CHECK(burgers.steps[0].result == NetType::C);
  CHECK(burgers.steps[1].left == NetType::A);
  CHECK(burgers.steps[1].right == NetType::B);
  CHECK(burgers.steps[1].result == NetType::D);
  CHECK(burgers.steps[2].left == NetType::C);
  CHECK(burgers.steps[2].right == NetType::D);
  CHECK(burgers.steps[2].result == NetType::D);

  // Roscoe: the collapse comes from D ⊙ D.
  const auto roscoe = derive_type(parse(kRoscoe));
  const auto first_u = std::find_if(roscoe.steps.begin(), roscoe.steps.end(),
                                    [](const TableStep& s) { return s.result == NetType::U; });
  REQUIRE(first_u != roscoe.steps.end());
  CHECK(first_u->op == Connection::Series);
  CHECK(first_u->left == NetType::D);
  CHECK(first_u->right == NetType::D);
  CHECK(roscoe.type == NetType::U);

  // Generalized Kelvin-Voigt: A ⊙ C ⊙ C ⊙ C = A.
  const auto gkv = derive_type(parse(kGkv));
  CHECK(gkv.steps.back().left == NetType::A);
  CHECK(gkv.steps.back().right == NetType::C);
  CHECK(gkv.steps.back().result == NetType::A);
}

TEST_CASE("predicted_shapes") {
  CHECK(predicted_shapes(NetType::A, 0) == std::pair{Shape{0, 0}, Shape{0, 0}});
  CHECK(predicted_shapes(NetType::B, 0) == std::pair{Shape{1, 1}, Shape{0, 0}});
  CHECK(predicted_shapes(NetType::C, 3) == std::pair{Shape{4, 0}, Shape{3, 0}});
  CHECK(predicted_shapes(NetType::D, 2) == std::pair{Shape{2, 1}, Shape{2, 0}});
  CHECK_THROWS(predicted_shapes(NetType::U, 1));
  CHECK_THROWS(predicted_shapes(NetType::D, 0));
}

TEST_CASE("format_tables layout") {
  const std::string t = format_tables();
  CHECK(t.find("(a) Parallel connection") != std::string::npos);
  CHECK(t.find("(b) Series connection") != std::string::npos);
  CHECK(t.find("D | A B C D u") != std::string::npos);
  CHECK(t.find("A | u D A u u") != std::string::npos);
}

TEST_CASE("property: table type agrees with classification") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto expr = random_network(seed, 1 + seed % 8);
    CAPTURE(render(expr));
    const NetType t = type_of(expr);
    const auto c = classify(constitutive(expr));
    if (t != NetType::U) CHECK(c.type == t);
    CHECK(type_of(testing::mirrored(expr)) == t);
  }
}
