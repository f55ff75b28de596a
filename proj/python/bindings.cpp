#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "viscoid/oracle.hpp"
#include "viscoid/report.hpp"

namespace py = pybind11;
using namespace viscoid;

namespace {

std::vector<Rational> rationals(const std::vector<std::string>& text) {
  std::vector<Rational> out;
  out.reserve(text.size());
  for (const auto& t : text) out.push_back(parse_rational(t));
  return out;
}

std::vector<std::string> strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::string derive_json(const std::string& text) {
  const NetworkExpr expr = parse(text);
  const ConstitutiveEq eq = constitutive(expr);
  const auto names = param_names(expr);
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& e : coefficient_map(eq)) {
    coeffs.push_back({{"side", e.side == Side::Strain ? "eps" : "sigma"},
                      {"order", e.order},
                      {"value", format_ratio(e.numerator, e.denominator, names)}});
  }
  return nlohmann::json{{"canonical", render(expr)},
                        {"params", names},
                        {"equation", to_json(eq, names)},
                        {"text", format_equation(eq, names, false)},
                        {"normalized", format_equation(eq, names, true)},
                        {"coefficients", coeffs}}
      .dump();
}

std::string fiber_json(const std::string& text, std::uint64_t seed, std::size_t starts,
                       const std::optional<std::vector<std::string>>& base_values) {
  const NetworkExpr expr = parse(text);
  ParamPoint base = random_point(expr.leaf_count(), seed);
  if (base_values) base.values = rationals(*base_values);
  FiberConfig config;
  config.multistarts = starts;
  config.seed = seed;
  const FiberReport rep = fiber_solutions(expr, base, config);
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& s : rep.solutions) {
    std::vector<std::string> methods;
    for (auto m : s.methods) methods.push_back(to_string(m));
    sols.push_back({{"values", s.values}, {"methods", methods}, {"residual", s.residual}, {"exact", s.exact}});
  }
  return nlohmann::json{{"base", strings(base.values)},
                        {"solutions", sols},
                        {"truncated", rep.truncated},
                        {"starts_run", rep.starts_run},
                        {"starts_converged", rep.starts_converged}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structural identifiability of spring-dashpot networks (native core)";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("canonical", [](const std::string& text) { return render(parse(text)); },
        "Canonical text of a network expression");
  m.def("param_names", [](const std::string& text) { return param_names(parse(text)); });
  m.def("structure_key", [](const std::string& text) { return structure_key(parse(text)); });
  m.def("type_of", [](const std::string& text) { return to_string(type_of(parse(text))); });
  m.def("random_network", [](std::uint64_t seed, std::size_t n) { return render(random_network(seed, n)); },
        py::arg("seed"), py::arg("n_elements"));

  m.def("derive_json", &derive_json, "Constitutive equation and normalized coefficients as JSON");
  m.def(
      "analyze_json",
      [](const std::string& text, bool verify, std::size_t trials, std::uint64_t seed) {
        return to_json(analyze(text, {verify, trials, seed})).dump();
      },
      py::arg("text"), py::arg("verify") = false, py::arg("trials") = 3, py::arg("seed") = 0);
  m.def(
      "report_roundtrip",
      [](const std::string& json_text) { return to_json(report_from_json(nlohmann::json::parse(json_text))).dump(); },
      "Parses a report and serializes it again");
  m.def("fiber_json", &fiber_json, py::arg("text"), py::arg("seed") = 0, py::arg("starts") = 200,
        py::arg("base") = py::none());

  m.def("tables", &format_tables);
  m.def("table_combine", [](const std::string& op, const std::string& a, const std::string& b) {
    if (op != "series" && op != "parallel") throw py::value_error("op must be 'series' or 'parallel'");
    const Connection c = op == "series" ? Connection::Series : Connection::Parallel;
    return to_string(table_combine(c, net_type_from_string(a), net_type_from_string(b)));
  });

  m.def(
      "resultant",
      [](const std::vector<std::string>& p, const std::vector<std::string>& q) {
        return to_string(resultant(rationals(p), rationals(q)));
      },
      "Resultant of two polynomials given by ascending coefficients");
  m.def(
      "jacobian_rank",
      [](const std::string& text, const std::vector<std::string>& values) {
        return jacobian_rank(parse(text), ParamPoint{rationals(values), 0});
      },
      "Exact rank of the coefficient-map Jacobian at a parameter point");
}
