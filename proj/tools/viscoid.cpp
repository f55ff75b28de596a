// viscoid: identifiability analysis of spring-dashpot networks.

#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "viscoid/oracle.hpp"
#include "viscoid/report.hpp"

using namespace viscoid;

namespace {

constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitInconsistent = 3;

struct Options {
  std::string expr;
  std::vector<std::string> exprs;
  bool json = false;
  bool verify = false;
  std::uint64_t seed = 0;
  std::size_t trials = 3;
  std::size_t starts = 200;
  std::size_t elements = 4;
  std::size_t count = 10;
};

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_analyze(const Options& o) {
  const Report r = analyze(o.expr, {o.verify, o.trials, o.seed});
  if (o.json) {
    print_json(to_json(r));
  } else {
    std::cout << format_report(r);
  }
  if (!r.consistent()) {
    std::cerr << "inconsistent verdict for " << r.canonical << ": symbolic and oracle results disagree\n";
    return kExitInconsistent;
  }
  return 0;
}

int cmd_derive(const Options& o) {
  const NetworkExpr expr = parse(o.expr);
  const ConstitutiveEq eq = constitutive(expr);
  const auto names = param_names(expr);
  const auto entries = coefficient_map(eq);

  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& e : entries) {
    coeffs.push_back({{"side", e.side == Side::Strain ? "eps" : "sigma"},
                      {"order", e.order},
                      {"value", format_ratio(e.numerator, e.denominator, names)}});
  }
  if (o.json) {
    print_json({{"expression", o.expr},
                {"canonical", render(expr)},
                {"params", names},
                {"equation", to_json(eq, names)},
                {"text", format_equation(eq, names, false)},
                {"normalized", format_equation(eq, names, true)},
                {"coefficients", coeffs}});
    return 0;
  }
  std::cout << format_equation(eq, names, false) << '\n';
  std::cout << "normalized: " << format_equation(eq, names, true) << '\n';
  std::cout << "coefficients:\n";
  for (const auto& c : coeffs) {
    std::cout << "  " << (c["side"] == "eps" ? "eps" : "sigma") << '[' << c["order"].get<unsigned>()
              << "]: " << c["value"].get<std::string>() << '\n';
  }
  std::cout << to_json(eq, names).dump() << '\n';
  return 0;
}

int cmd_fiber(const Options& o) {
  const NetworkExpr expr = parse(o.expr);
  const auto names = param_names(expr);
  const ParamPoint base = random_point(names.size(), o.seed);
  FiberConfig config;
  config.multistarts = o.starts;
  config.seed = o.seed;
  const FiberReport rep = fiber_solutions(expr, base, config);

  if (o.json) {
    nlohmann::json sols = nlohmann::json::array();
    for (const auto& s : rep.solutions) {
      std::vector<std::string> methods;
      for (auto m : s.methods) methods.push_back(to_string(m));
      sols.push_back({{"values", s.values}, {"methods", methods}, {"residual", s.residual}, {"exact", s.exact}});
    }
    std::vector<std::string> base_text;
    for (const auto& v : base.values) base_text.push_back(to_string(v));
    print_json({{"expression", o.expr},
                {"params", names},
                {"base", base_text},
                {"seed", o.seed},
                {"solutions", sols},
                {"truncated", rep.truncated},
                {"starts_run", rep.starts_run},
                {"starts_converged", rep.starts_converged}});
    return 0;
  }
  std::cout << "network:   " << render(expr) << '\n';
  std::cout << "params:   ";
  for (const auto& n : names) std::cout << ' ' << n;
  std::cout << "\nsolutions: " << rep.solutions.size() << (rep.truncated ? " (truncated)" : "") << '\n';
  for (std::size_t i = 0; i < rep.solutions.size(); ++i) {
    const auto& s = rep.solutions[i];
    std::cout << "  #" << i + 1 << " [";
    bool first = true;
    for (auto m : s.methods) {
      std::cout << (first ? "" : ",") << to_string(m);
      first = false;
    }
    std::cout << "] residual " << s.residual << ":";
    for (double v : s.values) std::cout << ' ' << v;
    std::cout << '\n';
  }
  std::cout << "multistart: " << rep.starts_converged << " of " << rep.starts_run << " starts converged\n";
  return 0;
}

int cmd_gen(const Options& o) {
  if (o.elements == 0) throw std::invalid_argument("--elements must be at least 1");
  std::mt19937_64 seeds(o.seed);
  nlohmann::json all = nlohmann::json::array();
  for (std::size_t i = 0; i < o.count; ++i) {
    const std::string text = render(random_network(seeds(), o.elements));
    const Report r = analyze(text);
    if (o.json) {
      all.push_back(to_json(r));
    } else {
      std::cout << text << "\t" << to_string(r.net_type) << "\t" << to_string(r.local) << "\t" << to_string(r.global)
                << '\n';
    }
  }
  if (o.json) print_json(all);
  return 0;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> corpus = o.exprs;
  if (corpus.empty()) {
    if (o.elements == 0) throw std::invalid_argument("--elements must be at least 1");
    std::mt19937_64 seeds(o.seed);
    for (std::size_t i = 0; i < o.count; ++i) {
      const std::size_t n = 1 + seeds() % o.elements;
      corpus.push_back(render(random_network(seeds(), n)));
    }
  }
  std::size_t bad = 0;
  nlohmann::json all = nlohmann::json::array();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Report r = analyze(corpus[i], {true, o.trials, o.seed + i});
    const bool ok = r.consistent();
    if (!ok) {
      ++bad;
      std::cerr << "disagreement: " << r.canonical << '\n';
    }
    if (o.json) {
      all.push_back(to_json(r));
    } else {
      std::cout << (ok ? "ok   " : "FAIL ") << r.canonical << "\t" << to_string(r.net_type) << "\t"
                << to_string(r.local) << '\n';
    }
  }
  if (o.json) print_json(all);
  std::cerr << corpus.size() - bad << " of " << corpus.size() << " networks consistent\n";
  return bad == 0 ? 0 : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural identifiability of spring-dashpot networks"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd = app.add_subcommand("analyze", "Type, verdicts and derivation for one network");
  analyze_cmd->add_option("expr", o.expr, "Network expression, e.g. \"(E1 | n1) & E2\"")->required();
  analyze_cmd->add_flag("--json", o.json, "Emit the report as JSON");
  analyze_cmd->add_flag("--verify", o.verify, "Check the verdict against exact Jacobian ranks");
  analyze_cmd->add_option("--seed", o.seed, "Sampling seed");
  analyze_cmd->add_option("--trials", o.trials, "Random points for --verify")->check(CLI::PositiveNumber);

  auto* derive_cmd = app.add_subcommand("derive", "Constitutive equation of a network");
  derive_cmd->add_option("expr", o.expr, "Network expression")->required();
  derive_cmd->add_flag("--json", o.json, "Emit JSON");

  app.add_subcommand("tables", "Print the identifiability tables");

  auto* fiber_cmd = app.add_subcommand("fiber", "Search for parameters with the same coefficients");
  fiber_cmd->add_option("expr", o.expr, "Network expression")->required();
  fiber_cmd->add_option("--seed", o.seed, "Seed for the base point and the starts");
  fiber_cmd->add_option("--starts", o.starts, "Multistart Newton runs");
  fiber_cmd->add_flag("--json", o.json, "Emit JSON");

  auto* gen_cmd = app.add_subcommand("gen", "Random networks with their verdicts");
  gen_cmd->add_option("--elements", o.elements, "Elements per network")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--count", o.count, "Number of networks");
  gen_cmd->add_option("--seed", o.seed, "Generator seed");
  gen_cmd->add_flag("--json", o.json, "Emit JSON reports");

  auto* verify_cmd = app.add_subcommand("verify", "Check verdicts against the oracle over a corpus");
  verify_cmd->add_option("exprs", o.exprs, "Expressions (default: random corpus)");
  verify_cmd->add_option("--elements", o.elements, "Largest random network")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--count", o.count, "Random networks to check");
  verify_cmd->add_option("--seed", o.seed, "Seed");
  verify_cmd->add_option("--trials", o.trials, "Random points per network")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--json", o.json, "Emit JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(o);
    if (*derive_cmd) return cmd_derive(o);
    if (*fiber_cmd) return cmd_fiber(o);
    if (*gen_cmd) return cmd_gen(o);
    if (*verify_cmd) return cmd_verify(o);
    std::cout << format_tables();
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
