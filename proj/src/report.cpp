#include "viscoid/report.hpp"

#include <random>
#include <sstream>

#include "viscoid/oracle.hpp"

namespace viscoid {

namespace {

Verdict as_verdict(const Report& r) {
  Verdict v;
  v.local = r.local;
  v.global = r.global;
  v.param_count = r.param_count;
  v.nonmonic_count = r.nonmonic_count;
  v.net_type = r.net_type;
  v.classification = {r.classified_type, r.index};
  v.eps_shape = r.eps_shape;
  v.sigma_shape = r.sigma_shape;
  v.constructible = r.constructible;
  v.trace = r.trace;
  return v;
}

const char* connection_name(Connection c) { return c == Connection::Series ? "series" : "parallel"; }

Connection connection_from_name(const std::string& s) {
  if (s == "series") return Connection::Series;
  if (s == "parallel") return Connection::Parallel;
  throw std::invalid_argument("unknown connection: " + s);
}

LocalVerdict local_from_string(const std::string& s) {
  if (s == "Identifiable") return LocalVerdict::Identifiable;
  if (s == "Unidentifiable") return LocalVerdict::Unidentifiable;
  throw std::invalid_argument("unknown local verdict: " + s);
}

GlobalVerdict global_from_string(const std::string& s) {
  if (s == "Global") return GlobalVerdict::Global;
  if (s == "LocalOnly") return GlobalVerdict::LocalOnly;
  if (s == "Unidentifiable") return GlobalVerdict::Unidentifiable;
  throw std::invalid_argument("unknown global verdict: " + s);
}

nlohmann::json shape_json(Shape s) { return nlohmann::json::array({s.n, s.m}); }

Shape shape_from_json(const nlohmann::json& j) { return {j.at(0).get<unsigned>(), j.at(1).get<unsigned>()}; }

}  // namespace

bool Report::consistent() const {
  if (!as_verdict(*this).consistent()) return false;
  return !oracle || oracle->agrees;
}

Report analyze(std::string_view text, const AnalyzeOptions& options) {
  const NetworkExpr expr = parse(text);
  const Verdict v = globally_identifiable(expr);
  const ConstitutiveEq eq = constitutive(expr);
  const auto names = param_names(expr);

  Report r;
  r.expression = std::string(text);
  r.canonical = render(expr);
  r.params = params(expr);
  r.net_type = v.net_type;
  r.classified_type = v.classification.type;
  r.index = v.classification.index;
  r.eps_shape = v.eps_shape;
  r.sigma_shape = v.sigma_shape;
  r.param_count = v.param_count;
  r.nonmonic_count = v.nonmonic_count;
  r.local = v.local;
  r.constructible = v.constructible;
  r.global = *v.global;
  r.trace = v.trace;
  r.equation_text = format_equation(eq, names, true);
  r.equation = to_json(eq, names);

  if (options.verify) {
    const LocalCheck check = verify_local(expr, options.trials, options.seed);
    OracleSummary o;
    o.seed = options.seed;
    o.trials = options.trials;
    o.ranks = check.ranks;
    o.resamples = check.resamples;
    o.agrees = check.agrees;
    if (check.counterexample) {
      for (const auto& x : check.counterexample->values) o.counterexample.push_back(to_string(x));
    }
    std::mt19937_64 seeds(options.seed ^ 0x5bd1e995ULL);
    for (std::size_t t = 0; t < options.trials; ++t) {
      o.svd_ranks.push_back(jacobian_rank_svd(expr, random_point(r.param_count, seeds())));
    }
    r.oracle = std::move(o);
  }
  return r;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["expression"] = r.expression;
  j["canonical"] = r.canonical;
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : r.params) {
    ps.push_back({{"name", p.name}, {"index", p.index}, {"kind", p.kind == ElementKind::Spring ? "spring" : "dashpot"}});
  }
  j["params"] = ps;
  j["net_type"] = to_string(r.net_type);
  j["classified_type"] = to_string(r.classified_type);
  j["index"] = r.index;
  j["eps_shape"] = shape_json(r.eps_shape);
  j["sigma_shape"] = shape_json(r.sigma_shape);
  j["param_count"] = r.param_count;
  j["nonmonic_count"] = r.nonmonic_count;
  j["local"] = to_string(r.local);
  j["constructible"] = r.constructible;
  j["global"] = to_string(r.global);
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& s : r.trace) {
    trace.push_back({{"op", connection_name(s.op)},
                     {"left", to_string(s.left)},
                     {"right", to_string(s.right)},
                     {"result", to_string(s.result)},
                     {"left_expr", s.left_expr},
                     {"right_expr", s.right_expr},
                     {"depth", s.depth}});
  }
  j["trace"] = trace;
  j["equation_text"] = r.equation_text;
  j["equation"] = r.equation;
  if (r.oracle) {
    const auto& o = *r.oracle;
    j["oracle"] = {{"seed", o.seed},         {"trials", o.trials},   {"ranks", o.ranks},
                   {"svd_ranks", o.svd_ranks}, {"resamples", o.resamples}, {"agrees", o.agrees},
                   {"counterexample", o.counterexample}};
  } else {
    j["oracle"] = nullptr;
  }
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.expression = j.at("expression").get<std::string>();
  r.canonical = j.at("canonical").get<std::string>();
  for (const auto& p : j.at("params")) {
    const std::string kind = p.at("kind").get<std::string>();
    if (kind != "spring" && kind != "dashpot") throw std::invalid_argument("unknown element kind: " + kind);
    r.params.push_back({p.at("name").get<std::string>(), p.at("index").get<std::size_t>(),
                        kind == "spring" ? ElementKind::Spring : ElementKind::Dashpot});
  }
  r.net_type = net_type_from_string(j.at("net_type").get<std::string>());
  r.classified_type = net_type_from_string(j.at("classified_type").get<std::string>());
  r.index = j.at("index").get<unsigned>();
  r.eps_shape = shape_from_json(j.at("eps_shape"));
  r.sigma_shape = shape_from_json(j.at("sigma_shape"));
  r.param_count = j.at("param_count").get<std::size_t>();
  r.nonmonic_count = j.at("nonmonic_count").get<std::size_t>();
  r.local = local_from_string(j.at("local").get<std::string>());
  r.constructible = j.at("constructible").get<bool>();
  r.global = global_from_string(j.at("global").get<std::string>());
  for (const auto& s : j.at("trace")) {
    r.trace.push_back({connection_from_name(s.at("op").get<std::string>()),
                       net_type_from_string(s.at("left").get<std::string>()),
                       net_type_from_string(s.at("right").get<std::string>()),
                       net_type_from_string(s.at("result").get<std::string>()), s.at("left_expr").get<std::string>(),
                       s.at("right_expr").get<std::string>(), s.at("depth").get<unsigned>()});
  }
  r.equation_text = j.at("equation_text").get<std::string>();
  r.equation = j.at("equation");
  if (!j.at("oracle").is_null()) {
    const auto& o = j.at("oracle");
    OracleSummary s;
    s.seed = o.at("seed").get<std::uint64_t>();
    s.trials = o.at("trials").get<std::size_t>();
    s.ranks = o.at("ranks").get<std::vector<std::size_t>>();
    s.svd_ranks = o.at("svd_ranks").get<std::vector<std::size_t>>();
    s.resamples = o.at("resamples").get<std::size_t>();
    s.agrees = o.at("agrees").get<bool>();
    s.counterexample = o.at("counterexample").get<std::vector<std::string>>();
    r.oracle = std::move(s);
  }
  return r;
}

std::string format_report(const Report& r) {
  std::ostringstream out;
  out << "network:       " << r.canonical << '\n';
  out << "parameters:    ";
  for (std::size_t i = 0; i < r.params.size(); ++i) out << (i ? ", " : "") << r.params[i].name;
  out << '\n';
  out << "equation:      " << r.equation_text << '\n';
  out << "shapes:        eps " << to_string(r.eps_shape) << ", sigma " << to_string(r.sigma_shape) << '\n';
  out << "type:          " << to_string(r.net_type);
  if (r.net_type != NetType::U) out << " (n = " << r.index << ")";
  out << '\n';
  out << "derivation:\n";
  std::istringstream trace(format_trace(r.trace));
  for (std::string line; std::getline(trace, line);) out << "  " << line << '\n';
  if (r.trace.empty()) out << "  single element\n";
  out << "coefficients:  " << r.nonmonic_count << " non-monic for " << r.param_count << " parameters\n";
  out << "local:         " << to_string(r.local) << '\n';
  out << "constructible: " << (r.constructible ? "yes" : "no") << '\n';
  out << "global:        " << to_string(r.global) << '\n';
  if (r.oracle) {
    const auto& o = *r.oracle;
    out << "oracle:        " << (o.agrees ? "agrees" : "DISAGREES") << " (exact ranks";
    for (auto k : o.ranks) out << ' ' << k;
    out << "; svd ranks";
    for (auto k : o.svd_ranks) out << ' ' << k;
    out << "; " << o.trials << " trials, " << o.resamples << " resamples, seed " << o.seed << ")\n";
    if (!o.counterexample.empty()) {
      out << "counterexample:";
      for (const auto& x : o.counterexample) out << ' ' << x;
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace viscoid
