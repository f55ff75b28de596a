#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "viscoid/ident.hpp"
#include "viscoid/network.hpp"

namespace viscoid {

/// Result of checking the counting verdict against exact Jacobian ranks.
struct OracleSummary {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> svd_ranks;
  std::size_t resamples = 0;
  bool agrees = true;
  /// Parameter values (exact rationals as text) at a disagreeing point.
  std::vector<std::string> counterexample;

  friend bool operator==(const OracleSummary&, const OracleSummary&) = default;
};

struct Report {
  std::string expression;
  std::string canonical;
  std::vector<ParamId> params;
  NetType net_type = NetType::U;
  NetType classified_type = NetType::A;
  unsigned index = 0;
  Shape eps_shape;
  Shape sigma_shape;
  std::size_t param_count = 0;
  std::size_t nonmonic_count = 0;
  LocalVerdict local = LocalVerdict::Unidentifiable;
  bool constructible = false;
  GlobalVerdict global = GlobalVerdict::Unidentifiable;
  std::vector<TableStep> trace;
  std::string equation_text;
  nlohmann::json equation;
  std::optional<OracleSummary> oracle;

  /// Verdict invariants, plus oracle agreement when an oracle ran.
  bool consistent() const;

  friend bool operator==(const Report&, const Report&) = default;
};

struct AnalyzeOptions {
  bool verify = false;
  std::size_t trials = 3;
  std::uint64_t seed = 0;
};

/// Parses and analyzes one expression. Throws ParseError on bad input.
Report analyze(std::string_view text, const AnalyzeOptions& options = {});

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

/// Multi-line human-readable report.
std::string format_report(const Report& r);

}  // namespace viscoid
