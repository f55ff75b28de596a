#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace viscoid {

enum class ElementKind { Spring, Dashpot };

/// How the children of an internal node are connected. Series connections
/// share stress and add strains; parallel connections share strain and add
/// stresses.
enum class Connection { Series, Parallel };

struct Element {
  ElementKind kind;
  std::string name;

  friend bool operator==(const Element&, const Element&) = default;
};

/// Kind implied by an identifier: "E..." and "k..." are springs, "n..." and
/// "eta..." are dashpots. Returns nullopt for anything else.
std::optional<ElementKind> kind_from_name(std::string_view name);

/// Series/parallel tree over spring and dashpot leaves.
///
/// Internal nodes are n-ary. After flatten() no series node has a series
/// child and no parallel node has a parallel child; the parser always
/// returns flattened trees.
class NetworkExpr {
 public:
  static NetworkExpr leaf(Element element);
  static NetworkExpr spring(std::string name);
  static NetworkExpr dashpot(std::string name);
  static NetworkExpr series(std::vector<NetworkExpr> children);
  static NetworkExpr parallel(std::vector<NetworkExpr> children);
  static NetworkExpr node(Connection connection, std::vector<NetworkExpr> children);

  bool is_leaf() const { return element_.has_value(); }
  const Element& element() const;
  Connection connection() const;
  const std::vector<NetworkExpr>& children() const { return children_; }

  std::size_t leaf_count() const;
  std::size_t internal_child_count() const;

  friend bool operator==(const NetworkExpr&, const NetworkExpr&) = default;

 private:
  NetworkExpr() = default;

  std::optional<Element> element_;
  Connection connection_ = Connection::Series;
  std::vector<NetworkExpr> children_;
};

/// A parameter of the network together with its position in the canonical
/// (depth-first, left-to-right) ordering.
struct ParamId {
  std::string name;
  std::size_t index;
  ElementKind kind;

  friend bool operator==(const ParamId&, const ParamId&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar (whitespace insignificant, '&' binds tighter than '|'):
///
///   expr    := term { "|" term }
///   term    := factor { "&" factor }
///   factor  := identifier | "(" expr ")"
NetworkExpr parse(std::string_view text);

NetworkExpr flatten(const NetworkExpr& expr);

std::vector<ParamId> params(const NetworkExpr& expr);
std::vector<std::string> param_names(const NetworkExpr& expr);

/// Canonical text with the fewest parentheses that still reparses to expr.
std::string render(const NetworkExpr& expr);

/// Name-independent structural key. Two subtrees with equal keys are
/// isomorphic up to reordering of children.
std::string structure_key(const NetworkExpr& expr);

/// Deterministic random flattened network with exactly n_elements leaves.
/// Springs are named E1, E2, ... and dashpots n1, n2, ... in leaf order.
NetworkExpr random_network(std::uint64_t seed, std::size_t n_elements);

}  // namespace viscoid
