#include "viscoid/network.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <unordered_map>

namespace viscoid {

std::optional<ElementKind> kind_from_name(std::string_view name) {
  if (name.starts_with("eta")) return ElementKind::Dashpot;
  if (name.starts_with("E") || name.starts_with("k")) return ElementKind::Spring;
  if (name.starts_with("n")) return ElementKind::Dashpot;
  return std::nullopt;
}

// NetworkExpr ---------------------------------------------------------------

NetworkExpr NetworkExpr::leaf(Element element) {
  NetworkExpr e;
  e.element_ = std::move(element);
  return e;
}

NetworkExpr NetworkExpr::spring(std::string name) {
  return leaf({ElementKind::Spring, std::move(name)});
}

NetworkExpr NetworkExpr::dashpot(std::string name) {
  return leaf({ElementKind::Dashpot, std::move(name)});
}

NetworkExpr NetworkExpr::node(Connection connection, std::vector<NetworkExpr> children) {
  if (children.size() < 2) {
    throw std::invalid_argument("internal network node needs at least two children");
  }
  NetworkExpr e;
  e.connection_ = connection;
  e.children_ = std::move(children);
  return e;
}

NetworkExpr NetworkExpr::series(std::vector<NetworkExpr> children) {
  return node(Connection::Series, std::move(children));
}

NetworkExpr NetworkExpr::parallel(std::vector<NetworkExpr> children) {
  return node(Connection::Parallel, std::move(children));
}

const Element& NetworkExpr::element() const {
  if (!element_) throw std::logic_error("element() called on an internal node");
  return *element_;
}

Connection NetworkExpr::connection() const {
  if (element_) throw std::logic_error("connection() called on a leaf");
  return connection_;
}

std::size_t NetworkExpr::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children_) n += c.leaf_count();
  return n;
}

std::size_t NetworkExpr::internal_child_count() const {
  return static_cast<std::size_t>(
      std::count_if(children_.begin(), children_.end(), [](const NetworkExpr& c) { return !c.is_leaf(); }));
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " (at position " + std::to_string(position) + ")"), position_(position) {}

// Parser ----------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NetworkExpr run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    NetworkExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  NetworkExpr expr() {
    std::vector<NetworkExpr> terms;
    terms.push_back(term());
    while (accept('|')) terms.push_back(term());
    return terms.size() == 1 ? std::move(terms.front()) : NetworkExpr::parallel(std::move(terms));
  }

  NetworkExpr term() {
    std::vector<NetworkExpr> factors;
    factors.push_back(factor());
    while (accept('&')) factors.push_back(factor());
    return factors.size() == 1 ? std::move(factors.front()) : NetworkExpr::series(std::move(factors));
  }

  NetworkExpr factor() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unexpected end of expression", pos_);
    if (accept('(')) {
      const std::size_t open = pos_ - 1;
      NetworkExpr inner = expr();
      if (!accept(')')) {
        throw ParseError("missing ')' for '(' at position " + std::to_string(open), pos_);
      }
      return inner;
    }
    return element();
  }

  NetworkExpr element() {
    const std::size_t start = pos_;
    const auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    const auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if (!is_ident_start(text_[pos_])) {
      throw ParseError(std::string("expected element name, found '") + text_[pos_] + "'", pos_);
    }
    while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    const auto kind = kind_from_name(name);
    if (!kind) {
      throw ParseError("element name '" + name + "' must start with E or k (spring) or n or eta (dashpot)", start);
    }
    if (const auto [it, inserted] = seen_.emplace(name, start); !inserted) {
      throw ParseError("duplicate parameter name '" + name + "'", start);
    }
    return NetworkExpr::leaf({*kind, std::move(name)});
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, std::size_t> seen_;
};

void collect_params(const NetworkExpr& e, std::vector<ParamId>& out) {
  if (e.is_leaf()) {
    out.push_back({e.element().name, out.size(), e.element().kind});
    return;
  }
  for (const auto& c : e.children()) collect_params(c, out);
}

void render_into(const NetworkExpr& e, std::string& out) {
  if (e.is_leaf()) {
    out += e.element().name;
    return;
  }
  const bool series = e.connection() == Connection::Series;
  const char* sep = series ? " & " : " | ";
  bool first = true;
  for (const auto& c : e.children()) {
    if (!first) out += sep;
    first = false;
    // Only a parallel group inside a series needs brackets: '&' binds tighter.
    const bool wrap = series && !c.is_leaf() && c.connection() == Connection::Parallel;
    if (wrap) out += '(';
    render_into(c, out);
    if (wrap) out += ')';
  }
}

}  // namespace

NetworkExpr parse(std::string_view text) {
  return flatten(Parser(text).run());
}

NetworkExpr flatten(const NetworkExpr& expr) {
  if (expr.is_leaf()) return expr;
  const Connection conn = expr.connection();
  std::vector<NetworkExpr> merged;
  for (const auto& child : expr.children()) {
    NetworkExpr flat = flatten(child);
    if (!flat.is_leaf() && flat.connection() == conn) {
      for (const auto& grandchild : flat.children()) merged.push_back(grandchild);
    } else {
      merged.push_back(std::move(flat));
    }
  }
  return NetworkExpr::node(conn, std::move(merged));
}

std::vector<ParamId> params(const NetworkExpr& expr) {
  std::vector<ParamId> out;
  collect_params(expr, out);
  return out;
}

std::vector<std::string> param_names(const NetworkExpr& expr) {
  std::vector<std::string> names;
  for (auto& p : params(expr)) names.push_back(std::move(p.name));
  return names;
}

std::string render(const NetworkExpr& expr) {
  std::string out;
  render_into(expr, out);
  return out;
}

std::string structure_key(const NetworkExpr& expr) {
  if (expr.is_leaf()) return expr.element().kind == ElementKind::Spring ? "A" : "B";
  std::vector<std::string> keys;
  for (const auto& c : expr.children()) keys.push_back(structure_key(c));
  std::sort(keys.begin(), keys.end());
  std::string out = expr.connection() == Connection::Series ? "S(" : "P(";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) out += ',';
    out += keys[i];
  }
  out += ')';
  return out;
}

namespace {

struct Generator {
  std::mt19937_64 rng;
  std::size_t springs = 0;
  std::size_t dashpots = 0;

  NetworkExpr make(std::size_t n) {
    if (n == 1) {
      if (std::bernoulli_distribution(0.5)(rng)) return NetworkExpr::spring("E" + std::to_string(++springs));
      return NetworkExpr::dashpot("n" + std::to_string(++dashpots));
    }
    const auto conn = std::bernoulli_distribution(0.5)(rng) ? Connection::Series : Connection::Parallel;
    const std::size_t left = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
    NetworkExpr lhs = make(left);
    NetworkExpr rhs = make(n - left);
    return NetworkExpr::node(conn, {std::move(lhs), std::move(rhs)});
  }
};

}  // namespace

NetworkExpr random_network(std::uint64_t seed, std::size_t n_elements) {
  if (n_elements == 0) throw std::invalid_argument("random_network needs at least one element");
  Generator gen{std::mt19937_64(seed)};
  return flatten(gen.make(n_elements));
}

}  // namespace viscoid
