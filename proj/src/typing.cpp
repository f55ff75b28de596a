#include "viscoid/typing.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace viscoid {

namespace {

constexpr NetType A = NetType::A;
constexpr NetType B = NetType::B;
constexpr NetType C = NetType::C;
constexpr NetType D = NetType::D;
constexpr NetType u = NetType::U;

using Table = std::array<std::array<NetType, 5>, 5>;

// Rows and columns in the order A, B, C, D, u.
constexpr Table kParallel = {{
    {u, C, u, A, u},
    {C, u, u, B, u},
    {u, u, u, C, u},
    {A, B, C, D, u},
    {u, u, u, u, u},
}};

constexpr Table kSeries = {{
    {u, D, A, u, u},
    {D, u, B, u, u},
    {A, B, C, D, u},
    {u, u, D, u, u},
    {u, u, u, u, u},
}};

std::size_t slot(NetType t) { return static_cast<std::size_t>(t); }

}  // namespace

std::string to_string(NetType t) {
  switch (t) {
    case NetType::A: return "A";
    case NetType::B: return "B";
    case NetType::C: return "C";
    case NetType::D: return "D";
    case NetType::U: return "u";
  }
  return "?";
}

NetType net_type_from_string(const std::string& s) {
  if (s == "A") return NetType::A;
  if (s == "B") return NetType::B;
  if (s == "C") return NetType::C;
  if (s == "D") return NetType::D;
  if (s == "u" || s == "U") return NetType::U;
  throw std::invalid_argument("unknown network type '" + s + "'");
}

Classification classify(const ConstitutiveEq& eq) {
  const Shape se = eq.eps.shape();
  const Shape ss = eq.sigma.shape();
  if (ss.m != 0) throw std::logic_error("stress operator has no constant term: shape " + to_string(ss));
  const unsigned n = ss.n;
  if (se == Shape{n, 0}) return {NetType::A, n};
  if (se == Shape{n + 1, 1}) return {NetType::B, n};
  if (se == Shape{n + 1, 0}) return {NetType::C, n};
  if (n >= 1 && se == Shape{n, 1}) return {NetType::D, n};
  throw std::logic_error("strain shape " + to_string(se) + " with stress shape " + to_string(ss) +
                         " matches no network type");
}

NetType table_parallel(NetType a, NetType b) { return kParallel[slot(a)][slot(b)]; }
NetType table_series(NetType a, NetType b) { return kSeries[slot(a)][slot(b)]; }

NetType table_combine(Connection connection, NetType a, NetType b) {
  return connection == Connection::Series ? table_series(a, b) : table_parallel(a, b);
}

namespace {

NetType reduce(const NetworkExpr& e, unsigned depth, std::vector<TableStep>& steps) {
  if (e.is_leaf()) return e.element().kind == ElementKind::Spring ? NetType::A : NetType::B;

  const auto& children = e.children();
  std::vector<NetType> types;
  types.reserve(children.size());
  for (const auto& c : children) types.push_back(reduce(c, depth + 1, steps));

  const char* sep = e.connection() == Connection::Series ? " & " : " | ";
  const auto text_of = [&](std::size_t i) {
    std::string s = render(children[i]);
    return children[i].is_leaf() ? s : "(" + s + ")";
  };

  NetType acc = types.back();
  std::string acc_text = text_of(children.size() - 1);
  for (std::size_t i = children.size() - 1; i-- > 0;) {
    const NetType result = table_combine(e.connection(), types[i], acc);
    std::string left_text = text_of(i);
    steps.push_back({e.connection(), types[i], acc, result, left_text, acc_text, depth});
    acc = result;
    acc_text = left_text + sep + acc_text;
  }
  return acc;
}

}  // namespace

TypeDerivation derive_type(const NetworkExpr& expr) {
  TypeDerivation d;
  d.type = reduce(expr, 0, d.steps);
  return d;
}

NetType type_of(const NetworkExpr& expr) {
  std::vector<TableStep> ignored;
  return reduce(expr, 0, ignored);
}

std::string format_trace(const std::vector<TableStep>& steps) {
  std::ostringstream out;
  for (const auto& s : steps) {
    const char* sep = s.op == Connection::Series ? " & " : " | ";
    const char* sym = s.op == Connection::Series ? " ⊙ " : " ⊕ ";
    out << std::string(2 * s.depth, ' ') << s.left_expr << sep << s.right_expr << ": " << to_string(s.left) << sym
        << to_string(s.right) << " = " << to_string(s.result) << '\n';
  }
  return out.str();
}

std::pair<Shape, Shape> predicted_shapes(NetType t, unsigned n) {
  const Shape sigma{n, 0};
  switch (t) {
    case NetType::A: return {Shape{n, 0}, sigma};
    case NetType::B: return {Shape{n + 1, 1}, sigma};
    case NetType::C: return {Shape{n + 1, 0}, sigma};
    case NetType::D:
      if (n == 0) throw std::invalid_argument("type D requires n >= 1");
      return {Shape{n, 1}, sigma};
    case NetType::U: break;
  }
  throw std::invalid_argument("unidentifiable networks have no predicted shape");
}

std::string format_tables() {
  std::ostringstream out;
  const auto emit = [&](const char* title, const char* sym, NetType (*op)(NetType, NetType)) {
    out << title << '\n' << sym << " | A B C D u\n" << "--+----------\n";
    for (NetType row : kAllTypes) {
      out << to_string(row) << " |";
      for (NetType col : kAllTypes) out << ' ' << to_string(op(row, col));
      out << '\n';
    }
  };
  emit("(a) Parallel connection", "⊕", table_parallel);
  out << '\n';
  emit("(b) Series connection", "⊙", table_series);
  return out.str();
}

}  // namespace viscoid
