#pragma once

#include <string>
#include <utility>
#include <vector>

#include "viscoid/constitutive.hpp"
#include "viscoid/network.hpp"

namespace viscoid {

/// Shape class of a constitutive equation. U marks an unidentifiable
/// combination in the identifiability tables and absorbs everything.
enum class NetType { A, B, C, D, U };

inline constexpr NetType kAllTypes[] = {NetType::A, NetType::B, NetType::C, NetType::D, NetType::U};

/// "A", "B", "C", "D" or "u".
std::string to_string(NetType t);
NetType net_type_from_string(const std::string& s);

struct Classification {
  NetType type;
  unsigned index;  // n: highest stress derivative

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Reads the type off the strain shape, with n the stress degree:
///   A: [n,0]  B: [n+1,1]  C: [n+1,0]  D: [n,1].
/// Never returns U. Throws std::logic_error if the shapes fit no row.
Classification classify(const ConstitutiveEq& eq);

NetType table_parallel(NetType a, NetType b);
NetType table_series(NetType a, NetType b);
NetType table_combine(Connection connection, NetType a, NetType b);

/// One application of an identifiability table while typing a network.
struct TableStep {
  Connection op;
  NetType left;
  NetType right;
  NetType result;
  std::string left_expr;
  std::string right_expr;
  unsigned depth;  // nesting depth of the node being reduced

  friend bool operator==(const TableStep&, const TableStep&) = default;
};

struct TypeDerivation {
  NetType type;
  std::vector<TableStep> steps;
};

/// Evaluates the tables bottom-up: springs are A, dashpots B. Children of
/// an n-ary node are folded from the right, so "X & E & n" is reduced as
/// X ⊙ (A ⊙ B).
TypeDerivation derive_type(const NetworkExpr& expr);
NetType type_of(const NetworkExpr& expr);

/// Renders a derivation as indented lines, e.g. "E & n: A ⊙ B = D".
std::string format_trace(const std::vector<TableStep>& steps);

/// Strain and stress shapes of a type-t equation with index n. Throws
/// std::invalid_argument for U or for type D with n = 0.
std::pair<Shape, Shape> predicted_shapes(NetType t, unsigned n);

/// Both tables as text, rows and columns A B C D u.
std::string format_tables();

}  // namespace viscoid
