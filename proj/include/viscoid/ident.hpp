#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "viscoid/constitutive.hpp"
#include "viscoid/matrix.hpp"
#include "viscoid/network.hpp"
#include "viscoid/typing.hpp"

namespace viscoid {

enum class LocalVerdict { Identifiable, Unidentifiable };
enum class GlobalVerdict { Global, LocalOnly, Unidentifiable };

std::string to_string(LocalVerdict v);
std::string to_string(GlobalVerdict v);

/// Structural identifiability of one network.
///
/// `local` comes from coefficient counting; `net_type` comes independently
/// from the identifiability tables. The two must agree (see consistent()).
/// `global` is only filled in by globally_identifiable().
struct Verdict {
  LocalVerdict local = LocalVerdict::Unidentifiable;
  std::optional<GlobalVerdict> global;
  std::size_t param_count = 0;
  std::size_t nonmonic_count = 0;
  NetType net_type = NetType::U;
  Classification classification{NetType::A, 0};
  Shape eps_shape;
  Shape sigma_shape;
  bool constructible = false;
  std::vector<TableStep> trace;

  bool consistent() const;
};

/// Coefficient slots of the normalized equation minus the monic pivot:
/// (n_eps - m_eps + 1) + (n_sigma + 1) - 1.
std::size_t nonmonic_count(const ConstitutiveEq& eq);

Verdict local_identifiable(const NetworkExpr& expr);

/// True iff the network can be grown from a single element by attaching
/// one spring or dashpot at a time at the terminals. On the flattened tree
/// that means every internal node has at most one internal child.
bool constructible_one_at_a_time(const NetworkExpr& expr);

Verdict globally_identifiable(const NetworkExpr& expr);

// Shape factorization ---------------------------------------------------------

/// Shapes of (L1, L2, L3, L4) in f = L1 L3, g = L1 L4 + L2 L3.
struct Quadruple {
  std::array<Shape, 4> shapes;

  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// Series: (eps1, sigma1, eps2, sigma2). Parallel swaps the roles of the
/// strain and stress operators: (sigma1, eps1, sigma2, eps2).
Quadruple factorization_quadruple(Connection op, const ConstitutiveEq& first, const ConstitutiveEq& second);

/// Linear system for the coefficients of (L4, L2) given L1 and L3.
///
/// Rows run over monomial degrees from top_degree down to bottom_degree.
/// The first l1_columns columns are shifted copies of L1 (they multiply
/// [L4]); the remaining l3_columns are shifted copies of L3 (they multiply
/// [L2]).
struct GhMatrix {
  RationalMatrix matrix;
  std::size_t l1_columns = 0;
  std::size_t l3_columns = 0;
  unsigned top_degree = 0;
  unsigned bottom_degree = 0;
  Quadruple quadruple;
  std::vector<Rational> l1;
  std::vector<Rational> l3;

  bool square() const { return matrix.square(); }
};

/// Coefficient vectors are indexed by order (entry k multiplies x^k).
/// Throws std::invalid_argument on inconsistent shapes or vector lengths.
GhMatrix gh_matrix(std::span<const Rational> l1, Shape shape1, std::span<const Rational> l3, Shape shape3,
                   Shape shape2, Shape shape4);

/// (G H) for combining two evaluated equations with the given connection.
GhMatrix gh_matrix(Connection op, const ConstitutiveEq& first, std::span<const Rational> theta1,
                   const ConstitutiveEq& second, std::span<const Rational> theta2);

/// Sylvester matrix of p and q (coefficients indexed by power): deg q
/// shifted copies of p's coefficients as columns, then deg p copies of q's,
/// highest power in the top row.
RationalMatrix sylvester(std::span<const Rational> p, std::span<const Rational> q);

/// det(sylvester(p, q)). Zero iff p and q share a root. A constant argument
/// c gives c^deg(other); two constants give 1.
Rational resultant(std::span<const Rational> p, std::span<const Rational> q);

/// Column reordering of a square (G H) into
///
///   ( S'  0  0  )
///   ( X   S  Y  )
///   ( 0   0  S'')
///
/// with S the Sylvester matrix of L1 / x^m1 and L3 / x^m3, S' lower
/// triangular (leading coefficients) and S'' upper triangular (trailing
/// coefficients).
struct SylvesterBlockForm {
  std::vector<std::size_t> column_order;
  int column_sign = 1;
  RationalMatrix reordered;
  std::size_t top = 0;
  std::size_t bottom = 0;
  RationalMatrix s_prime;
  RationalMatrix s;
  RationalMatrix s_double_prime;
  /// Zero blocks are zero and the middle block equals the Sylvester matrix.
  bool structure_ok = false;

  /// column_sign * det(S') * det(S) * det(S'').
  Rational factored_determinant() const;
};

/// Throws std::invalid_argument if gh is not square.
SylvesterBlockForm sylvester_block_form(const GhMatrix& gh);

/// False if (G H) is not square; otherwise true iff its determinant is
/// nonzero for at least one of `samples` random monic L1, L3 of the given
/// shapes.
bool good_quadruple(const Quadruple& q, std::size_t samples, std::uint64_t seed);

}  // namespace viscoid
