#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace viscoid {

/// Exact rational number. All symbolic work in the library is done over Q.
using Rational = mpq_class;

/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);
std::vector<double> to_double(const std::vector<Rational>& values);

/// Draws a positive parameter value from the generic-sampling grid
/// {1, ..., 10^6} / 1000.
Rational sample_parameter(std::mt19937_64& rng);

std::vector<Rational> sample_parameters(std::size_t count, std::mt19937_64& rng);

}  // namespace viscoid
