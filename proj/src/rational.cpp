#include "viscoid/rational.hpp"

#include <stdexcept>

namespace viscoid {

std::string to_string(const Rational& q) {
  return q.get_str();
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  std::size_t i = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_since_slash = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      digit_since_slash = true;
    } else if (c == '/' && !seen_slash && digit_since_slash) {
      seen_slash = true;
      digit_since_slash = false;
    } else {
      throw std::invalid_argument("malformed rational literal: " + std::string(text));
    }
  }
  if (!digit_since_slash) {
    throw std::invalid_argument("malformed rational literal: " + std::string(text));
  }
  std::string body(text.front() == '+' ? text.substr(1) : text);
  Rational q;
  if (q.set_str(body, 10) != 0) {
    throw std::invalid_argument("malformed rational literal: " + std::string(text));
  }
  if (seen_slash && q.get_den() == 0) {
    throw std::invalid_argument("zero denominator: " + std::string(text));
  }
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) {
  return q.get_d();
}

std::vector<double> to_double(const std::vector<Rational>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.get_d());
  return out;
}

Rational sample_parameter(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> grid(1, 1'000'000);
  Rational q(grid(rng), 1000);
  q.canonicalize();
  return q;
}

std::vector<Rational> sample_parameters(std::size_t count, std::mt19937_64& rng) {
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_parameter(rng));
  return out;
}

}  // namespace viscoid
