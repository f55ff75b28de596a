#include "viscoid/param_poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace viscoid {

bool ParamPoly::GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

ParamPoly ParamPoly::constant(std::size_t num_vars, const Rational& value) {
  ParamPoly p(num_vars);
  p.add_term(Exponents(num_vars, 0), value);
  return p;
}

ParamPoly ParamPoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw std::out_of_range("variable index out of range");
  Exponents e(num_vars, 0);
  e[index] = 1;
  ParamPoly p(num_vars);
  p.add_term(e, Rational(1));
  return p;
}

ParamPoly ParamPoly::monomial(const Rational& coeff, Exponents exponents) {
  ParamPoly p(exponents.size());
  p.add_term(exponents, coeff);
  return p;
}

bool ParamPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
}

unsigned ParamPoly::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0u);
}

Rational ParamPoly::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

void ParamPoly::check_compatible(const ParamPoly& other) const {
  if (num_vars_ != other.num_vars_) {
    throw std::invalid_argument("ParamPoly variable count mismatch: " + std::to_string(num_vars_) + " vs " +
                                std::to_string(other.num_vars_));
  }
}

void ParamPoly::add_term(const Exponents& exponents, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

ParamPoly operator*(const ParamPoly& lhs, const ParamPoly& rhs) {
  lhs.check_compatible(rhs);
  ParamPoly out(lhs.num_vars_);
  ParamPoly::Exponents e(lhs.num_vars_);
  for (const auto& [ea, ca] : lhs.terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

ParamPoly& ParamPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const ParamPoly& a, const ParamPoly& b) {
  return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
}

ParamPoly ParamPoly::derivative(std::size_t var) const {
  if (var >= num_vars_) throw std::out_of_range("derivative variable out of range");
  ParamPoly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

ParamPoly ParamPoly::embedded(std::size_t offset, std::size_t total) const {
  if (offset + num_vars_ > total) throw std::out_of_range("embedding does not fit the target space");
  ParamPoly out(total);
  for (const auto& [e, c] : terms_) {
    Exponents wide(total, 0);
    std::copy(e.begin(), e.end(), wide.begin() + static_cast<std::ptrdiff_t>(offset));
    out.terms_.emplace(std::move(wide), c);
  }
  return out;
}

ParamPoly::Exponents ParamPoly::monomial_content() const {
  Exponents content(num_vars_, 0);
  if (terms_.empty()) return content;
  content = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < num_vars_; ++i) content[i] = std::min(content[i], e[i]);
  }
  return content;
}

ParamPoly ParamPoly::divided_by_monomial(const Exponents& exponents) const {
  if (exponents.size() != num_vars_) throw std::invalid_argument("monomial has wrong variable count");
  ParamPoly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    Exponents q = e;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (q[i] < exponents[i]) throw std::domain_error("inexact monomial division");
      q[i] -= exponents[i];
    }
    out.terms_.emplace(std::move(q), c);
  }
  return out;
}

namespace {

template <typename T>
T power(const T& base, unsigned k) {
  T result(1);
  for (unsigned i = 0; i < k; ++i) result *= base;
  return result;
}

}  // namespace

Rational ParamPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != num_vars_) throw std::invalid_argument("evaluation point has wrong dimension");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (e[i]) term *= power(point[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

double ParamPoly::evaluate(std::span<const double> point) const {
  if (point.size() != num_vars_) throw std::invalid_argument("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (e[i]) term *= power(point[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

std::string ParamPoly::to_string(std::span<const std::string> names) const {
  if (names.size() != num_vars_) throw std::invalid_argument("name list has wrong length");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational magnitude = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string monomial;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      if (!monomial.empty()) monomial += '*';
      monomial += names[i];
      if (e[i] > 1) monomial += '^' + std::to_string(e[i]);
    }
    if (monomial.empty()) {
      out += viscoid::to_string(magnitude);
    } else if (magnitude == 1) {
      out += monomial;
    } else {
      out += viscoid::to_string(magnitude) + '*' + monomial;
    }
  }
  return out;
}

namespace {

class PolyReader {
 public:
  PolyReader(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  ParamPoly run() {
    ParamPoly sum(names_.size());
    skip();
    if (pos_ == text_.size()) throw std::invalid_argument("empty polynomial");
    bool negative = false;
    if (peek() == '-' || peek() == '+') negative = text_[pos_++] == '-';
    for (;;) {
      ParamPoly t = term();
      if (negative) t = -t;
      sum += t;
      skip();
      if (pos_ == text_.size()) break;
      const char op = text_[pos_];
      if (op != '+' && op != '-') throw error("expected '+' or '-'");
      negative = op == '-';
      ++pos_;
    }
    return sum;
  }

 private:
  ParamPoly term() {
    ParamPoly product = ParamPoly::constant(names_.size(), Rational(1));
    product *= factor();
    skip();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      product *= factor();
      skip();
    }
    return product;
  }

  ParamPoly factor() {
    skip();
    if (pos_ == text_.size()) throw error("unexpected end of polynomial");
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
        ++pos_;
      }
      return ParamPoly::constant(names_.size(), parse_rational(text_.substr(start, pos_ - start)));
    }
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (name.empty() || it == names_.end()) throw error("unknown parameter '" + std::string(name) + "'");
    unsigned exponent = 1;
    skip();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip();
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (digits == pos_) throw error("expected exponent");
      exponent = static_cast<unsigned>(std::stoul(std::string(text_.substr(digits, pos_ - digits))));
    }
    ParamPoly::Exponents e(names_.size(), 0);
    e[static_cast<std::size_t>(it - names_.begin())] = exponent;
    return ParamPoly::monomial(Rational(1), std::move(e));
  }

  char peek() const { return text_[pos_]; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::invalid_argument error(const std::string& what) const {
    return std::invalid_argument(what + " at position " + std::to_string(pos_) + " in polynomial '" +
                                 std::string(text_) + "'");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

ParamPoly ParamPoly::parse(std::string_view text, std::span<const std::string> names) {
  return PolyReader(text, names).run();
}

}  // namespace viscoid
