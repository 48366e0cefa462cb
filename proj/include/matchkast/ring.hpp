#pragma once

// Sparse multivariate polynomials with arbitrary-precision integer
// coefficients. Every weight and every matching count lives in this ring.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "matchkast/error.hpp"

namespace matchkast {

using Integer = mpz_class;

namespace detail {

// Variable names are interned once per process; monomials store ids.
class VariableTable {
 public:
  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mu_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  const std::string& name(std::uint32_t id) const {
    std::lock_guard lock(mu_);
    return names_.at(id);
  }

 private:
  mutable std::mutex mu_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

inline VariableTable& variable_table() {
  static VariableTable table;
  return table;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace detail

/// (variable id, exponent) pairs sorted by id; exponents are positive.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Lexicographic order; a variable with smaller id is more significant.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].first != b[i].first) return a[i].first > b[i].first;
      if (a[i].second != b[i].second) return a[i].second < b[i].second;
    }
    return a.size() < b.size();
  }
};

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

/// True iff `divisor` divides `m`; on success `quotient` holds m / divisor.
inline bool monomial_divide(const Monomial& m, const Monomial& divisor, Monomial& quotient) {
  quotient.clear();
  std::size_t j = 0;
  for (const auto& [var, exp] : m) {
    if (j < divisor.size() && divisor[j].first < var) return false;
    if (j < divisor.size() && divisor[j].first == var) {
      if (divisor[j].second > exp) return false;
      if (divisor[j].second < exp) quotient.emplace_back(var, exp - divisor[j].second);
      ++j;
    } else {
      quotient.emplace_back(var, exp);
    }
  }
  return j == divisor.size();
}

class RingElement {
 public:
  using Terms = std::map<Monomial, Integer, MonomialLess>;

  RingElement() = default;
  RingElement(long value) : RingElement(Integer(value)) {}  // NOLINT
  RingElement(int value) : RingElement(Integer(value)) {}   // NOLINT
  RingElement(const Integer& value) {                       // NOLINT
    if (value != 0) terms_.emplace(Monomial{}, value);
  }

  static RingElement variable(std::string_view name) {
    if (!detail::is_identifier(name))
      throw Error(ErrorCode::Parse, "bad variable name '" + std::string(name) + "'");
    RingElement r;
    r.terms_.emplace(Monomial{{detail::variable_table().intern(name), 1}}, Integer(1));
    return r;
  }

  /// Parses the canonical text form and any reasonable variation of it:
  /// `3`, `-x`, `2*x^2*y-1`, `x + 2*y`.
  static RingElement parse(std::string_view text);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  /// Constant term (the whole value when is_constant()).
  Integer constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Integer(0) : it->second;
  }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  std::set<std::string> variables() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m) out.insert(detail::variable_table().name(v));
    return out;
  }

  Integer evaluate(const std::map<std::string, Integer>& assignment) const {
    Integer total = 0;
    for (const auto& [m, c] : terms_) {
      Integer term = c;
      for (const auto& [v, e] : m) {
        const auto& name = detail::variable_table().name(v);
        auto it = assignment.find(name);
        if (it == assignment.end())
          throw Error(ErrorCode::UnboundVariable, "no value for variable '" + name + "'");
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), it->second.get_mpz_t(), e);
        term *= p;
      }
      total += term;
    }
    return total;
  }

  /// Sum of coefficients, i.e. the value with every variable set to 1.
  Integer evaluate_at_ones() const {
    Integer total = 0;
    for (const auto& [m, c] : terms_) total += c;
    return total;
  }

  /// Coefficient of the largest term in name-lexicographic order; the
  /// ordering used by to_string().
  Integer leading_coefficient() const {
    auto sorted = printable_terms();
    return sorted.empty() ? Integer(0) : sorted.front().second;
  }

  std::string to_string() const;

  RingElement operator-() const {
    RingElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  RingElement& operator+=(const RingElement& o) {
    add_scaled(o, Monomial{}, Integer(1));
    return *this;
  }
  RingElement& operator-=(const RingElement& o) {
    add_scaled(o, Monomial{}, Integer(-1));
    return *this;
  }
  RingElement& operator*=(const RingElement& o) {
    *this = *this * o;
    return *this;
  }

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    RingElement out;
    if (a.is_zero() || b.is_zero()) return out;
    if (a.is_constant() && b.is_constant()) return RingElement(a.constant_term() * b.constant_term());
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        auto [it, inserted] = out.terms_.try_emplace(monomial_product(ma, mb), ca * cb);
        if (!inserted) it->second += ca * cb;
      }
    }
    std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
    return out;
  }
  friend bool operator==(const RingElement& a, const RingElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

  friend RingElement exact_div(const RingElement& a, const RingElement& b);

 private:
  // this += scale * (mono * o)
  void add_scaled(const RingElement& o, const Monomial& mono, const Integer& scale) {
    for (const auto& [m, c] : o.terms_) {
      Monomial key = mono.empty() ? m : monomial_product(m, mono);
      auto [it, inserted] = terms_.try_emplace(std::move(key), scale * c);
      if (!inserted) {
        it->second += scale * c;
        if (it->second == 0) terms_.erase(it);
      }
    }
  }

  std::vector<std::pair<std::vector<std::pair<std::string, std::uint32_t>>, Integer>> printable_terms() const;

  Terms terms_;
};

inline RingElement pow(const RingElement& base, unsigned exponent) {
  RingElement result(1), b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent) b *= b;
  }
  return result;
}

/// Exact quotient a / b in the polynomial ring. Multivariate long division
/// against the single divisor; any surviving remainder means b does not
/// divide a (the ring is an integral domain, so quotients are unique).
inline RingElement exact_div(const RingElement& a, const RingElement& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  if (a.is_zero()) return {};
  if (a.is_constant() && b.is_constant()) {
    const Integer& num = a.constant_term();
    const Integer& den = b.constant_term();
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
      throw Error(ErrorCode::NotDivisible, a.to_string() + " / " + b.to_string());
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return RingElement(q);
  }
  const auto& [lead_mono, lead_coef] = *b.terms_.rbegin();
  RingElement rem = a, quot;
  Monomial qm;
  while (!rem.is_zero()) {
    const auto& [rm, rc] = *rem.terms_.rbegin();
    if (!monomial_divide(rm, lead_mono, qm) ||
        !mpz_divisible_p(rc.get_mpz_t(), lead_coef.get_mpz_t()))
      throw Error(ErrorCode::NotDivisible, a.to_string() + " / " + b.to_string());
    Integer qc;
    mpz_divexact(qc.get_mpz_t(), rc.get_mpz_t(), lead_coef.get_mpz_t());
    quot.terms_.emplace(qm, qc);
    rem.add_scaled(b, qm, -qc);
  }
  return quot;
}

inline std::vector<std::pair<std::vector<std::pair<std::string, std::uint32_t>>, Integer>>
RingElement::printable_terms() const {
  using Named = std::vector<std::pair<std::string, std::uint32_t>>;
  std::vector<std::pair<Named, Integer>> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Named named;
    for (const auto& [v, e] : m) named.emplace_back(detail::variable_table().name(v), e);
    std::sort(named.begin(), named.end());
    out.emplace_back(std::move(named), c);
  }
  // Descending lex order by name, the same rule as MonomialLess.
  auto greater = [](const auto& x, const auto& y) {
    const Named& a = x.first;
    const Named& b = y.first;
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].first != b[i].first) return a[i].first < b[i].first;
      if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() > b.size();
  };
  std::sort(out.begin(), out.end(), greater);
  return out;
}

inline std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [named, coef] : printable_terms()) {
    bool negative = coef < 0;
    Integer mag = abs(coef);
    if (negative)
      s += '-';
    else if (!first)
      s += '+';
    first = false;
    bool wrote = false;
    if (named.empty() || mag != 1) {
      s += mag.get_str();
      wrote = true;
    }
    for (const auto& [name, exp] : named) {
      if (wrote) s += '*';
      s += name;
      if (exp > 1) s += '^' + std::to_string(exp);
      wrote = true;
    }
  }
  return s;
}

namespace detail {

class RingParser {
 public:
  explicit RingParser(std::string_view text) : text_(text) {}

  RingElement parse() {
    skip();
    if (pos_ == text_.size()) fail("empty expression");
    RingElement total;
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      RingElement term = parse_term();
      total += sign < 0 ? -term : term;
      first = false;
      skip();
    }
    return total;
  }

 private:
  RingElement parse_term() {
    RingElement term = parse_factor();
    skip();
    while (peek() == '*') {
      ++pos_;
      skip();
      term *= parse_factor();
      skip();
    }
    return term;
  }

  RingElement parse_factor() {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return RingElement(Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      RingElement var = RingElement::variable(text_.substr(start, pos_ - start));
      skip();
      if (peek() == '^') {
        ++pos_;
        skip();
        std::size_t es = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (es == pos_) fail("expected exponent");
        unsigned long e = std::stoul(std::string(text_.substr(es, pos_ - es)));
        return pow(var, static_cast<unsigned>(e));
      }
      return var;
    }
    fail("expected integer or variable");
    return {};
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, msg + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RingElement RingElement::parse(std::string_view text) { return detail::RingParser(text).parse(); }

inline std::ostream& operator<<(std::ostream& os, const RingElement& r) { return os << r.to_string(); }

}  // namespace matchkast
