#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pgl {

// Exact rational on 64-bit numerator/denominator, always kept reduced with a
// positive denominator. Intermediates widen to 128 bits; a result that does
// not fit 64 bits throws std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "12", "-3", "0.25", "-1.5", "3/4".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  // Exact decimal ("0.6", "-1.75") when the expansion terminates in at most
  // 30 digits, otherwise "num/den". Both forms reparse to the same value.
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);  // throws on b == 0
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  static Rational make(__int128 num, __int128 den);

  std::int64_t num_;
  std::int64_t den_;
};

// A certainty/truth degree: an exact rational confined to [0, 1]. Clause
// weights, membership values, possibility values and necessity values all
// live here; equality is exact everywhere.
class Degree {
 public:
  constexpr Degree() : value_() {}
  explicit Degree(Rational value);  // throws std::domain_error outside [0, 1]

  static Degree zero() { return Degree(); }
  static Degree one() { return Degree(Rational(1)); }
  static Degree parse(std::string_view text) { return Degree(Rational::parse(text)); }

  const Rational& value() const { return value_; }
  Degree complement() const;  // 1 - x
  std::string str() const { return value_.str(); }

  friend bool operator==(const Degree& a, const Degree& b) = default;
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) = default;

  friend std::ostream& operator<<(std::ostream& os, const Degree& d);

 private:
  Rational value_;
};

// Goedel implication: 1 if x <= y, else y.
Degree goedel_implies(const Degree& x, const Degree& y);

// Reciprocal of the Goedel implication: 1 if x <= y, else 1 - x. This is the
// operator inside every necessity measure used by the engine and oracles.
Degree reciprocal_implies(const Degree& x, const Degree& y);

}  // namespace pgl
