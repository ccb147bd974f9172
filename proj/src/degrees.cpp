#include "pgl/degrees.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace pgl {

namespace {

using Wide = __int128;

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t parse_int64(std::string_view s, const char* what) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " in rational literal");
  }
  return out;
}

}  // namespace

Rational Rational::make(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = parse_int64(text.substr(0, slash), "numerator");
    std::int64_t d = parse_int64(text.substr(slash + 1), "denominator");
    return Rational(n, d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.empty()) throw std::invalid_argument("missing digits after '.'");
    if (frac_part.size() > 18) throw std::overflow_error("decimal literal too long");
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative) int_part.remove_prefix(1);
    if (int_part.empty()) throw std::invalid_argument("missing digits before '.'");
    Wide scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    Wide mantissa = static_cast<Wide>(parse_int64(int_part, "integer part")) * scale +
                    parse_int64(frac_part, "fraction part");
    return make(negative ? -mantissa : mantissa, scale);
  }
  return Rational(parse_int64(text, "integer"), 1);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  int digits = twos > fives ? twos : fives;
  if (d != 1 || digits > 30) {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  Wide pow10 = 1;
  for (int i = 0; i < digits; ++i) pow10 *= 10;
  Wide scaled = static_cast<Wide>(num_) * (pow10 / den_);
  bool negative = scaled < 0;
  Wide abs_scaled = wide_abs(scaled);
  std::string frac;
  for (int i = 0; i < digits; ++i) {
    frac.insert(frac.begin(), static_cast<char>('0' + static_cast<int>(abs_scaled % 10)));
    abs_scaled /= 10;
  }
  std::string out = negative ? "-" : "";
  out += std::to_string(static_cast<std::int64_t>(abs_scaled));
  out += '.';
  out += frac;
  return out;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                        static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_,
                        static_cast<Wide>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
}

Rational operator-(const Rational& a) { return Rational::make(-static_cast<Wide>(a.num_), a.den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Degree::Degree(Rational value) : value_(value) {
  if (value < Rational(0) || value > Rational(1)) {
    throw std::domain_error("degree " + value.str() + " outside [0, 1]");
  }
}

Degree Degree::complement() const { return Degree(Rational(1) - value_); }

std::ostream& operator<<(std::ostream& os, const Degree& d) { return os << d.str(); }

Degree goedel_implies(const Degree& x, const Degree& y) {
  return x <= y ? Degree::one() : y;
}

Degree reciprocal_implies(const Degree& x, const Degree& y) {
  return x <= y ? Degree::one() : x.complement();
}

}  // namespace pgl
