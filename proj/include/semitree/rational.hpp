#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace semitree {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "p", "-p" or "p/q". Throws ParseError on malformed text or q == 0.
  static Rational parse(std::string_view text);

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_.sign(); }

  Rational operator-() const { return Rational(-value_); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  using Impl = boost::multiprecision::cpp_rational;
  explicit Rational(Impl v) : value_(std::move(v)) {}
  Impl value_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace semitree
