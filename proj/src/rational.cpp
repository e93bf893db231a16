#include "semitree/rational.hpp"

#include <ostream>

#include "semitree/errors.hpp"

namespace semitree {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  value_ = den < 0 ? Impl(-num, -den) : Impl(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArgumentError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num_text = body.substr(0, slash);
  std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  BigInt num{std::string(num_text)};
  BigInt den{std::string(den_text)};
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace semitree
