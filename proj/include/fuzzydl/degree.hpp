#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "fuzzydl/errors.hpp"

namespace fuzzydl {

using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                  boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

// Exact parse of "0.75", "1", ".5", "3/10". No sign, no exponent.
inline std::optional<Rational> ParseRational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) return std::nullopt;
    BigInt d{std::string(den)};
    if (d == 0) return std::nullopt;
    return Rational(BigInt{std::string(num)}, d);
  }
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (!whole.empty() && !digits_only(whole)) return std::nullopt;
  if (dot != std::string_view::npos && !digits_only(frac)) return std::nullopt;
  BigInt scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  BigInt value = whole.empty() ? BigInt(0) : BigInt{std::string(whole)};
  value *= scale;
  if (!frac.empty()) value += BigInt{std::string(frac)};
  return Rational(value, scale);
}

// A truth degree: an exact rational in [0, 1].
class Degree {
 public:
  Degree() = default;

  explicit Degree(Rational value) : value_(std::move(value)) {
    if (value_ < 0 || value_ > 1)
      throw DomainError("degree out of [0,1]: " + value_.str());
  }

  Degree(long numerator, long denominator)
      : Degree(Rational(numerator, denominator)) {}

  static Degree Zero() { return Degree(); }
  static Degree One() { return Degree(Rational(1)); }
  static Degree Half() { return Degree(Rational(1, 2)); }

  // Throws DomainError on malformed text or a value outside [0,1].
  static Degree Parse(std::string_view text) {
    auto r = ParseRational(text);
    if (!r) throw DomainError("malformed degree '" + std::string(text) + "'");
    return Degree(*r);
  }

  const Rational& value() const { return value_; }

  Degree Complement() const { return Degree(Rational(1) - value_); }

  bool IsZero() const { return value_ == 0; }
  bool IsOne() const { return value_ == 1; }

  // Exact decimal when the denominator is 2^a 5^b, otherwise "p/q".
  std::string ToString() const {
    BigInt num = boost::multiprecision::numerator(value_);
    BigInt den = boost::multiprecision::denominator(value_);
    BigInt rest = den;
    int twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return num.str() + "/" + den.str();
    int places = std::max(twos, fives);
    if (places == 0) return num.str();
    BigInt scaled = num;
    for (int i = 0; i < places; ++i) scaled *= 10;
    scaled /= den;
    std::string digits = scaled.str();
    if (static_cast<int>(digits.size()) <= places)
      digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
    return digits;
  }

  // "p/q", or "p" for integers; the JSON wire form.
  std::string ToFractionString() const {
    BigInt den = boost::multiprecision::denominator(value_);
    if (den == 1) return boost::multiprecision::numerator(value_).str();
    return boost::multiprecision::numerator(value_).str() + "/" + den.str();
  }

  std::size_t Hash() const { return boost::multiprecision::hash_value(value_); }

  friend bool operator==(const Degree& a, const Degree& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Degree& d) {
    return os << d.ToString();
  }

 private:
  Rational value_{0};
};

inline Degree Midpoint(const Degree& a, const Degree& b) {
  return Degree((a.value() + b.value()) / 2);
}

}  // namespace fuzzydl

template <>
struct std::hash<fuzzydl::Degree> {
  std::size_t operator()(const fuzzydl::Degree& d) const noexcept {
    return d.Hash();
  }
};
