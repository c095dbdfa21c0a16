#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace renyi {

/// Exact fraction over 128-bit integers, always stored in lowest terms with a
/// positive denominator. Arithmetic throws RationalOverflowError instead of
/// wrapping.
class Rational {
 public:
  __extension__ typedef __int128 Int;

  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design of a number type
  Rational(Int num, Int den);

  Int numerator() const noexcept { return num_; }
  Int denominator() const noexcept { return den_; }

  double to_double() const noexcept;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  Int num_ = 0;
  Int den_ = 1;
};

/// Checked 128-bit helpers; throw RationalOverflowError on overflow.
Rational::Int checked_mul(Rational::Int a, Rational::Int b);
Rational::Int checked_add(Rational::Int a, Rational::Int b);

std::string int128_to_string(Rational::Int value);

}  // namespace renyi
