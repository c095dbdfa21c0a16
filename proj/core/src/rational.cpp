#include "renyi/rational.hpp"

#include <algorithm>

#include "renyi/errors.hpp"

namespace renyi {

namespace {

Rational::Int abs128(Rational::Int v) { return v < 0 ? -v : v; }

Rational::Int gcd128(Rational::Int a, Rational::Int b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    Rational::Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Int checked_mul(Rational::Int a, Rational::Int b) {
  Rational::Int out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw RationalOverflowError(
        "128-bit overflow in exact arithmetic; rerun in floating-point mode");
  }
  return out;
}

Rational::Int checked_add(Rational::Int a, Rational::Int b) {
  Rational::Int out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw RationalOverflowError(
        "128-bit overflow in exact arithmetic; rerun in floating-point mode");
  }
  return out;
}

Rational::Rational(Int num, Int den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

double Rational::to_double() const noexcept {
  return static_cast<double>(static_cast<long double>(num_) /
                             static_cast<long double>(den_));
}

std::string int128_to_string(Rational::Int value) {
  if (value == 0) return "0";
  bool negative = value < 0;
  // Work in unsigned space so the most negative value is representable.
  __extension__ typedef unsigned __int128 UInt;
  UInt v = negative ? static_cast<UInt>(-(value + 1)) + 1 : static_cast<UInt>(value);
  std::string digits;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string Rational::to_string() const {
  if (den_ == 1) return int128_to_string(num_);
  return int128_to_string(num_) + "/" + int128_to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  Rational::Int g = gcd128(a.den_, b.den_);
  Rational::Int lhs = checked_mul(a.num_, b.den_ / g);
  Rational::Int rhs = checked_mul(b.num_, a.den_ / g);
  return Rational(checked_add(lhs, rhs), checked_mul(a.den_ / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) {
  return a + Rational(-b.num_, b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  Rational::Int g1 = gcd128(a.num_, b.den_);
  Rational::Int g2 = gcd128(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2),
                  checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Rational::Int lhs = checked_mul(a.num_, b.den_);
  Rational::Int rhs = checked_mul(b.num_, a.den_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace renyi
