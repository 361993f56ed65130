#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "dlab/error.hpp"

namespace dlab {

// Exact rational with 64-bit parts. Measures in this library are sums of
// powers of q with small exponents, so overflow means a caller bug.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit by design of arithmetic
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  static Rational power(std::int64_t base, int exp) {
    std::int64_t p = 1;
    for (int i = 0; i < (exp < 0 ? -exp : exp); ++i) p = checked_mul(p, base);
    return exp < 0 ? Rational(1, p) : Rational(p);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator+(const Rational& o) const {
    std::int64_t g = std::gcd(den_, o.den_);
    std::int64_t l = den_ / g;
    return Rational(checked_add(checked_mul(num_, o.den_ / g), checked_mul(o.num_, l)),
                    checked_mul(l, o.den_));
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator-(const Rational& o) const { return *this + (-o); }
  Rational operator*(const Rational& o) const {
    std::int64_t g1 = std::gcd(num_, o.den_), g2 = std::gcd(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
  }
  Rational operator/(const Rational& o) const {
    require(o.num_ != 0, "rational division by zero");
    return *this * Rational(o.den_, o.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  bool operator==(const Rational& o) const = default;
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
  }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    require(den_ != 0, "rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::BudgetExceeded, "rational overflow");
    return r;
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::BudgetExceeded, "rational overflow");
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace dlab
