#pragma once

// Arithmetic over the prime field Z/q, in the ring
//   L_q[t, (t + l_0)^-1, ..., (t + l_{d-2})^-1]
// and truncated Laurent expansions of its elements at the d places of that
// ring: the finite places t + l_i (i < d-1) and the place at infinity (t^-1).
//
// Places and trees are indexed from 0; place d-1 is always infinity.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dlab {

using Coeff = std::uint32_t;

class PrimeField {
 public:
  PrimeField() = default;
  explicit PrimeField(std::uint32_t p) : p_(p) {}

  std::uint32_t modulus() const { return p_; }
  Coeff reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Coeff>(r < 0 ? r + p_ : r);
  }
  Coeff add(Coeff a, Coeff b) const { return (a + b) % p_; }
  Coeff sub(Coeff a, Coeff b) const { return (a + p_ - b) % p_; }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Coeff inv(Coeff a) const;

 private:
  std::uint32_t p_ = 2;
};

bool is_prime(int n);

struct RingParams {
  int q = 2;
  int d = 2;
  std::vector<Coeff> l;  // l[i] for the finite places, size d-1

  PrimeField field() const { return PrimeField(static_cast<std::uint32_t>(q)); }
  int finite_places() const { return d - 1; }
  int infinite_place() const { return d - 1; }
};

// Canonical ring for (q, d): l_i = i. Throws for non-prime q or d - 1 > q.
RingParams ring_params(int q, int d);

// Dense polynomial in t; coefficient i multiplies t^i. The highest stored
// coefficient is nonzero; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Coeff> coeffs);
  static Poly constant(Coeff c);
  static Poly monomial(Coeff c, int degree);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Coeff operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  std::span<const Coeff> coeffs() const { return c_; }

  Coeff eval(const PrimeField& f, Coeff x) const;

  friend bool operator==(const Poly&, const Poly&) = default;
  friend auto operator<=>(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<Coeff> c_;
};

Poly poly_add(const PrimeField& f, const Poly& a, const Poly& b);
Poly poly_neg(const PrimeField& f, const Poly& a);
Poly poly_mul(const PrimeField& f, const Poly& a, const Poly& b);
Poly poly_scale(const PrimeField& f, const Poly& a, Coeff c);
// a * (t + c)^e for e >= 0.
Poly poly_mul_linear_pow(const PrimeField& f, const Poly& a, Coeff c, int e);
// Exact division by (t + c); requires a(-c) == 0.
Poly poly_div_linear(const PrimeField& f, const Poly& a, Coeff c);
// a(t + c) as a polynomial in t.
Poly poly_taylor_shift(const PrimeField& f, const Poly& a, Coeff c);

// numerator / prod_i (t + l_i)^{den_exps[i]}, reduced: whenever den_exps[i] > 0
// the numerator does not vanish at -l_i. Zero has an empty numerator and all
// exponents zero.
struct RationalElement {
  Poly numerator;
  std::vector<int> den_exps;

  static RationalElement zero(const RingParams& r);
  static RationalElement constant(const RingParams& r, Coeff c);
  static RationalElement from_poly(const RingParams& r, Poly p);

  bool is_zero() const { return numerator.is_zero(); }

  friend bool operator==(const RationalElement&, const RationalElement&) = default;
  friend auto operator<=>(const RationalElement&, const RationalElement&) = default;
};

RationalElement rat_reduce(const RingParams& r, RationalElement a);
RationalElement rat_add(const RingParams& r, const RationalElement& a, const RationalElement& b);
RationalElement rat_neg(const RingParams& r, const RationalElement& a);
RationalElement rat_mul(const RingParams& r, const RationalElement& a, const RationalElement& b);
// a * (t + l_place)^e, any sign of e.
RationalElement rat_scale_unit(const RingParams& r, const RationalElement& a, int place, int e);
// a * prod_i (t + l_i)^{exps[i]}.
RationalElement rat_scale_units(const RingParams& r, const RationalElement& a,
                                std::span<const int> exps);

struct DigitWindow {
  int place = 0;
  int lo = 0;
  int hi = -1;
  std::vector<Coeff> digits;  // digits[j] is the coefficient of exponent lo + j

  Coeff at(int exponent) const {
    return exponent >= lo && exponent <= hi ? digits[exponent - lo] : 0;
  }
};

// Lowest exponent that can carry a nonzero coefficient of the local
// expansion of `a` at `place` (the negated pole order bound).
int local_order_bound(const RingParams& r, const RationalElement& a, int place);

// Coefficients of the Laurent expansion of `a` in the local uniformizer of
// `place` for exponents lo..hi. Finite place i uses s = t + l_i; infinity uses
// u = t^-1.
DigitWindow expand_local(const RingParams& r, const RationalElement& a, int place, int lo, int hi);

}  // namespace dlab
