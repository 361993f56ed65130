#include "dlab/algebra.hpp"

#include <algorithm>

#include "dlab/error.hpp"

namespace dlab {

Coeff PrimeField::inv(Coeff a) const {
  require(a % p_ != 0, "inverse of zero in Z/" + std::to_string(p_));
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a % p_;
  for (std::uint32_t e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
  }
  return static_cast<Coeff>(result);
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

RingParams ring_params(int q, int d) {
  require(is_prime(q), "q must be prime (got " + std::to_string(q) + ")");
  require(q < (1 << 16), "q too large");
  require(d >= 2, "d must be at least 2");
  require(d - 1 <= q, "d - 1 = " + std::to_string(d - 1) +
                          " exceeds q = " + std::to_string(q) +
                          ": not enough elements with invertible differences");
  RingParams r;
  r.q = q;
  r.d = d;
  for (int i = 0; i < d - 1; ++i) r.l.push_back(static_cast<Coeff>(i));
  return r;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(Coeff c) { return Poly(std::vector<Coeff>{c}); }

Poly Poly::monomial(Coeff c, int degree) {
  std::vector<Coeff> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Coeff Poly::eval(const PrimeField& f, Coeff x) const {
  Coeff acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
  return acc;
}

Poly poly_add(const PrimeField& f, const Poly& a, const Poly& b) {
  std::vector<Coeff> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f.add(a[static_cast<int>(i)], b[static_cast<int>(i)]);
  return Poly(std::move(out));
}

Poly poly_neg(const PrimeField& f, const Poly& a) {
  std::vector<Coeff> out(a.coeffs().begin(), a.coeffs().end());
  for (auto& c : out) c = f.neg(c);
  return Poly(std::move(out));
}

Poly poly_mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Coeff> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      out[i + j] = f.add(out[i + j], f.mul(a.coeffs()[i], b.coeffs()[j]));
  return Poly(std::move(out));
}

Poly poly_scale(const PrimeField& f, const Poly& a, Coeff c) {
  std::vector<Coeff> out(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : out) x = f.mul(x, c);
  return Poly(std::move(out));
}

Poly poly_mul_linear_pow(const PrimeField& f, const Poly& a, Coeff c, int e) {
  if (a.is_zero()) return {};
  std::vector<Coeff> cur(a.coeffs().begin(), a.coeffs().end());
  for (int k = 0; k < e; ++k) {
    std::vector<Coeff> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], cur[i]);
      next[i] = f.add(next[i], f.mul(cur[i], c));
    }
    cur = std::move(next);
  }
  return Poly(std::move(cur));
}

Poly poly_div_linear(const PrimeField& f, const Poly& a, Coeff c) {
  if (a.is_zero()) return {};
  // Synthetic division by (t - r) with r = -c.
  const Coeff root = f.neg(c);
  const int n = a.degree();
  std::vector<Coeff> out(static_cast<std::size_t>(n), 0);
  Coeff carry = 0;
  for (int i = n; i >= 1; --i) {
    carry = f.add(a[i], f.mul(carry, root));
    out[static_cast<std::size_t>(i - 1)] = carry;
  }
  Coeff rem = f.add(a[0], f.mul(carry, root));
  require(rem == 0, "poly_div_linear: division is not exact");
  return Poly(std::move(out));
}

Poly poly_taylor_shift(const PrimeField& f, const Poly& a, Coeff c) {
  // Horner in the variable (t + c).
  Poly acc;
  for (int i = a.degree(); i >= 0; --i)
    acc = poly_add(f, poly_mul_linear_pow(f, acc, c, 1), Poly::constant(a[i]));
  return acc;
}

// ---------------------------------------------------------------- RationalElement

RationalElement RationalElement::zero(const RingParams& r) {
  return RationalElement{Poly{}, std::vector<int>(static_cast<std::size_t>(r.d - 1), 0)};
}

RationalElement RationalElement::constant(const RingParams& r, Coeff c) {
  return from_poly(r, Poly::constant(r.field().reduce(c)));
}

RationalElement RationalElement::from_poly(const RingParams& r, Poly p) {
  return RationalElement{std::move(p), std::vector<int>(static_cast<std::size_t>(r.d - 1), 0)};
}

RationalElement rat_reduce(const RingParams& r, RationalElement a) {
  const PrimeField f = r.field();
  if (a.numerator.is_zero()) return RationalElement::zero(r);
  for (int i = 0; i < r.d - 1; ++i) {
    auto& m = a.den_exps[static_cast<std::size_t>(i)];
    const Coeff root = f.neg(r.l[static_cast<std::size_t>(i)]);
    while (m > 0 && a.numerator.eval(f, root) == 0) {
      a.numerator = poly_div_linear(f, a.numerator, r.l[static_cast<std::size_t>(i)]);
      --m;
    }
  }
  return a;
}

RationalElement rat_add(const RingParams& r, const RationalElement& a, const RationalElement& b) {
  const PrimeField f = r.field();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  RationalElement out = RationalElement::zero(r);
  Poly na = a.numerator, nb = b.numerator;
  for (int i = 0; i < r.d - 1; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const int m = std::max(a.den_exps[ui], b.den_exps[ui]);
    na = poly_mul_linear_pow(f, na, r.l[ui], m - a.den_exps[ui]);
    nb = poly_mul_linear_pow(f, nb, r.l[ui], m - b.den_exps[ui]);
    out.den_exps[ui] = m;
  }
  out.numerator = poly_add(f, na, nb);
  return rat_reduce(r, std::move(out));
}

RationalElement rat_neg(const RingParams& r, const RationalElement& a) {
  RationalElement out = a;
  out.numerator = poly_neg(r.field(), a.numerator);
  return out;
}

RationalElement rat_mul(const RingParams& r, const RationalElement& a, const RationalElement& b) {
  if (a.is_zero() || b.is_zero()) return RationalElement::zero(r);
  RationalElement out;
  out.numerator = poly_mul(r.field(), a.numerator, b.numerator);
  out.den_exps.resize(a.den_exps.size());
  for (std::size_t i = 0; i < a.den_exps.size(); ++i) out.den_exps[i] = a.den_exps[i] + b.den_exps[i];
  return rat_reduce(r, std::move(out));
}

RationalElement rat_scale_unit(const RingParams& r, const RationalElement& a, int place, int e) {
  require(place >= 0 && place < r.d - 1, "rat_scale_unit: place must be finite");
  if (a.is_zero() || e == 0) return a;
  RationalElement out = a;
  auto& m = out.den_exps[static_cast<std::size_t>(place)];
  m -= e;
  if (m < 0) {
    out.numerator = poly_mul_linear_pow(r.field(), out.numerator, r.l[static_cast<std::size_t>(place)], -m);
    m = 0;
  }
  return rat_reduce(r, std::move(out));
}

RationalElement rat_scale_units(const RingParams& r, const RationalElement& a,
                                std::span<const int> exps) {
  RationalElement out = a;
  for (int i = 0; i < r.d - 1; ++i) out = rat_scale_unit(r, out, i, exps[static_cast<std::size_t>(i)]);
  return out;
}

// ---------------------------------------------------------------- expansions

namespace {

// First n coefficients of the power series num / den, den(0) != 0.
std::vector<Coeff> series_divide(const PrimeField& f, const Poly& num, const Poly& den, int n) {
  std::vector<Coeff> out(static_cast<std::size_t>(std::max(n, 0)), 0);
  const Coeff inv0 = f.inv(den[0]);
  for (int k = 0; k < n; ++k) {
    Coeff acc = num[k];
    for (int j = 1; j <= std::min(k, den.degree()); ++j)
      acc = f.sub(acc, f.mul(den[j], out[static_cast<std::size_t>(k - j)]));
    out[static_cast<std::size_t>(k)] = f.mul(acc, inv0);
  }
  return out;
}

}  // namespace

int local_order_bound(const RingParams& r, const RationalElement& a, int place) {
  require(place >= 0 && place < r.d, "place out of range");
  if (a.is_zero()) return 0;
  if (place < r.d - 1) return -a.den_exps[static_cast<std::size_t>(place)];
  int total = 0;
  for (int m : a.den_exps) total += m;
  return total - a.numerator.degree();
}

DigitWindow expand_local(const RingParams& r, const RationalElement& a, int place, int lo, int hi) {
  require(place >= 0 && place < r.d, "expand_local: place out of range");
  require(lo <= hi, "expand_local: empty window");
  const PrimeField f = r.field();
  DigitWindow w;
  w.place = place;
  w.lo = lo;
  w.hi = hi;
  w.digits.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  if (a.is_zero()) return w;

  // a = uniformizer^shift * num / den with den(0) != 0 in the local variable.
  Poly num, den = Poly::constant(1);
  int shift = 0;
  if (place < r.d - 1) {
    const Coeff li = r.l[static_cast<std::size_t>(place)];
    // t = s - l_i
    num = poly_taylor_shift(f, a.numerator, f.neg(li));
    shift = -a.den_exps[static_cast<std::size_t>(place)];
    for (int j = 0; j < r.d - 1; ++j) {
      if (j == place) continue;
      const Coeff c = f.sub(r.l[static_cast<std::size_t>(j)], li);
      den = poly_mul_linear_pow(f, den, c, a.den_exps[static_cast<std::size_t>(j)]);
    }
  } else {
    // t = 1/u: num(1/u) = u^-deg * rev(num)(u); (t + l)^-m = u^m (1 + l u)^-m.
    auto c = a.numerator.coeffs();
    num = Poly(std::vector<Coeff>(c.rbegin(), c.rend()));
    shift = -a.numerator.degree();
    for (int j = 0; j < r.d - 1; ++j) {
      const int m = a.den_exps[static_cast<std::size_t>(j)];
      shift += m;
      for (int e = 0; e < m; ++e)
        den = poly_mul(f, den, Poly(std::vector<Coeff>{1, r.l[static_cast<std::size_t>(j)]}));
    }
  }
  const int need = hi - shift + 1;
  if (need <= 0) return w;
  const auto series = series_divide(f, num, den, need);
  for (int e = std::max(lo, shift); e <= hi; ++e)
    w.digits[static_cast<std::size_t>(e - lo)] = series[static_cast<std::size_t>(e - shift)];
  return w;
}

}  // namespace dlab
