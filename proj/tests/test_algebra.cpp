#include <doctest.h>

#include <algorithm>
#include <random>

#include "dlab/algebra.hpp"
#include "dlab/error.hpp"
#include "dlab/rational.hpp"

using namespace dlab;

namespace {

using Vec = std::vector<std::int64_t>;

// Independent schoolbook arithmetic on coefficient vectors mod p.
Vec naive_mul(const Vec& a, const Vec& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Vec out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return out;
}

// f(t + c) via Horner: f = (...(f_n t + f_{n-1}) t + ...) with t -> t + c.
Vec naive_shift(const Vec& f, std::int64_t c, std::int64_t p) {
  Vec acc;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = naive_mul(acc, Vec{((c % p) + p) % p, 1}, p);
    if (acc.empty()) acc.push_back(0);
    acc[0] = (acc[0] + *it) % p;
  }
  return acc;
}

Vec to_vec(const Poly& f) { return Vec(f.coeffs().begin(), f.coeffs().end()); }

std::int64_t at(const Vec& v, long i) { return i >= 0 && i < static_cast<long>(v.size()) ? v[static_cast<std::size_t>(i)] : 0; }

void trim(Vec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

RationalElement random_element(const RingParams& r, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(0, r.q - 1), deg(0, 5), ex(0, 3);
  std::vector<Coeff> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = static_cast<Coeff>(coeff(rng));
  RationalElement a;
  a.numerator = Poly(c);
  for (int i = 0; i < r.d - 1; ++i) a.den_exps.push_back(ex(rng));
  return rat_reduce(r, a);
}

// Checks the expansion by multiplying it back by the local denominator.
void check_expansion(const RingParams& r, const RationalElement& a, int place, int width) {
  const std::int64_t p = r.q;
  const int lo = local_order_bound(r, a, place);
  const int hi = lo + width;
  DigitWindow w = expand_local(r, a, place, lo, hi);
  REQUIRE(w.digits.size() == static_cast<std::size_t>(hi - lo + 1));

  Vec num = to_vec(a.numerator), den{1};
  for (int j = 0; j < r.d - 1; ++j)
    for (int e = 0; e < a.den_exps[static_cast<std::size_t>(j)]; ++e)
      den = naive_mul(den, Vec{static_cast<std::int64_t>(r.l[static_cast<std::size_t>(j)]), 1}, p);
  long offset = 0;  // exponent of the uniformizer multiplying num
  if (place < r.d - 1) {
    const std::int64_t c = -static_cast<std::int64_t>(r.l[static_cast<std::size_t>(place)]);
    num = naive_shift(num, c, p);
    den = naive_shift(den, c, p);
  } else {
    trim(num);
    trim(den);
    offset = static_cast<long>(den.size()) - static_cast<long>(num.size());
    std::reverse(num.begin(), num.end());
    std::reverse(den.begin(), den.end());
  }
  for (int e = lo; e <= hi; ++e) {
    std::int64_t sum = 0;
    for (long j = 0; j < static_cast<long>(den.size()); ++j)
      if (e - j >= lo) sum = (sum + den[static_cast<std::size_t>(j)] * w.at(static_cast<int>(e - j))) % p;
    CHECK(sum == at(num, e - offset));
  }
}

}  // namespace

TEST_CASE("ring parameters") {
  auto r = ring_params(2, 2);
  CHECK(r.l == std::vector<Coeff>{0});
  r = ring_params(3, 3);
  CHECK(r.l == std::vector<Coeff>{0, 1});
  auto f = r.field();
  for (std::size_t i = 0; i < r.l.size(); ++i)
    for (std::size_t j = 0; j < r.l.size(); ++j)
      if (i != j) CHECK(f.sub(r.l[i], r.l[j]) != 0);
  CHECK_THROWS_AS(ring_params(2, 4), Error);
  CHECK_THROWS_AS(ring_params(4, 2), Error);
  CHECK_THROWS_AS(ring_params(3, 1), Error);
  CHECK_NOTHROW(ring_params(5, 6));
}

TEST_CASE("field inverse") {
  PrimeField f(7);
  for (Coeff a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK_THROWS_AS(f.inv(0), Error);
}

TEST_CASE("rational arithmetic basics") {
  auto r2 = ring_params(2, 2);
  auto p = rat_reduce(r2, RationalElement{Poly({1, 1, 1}), {2}});
  CHECK(rat_add(r2, p, RationalElement::zero(r2)) == p);

  auto inv_t = rat_scale_unit(r2, RationalElement::constant(r2, 1), 0, -1);
  CHECK(inv_t.numerator == Poly({1}));
  CHECK(inv_t.den_exps == std::vector<int>{1});

  auto r3 = ring_params(3, 3);
  auto a = rat_scale_unit(r3, RationalElement::constant(r3, 1), 1, -1);
  auto b = RationalElement::from_poly(r3, Poly({1, 1}));
  auto prod = rat_mul(r3, a, b);
  CHECK(prod == RationalElement::constant(r3, 1));
  CHECK(prod.den_exps == std::vector<int>{0, 0});

  // t^2 / t^3 reduces to t^-1.
  auto red = rat_reduce(r2, RationalElement{Poly::monomial(1, 2), {3}});
  CHECK(red.numerator == Poly({1}));
  CHECK(red.den_exps == std::vector<int>{1});

  CHECK(rat_add(r3, b, rat_neg(r3, b)) == RationalElement::zero(r3));
}

TEST_CASE("scaling by units round-trips") {
  std::mt19937_64 rng(11);
  for (int q : {2, 3, 5}) {
    for (int d = 2; d <= std::min(4, q + 1); ++d) {
      auto r = ring_params(q, d);
      for (int trial = 0; trial < 40; ++trial) {
        auto a = random_element(r, rng);
        std::vector<int> e;
        std::uniform_int_distribution<int> ex(-3, 3);
        std::vector<int> neg;
        for (int i = 0; i < d - 1; ++i) {
          e.push_back(ex(rng));
          neg.push_back(-e.back());
        }
        auto b = rat_scale_units(r, a, e);
        for (int i = 0; i < d - 1; ++i)
          if (b.den_exps[static_cast<std::size_t>(i)] > 0)
            CHECK(b.numerator.eval(r.field(), r.field().neg(r.l[static_cast<std::size_t>(i)])) != 0);
        CHECK(rat_scale_units(r, b, neg) == a);
      }
    }
  }
}

TEST_CASE("local expansions of monomials") {
  auto r2 = ring_params(2, 2);
  auto t = RationalElement::from_poly(r2, Poly({0, 1}));
  auto w = expand_local(r2, t, 0, -1, 2);
  CHECK(w.digits == std::vector<Coeff>{0, 0, 1, 0});

  auto inv_t = rat_scale_unit(r2, RationalElement::constant(r2, 1), 0, -1);
  w = expand_local(r2, inv_t, 1, 0, 3);
  CHECK(w.digits == std::vector<Coeff>{0, 1, 0, 0});

  auto r23 = ring_params(2, 3);
  auto g = rat_scale_unit(r23, RationalElement::constant(r23, 1), 1, -1);
  w = expand_local(r23, g, 0, 0, 2);
  CHECK(w.digits == std::vector<Coeff>{1, 1, 1});
  CHECK(expand_local(r23, RationalElement::zero(r23), 2, -3, 3).digits == std::vector<Coeff>(7, 0));
}

TEST_CASE("expansion times denominator reproduces numerator") {
  std::mt19937_64 rng(5);
  for (int q : {2, 3, 5}) {
    for (int d = 2; d <= std::min(4, q + 1); ++d) {
      auto r = ring_params(q, d);
      for (int trial = 0; trial < 30; ++trial) {
        auto a = random_element(r, rng);
        for (int place = 0; place < d; ++place) check_expansion(r, a, place, 12);
      }
    }
  }
}

TEST_CASE("expansion is additive") {
  std::mt19937_64 rng(9);
  auto r = ring_params(3, 3);
  auto f = r.field();
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_element(r, rng), b = random_element(r, rng);
    auto s = rat_add(r, a, b);
    for (int place = 0; place < 3; ++place) {
      auto wa = expand_local(r, a, place, -6, 6), wb = expand_local(r, b, place, -6, 6),
           ws = expand_local(r, s, place, -6, 6);
      for (int e = -6; e <= 6; ++e) CHECK(ws.at(e) == f.add(wa.at(e), wb.at(e)));
    }
  }
}

TEST_CASE("exact rationals") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational::power(2, -3) == Rational(1, 8));
  CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), Error);
}
