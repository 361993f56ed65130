#include <doctest.h>

#include <random>

#include "dlab/boundary_map.hpp"
#include "dlab/error.hpp"

using namespace dlab;

namespace {

Series random_series(int q, std::mt19937_64& rng, int lo, int hi) {
  std::vector<Digit> d;
  for (int i = lo; i <= hi; ++i) d.push_back(static_cast<Digit>(std::uniform_int_distribution<int>(0, q - 1)(rng)));
  return Series(lo, d);
}

// Net index shift of a map built from shifts, permutations and equal-length
// rewrites.
int net_shift(const BoundaryMap& phi) {
  int m = 0;
  for (const auto& p : phi.ops())
    if (const auto* s = std::get_if<Shift>(&p)) m += s->m;
  return m;
}

BoundaryMap unbalanced(int q) {
  // 0 -> 00, 10 -> 01, 11 -> 1
  return BoundaryMap(q, {PrefixRewrite{0, {{{0}, {0, 0}}, {{1, 0}, {0, 1}}, {{1, 1}, {1}}}}});
}

}  // namespace

TEST_CASE("measure-linear constants of basic maps") {
  for (int q : {2, 3}) {
    auto id = measure_linear_constant(BoundaryMap::identity(q), 6);
    CHECK(id.linear);
    CHECK(id.lambda == Rational(1));
    auto a = measure_linear_constant(BoundaryMap::alpha(q), 6);
    CHECK(a.linear);
    CHECK(a.lambda == Rational(1, q));
    for (int m = -2; m <= 2; ++m) {
      auto r = measure_linear_constant(BoundaryMap::alpha(q, m), 6);
      CHECK(r.linear);
      CHECK(r.lambda == Rational::power(q, -m));
    }
    std::vector<Digit> sigma;
    for (int i = q - 1; i >= 0; --i) sigma.push_back(static_cast<Digit>(i));
    auto p = measure_linear_constant(BoundaryMap(q, {LevelPerm{2, sigma}}), 6);
    CHECK(p.linear);
    CHECK(p.lambda == Rational(1));
  }
}

TEST_CASE("unbalanced rewrite is not measure linear") {
  auto phi = unbalanced(2);
  auto r = measure_linear_constant(phi, 4);
  CHECK(!r.linear);
  REQUIRE(r.witness.has_value());
  CHECK(!(r.witness_ratios[0] == r.witness_ratios[1]));
  CHECK_THROWS_AS(measure_linear_constant(phi, 0), Error);
}

TEST_CASE("invalid primitives are rejected") {
  CHECK_THROWS_AS(BoundaryMap(2, {LevelPerm{0, {0, 0}}}), Error);
  CHECK_THROWS_AS(BoundaryMap(2, {PrefixRewrite{0, {{{0}, {0}}, {{1}, {1, 0}}}}}), Error);
  CHECK_THROWS_AS(BoundaryMap(2, {PrefixRewrite{0, {{{0}, {0}}, {{0, 1}, {1}}}}}), Error);
}

TEST_CASE("composition multiplies constants") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 20; ++t) {
    const int q = t % 2 ? 3 : 2;
    auto f = random_measure_linear_map(q, rng), g = random_measure_linear_map(q, rng);
    const int depth = std::max({f.transducer_depth(), g.transducer_depth(), f.after(g).transducer_depth(), 3});
    auto lf = measure_linear_constant(f, depth), lg = measure_linear_constant(g, depth),
         lfg = measure_linear_constant(f.after(g), depth);
    REQUIRE(lf.linear);
    REQUIRE(lg.linear);
    REQUIRE(lfg.linear);
    CHECK(lfg.lambda == lf.lambda * lg.lambda);
    CHECK(lf.lambda == Rational::power(q, -net_shift(f)));
  }
}

TEST_CASE("inverse undoes the map on points and clones") {
  std::mt19937_64 rng(8);
  std::vector<BoundaryMap> maps{BoundaryMap::alpha(2), BoundaryMap::alpha(3, -2), unbalanced(2)};
  for (int t = 0; t < 10; ++t) maps.push_back(random_measure_linear_map(2 + t % 2, rng));
  for (const auto& phi : maps) {
    auto inv = phi.inverse();
    for (int t = 0; t < 30; ++t) {
      auto x = random_series(phi.q(), rng, -3, 8);
      CHECK(inv.apply(phi.apply(x)) == x);
      CHECK(phi.apply(inv.apply(x)) == x);
    }
  }
}

TEST_CASE("clone images contain the images of their points") {
  std::mt19937_64 rng(21);
  std::vector<BoundaryMap> maps{BoundaryMap::alpha(2), unbalanced(2)};
  for (int t = 0; t < 10; ++t) maps.push_back(random_measure_linear_map(2 + t % 2, rng));
  for (const auto& phi : maps) {
    for (int t = 0; t < 40; ++t) {
      auto x = random_series(phi.q(), rng, -4, 10);
      const int level = std::uniform_int_distribution<int>(-3, 6)(rng);
      TreeVertex c(level, x);
      auto im = phi.image(c);
      auto y = phi.apply(x);
      int hits = 0;
      for (const auto& v : im) {
        if (TreeVertex(v.level(), y) == v) ++hits;
        CHECK(std::abs(v.level() - level) <= phi.kappa());
      }
      CHECK(hits == 1);
      if (level >= phi.transducer_depth()) CHECK(im.size() == 1);
    }
  }
}

TEST_CASE("bilipschitz constants") {
  CHECK(BoundaryMap::alpha(2).K() == 2);
  CHECK(BoundaryMap::alpha(3, -2).K() == 9);
  CHECK(BoundaryMap::identity(2).K() == 1);
  CHECK(BoundaryMap::alpha(2).causal());
  CHECK(!BoundaryMap::alpha(2, -1).causal());
}

TEST_CASE("map descriptions") {
  auto a = parse_boundary_map(R"("alpha")", 2);
  CHECK(measure_linear_constant(a, 4).lambda == Rational(1, 2));
  auto maps = parse_boundary_maps(R"(["alpha", "id", ["alpha_inv", {"op":"perm","level":1,"sigma":[1,0]}]])", 2, 3);
  REQUIRE(maps.size() == 3);
  CHECK(maps[1].ops().empty());
  CHECK(maps[2].ops().size() == 2);
  auto rw = parse_boundary_map(R"([{"op":"rewrite","lo":0,"pairs":[[[0],[0,0]],[[1,0],[0,1]],[[1,1],[1]]]}])", 2);
  CHECK(!measure_linear_constant(rw, 3).linear);
  CHECK(parse_boundary_map(to_json(rw), 2).ops().size() == 1);
  CHECK(to_json(parse_boundary_map(to_json(maps[2]), 2)) == to_json(maps[2]));
  CHECK_THROWS_AS(parse_boundary_map("[", 2), Error);
  CHECK_THROWS_AS(parse_boundary_map(R"("beta")", 2), Error);
  CHECK_THROWS_AS(parse_boundary_maps(R"(["id"])", 2, 2), Error);
  CHECK_THROWS_AS(parse_boundary_map(R"([{"op":"perm","level":0,"sigma":[0,0]}])", 2), Error);
  try {
    parse_boundary_map(R"({"op":"twist"})", 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
}
