#include <doctest.h>

#include <random>
#include <set>

#include "dlab/dlgraph.hpp"
#include "dlab/error.hpp"

using namespace dlab;

namespace {

DLVertex random_vertex(const DLGraph& g, std::mt19937_64& rng, int steps) {
  DLVertex v = g.base();
  for (int s = 0; s < steps; ++s) {
    auto n = g.neighbors(v);
    v = n[std::uniform_int_distribution<std::size_t>(0, n.size() - 1)(rng)];
  }
  return v;
}

std::size_t binom(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

TEST_CASE("tree parent and children") {
  TreeVertex root;
  auto kids = root.children(2);
  REQUIRE(kids.size() == 2);
  CHECK(kids[0].digit(1) == 0);
  CHECK(kids[1].digit(1) == 1);
  for (const auto& c : kids) {
    CHECK(c.level() == 1);
    CHECK(c.parent() == root);
  }
  CHECK(root.descendants(3, 3).size() == 27);
  std::set<TreeVertex> distinct;
  for (const auto& v : root.descendants(3, 3)) distinct.insert(v);
  CHECK(distinct.size() == 27);

  TreeVertex deep = root.child(1).child(0).child(2);
  CHECK(deep.ancestor(3) == root);
  CHECK(deep.descends_from(root.child(1)));
  CHECK(!deep.descends_from(root.child(0)));
  CHECK(deep.parent().parent().parent().parent().level() == -1);
  CHECK(deep.key() == "3/1:102");
}

TEST_CASE("degrees match the move count") {
  for (auto [d, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    DLGraph g({d, q, 1});
    CHECK(g.degree() == static_cast<std::size_t>(d * (d - 1) * q));
    for (const auto& layer : bfs_layers(g, g.base(), 3))
      for (const auto& v : layer) {
        auto n = g.neighbors(v);
        CHECK(n.size() == g.degree());
        CHECK(VertexSet(n.begin(), n.end()).size() == n.size());
      }
  }
}

TEST_CASE("index-k neighbor counts") {
  for (auto [d, q, k] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {2, 2, 3}, {3, 2, 2}, {3, 3, 2}, {4, 2, 3}}) {
    DLGraph g({d, q, k});
    std::size_t qk = 1;
    for (int i = 0; i < k; ++i) qk *= static_cast<std::size_t>(q);
    const std::size_t expect = static_cast<std::size_t>((d - 1) * (d - 2) * q) + 2 * qk * binom(k + d - 2, d - 2);
    CHECK(g.degree() == expect);
    std::mt19937_64 rng(static_cast<unsigned>(d * 100 + q * 10 + k));
    for (int t = 0; t < 5; ++t) {
      auto v = random_vertex(g, rng, 6);
      auto n = g.neighbors(v);
      CHECK(n.size() == expect);
      CHECK(VertexSet(n.begin(), n.end()).size() == n.size());
      for (const auto& w : n) {
        CHECK(g.is_vertex(w));
        CHECK(g.adjacent(v, w));
        CHECK(g.adjacent(w, v));
      }
    }
  }
}

TEST_CASE("adjacency agrees with neighbor lists over a ball") {
  for (auto p : std::vector<DLParams>{{2, 2, 1}, {3, 2, 1}, {2, 2, 2}, {3, 2, 2}}) {
    DLGraph g(p);
    auto b = ball(g, g.base(), 2);
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges(b.edges.begin(), b.edges.end());
    for (std::uint32_t i = 0; i < b.vertices.size(); ++i) {
      CHECK(!g.adjacent(b.vertices[i], b.vertices[i]));
      for (std::uint32_t j = i + 1; j < b.vertices.size(); ++j) {
        const bool a = g.adjacent(b.vertices[i], b.vertices[j]);
        CHECK(a == g.adjacent(b.vertices[j], b.vertices[i]));
        CHECK(a == (edges.count({i, j}) == 1));
      }
    }
  }
}

TEST_CASE("rho and height conservation") {
  DLGraph g({3, 2, 1});
  CHECK(g.rho(g.base()) == std::vector<int>{0, 0});
  DLVertex v = g.base();
  v.coords[0] = v.coords[0].child(0);
  v.coords[2] = v.coords[2].parent();
  CHECK(g.is_vertex(v));
  CHECK(g.adjacent(g.base(), v));
  CHECK(g.rho(v) == std::vector<int>{1, 0});

  DLGraph g4({4, 2, 1});
  DLVertex w = g4.base();
  w.coords[1] = w.coords[1].child(1);
  w.coords[2] = w.coords[2].parent();
  CHECK(g4.adjacent(g4.base(), w));
  CHECK(g4.rho(w) == std::vector<int>{0, 1, -1});

  DLGraph gk({3, 2, 2});
  for (const auto& layer : bfs_layers(gk, gk.base(), 3))
    for (const auto& x : layer) {
      CHECK(gk.is_vertex(x));
      CHECK(x.height(0) % 2 == 0);
    }
}

TEST_CASE("rho moves are the height displacements of edges") {
  for (auto p : std::vector<DLParams>{{2, 2, 1}, {3, 2, 1}, {3, 2, 2}, {4, 2, 3}}) {
    DLGraph g(p);
    std::set<std::vector<int>> seen;
    const auto base = g.rho(g.base());
    for (const auto& n : g.neighbors(g.base())) {
      auto r = g.rho(n);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= base[i];
      seen.insert(r);
    }
    auto moves = g.rho_moves();
    CHECK(std::set<std::vector<int>>(moves.begin(), moves.end()) == seen);
  }
}

TEST_CASE("balls") {
  DLGraph g({2, 2, 1});
  auto b0 = ball(g, g.base(), 0);
  CHECK(b0.vertices.size() == 1);
  CHECK(b0.edges.empty());
  auto b1 = ball(g, g.base(), 1);
  CHECK(b1.vertices.size() == 5);
  CHECK(b1.edges.size() == 4);
  CHECK(std::is_sorted(b1.keys.begin(), b1.keys.end()));

  BallOptions tight;
  tight.max_vertices = 10;
  CHECK_THROWS_AS(ball(g, g.base(), 4, tight), Error);
}

TEST_CASE("sphere sizes do not depend on the center") {
  for (auto [d, r] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}}) {
    DLGraph g({d, 2, 1});
    auto ref = sphere_sizes(g, g.base(), r);
    std::mt19937_64 rng(static_cast<unsigned>(d));
    for (int t = 0; t < 3; ++t) CHECK(sphere_sizes(g, random_vertex(g, rng, 7), r) == ref);
  }
}

TEST_CASE("parallel ball matches serial ball") {
  DLGraph g({3, 2, 1});
  BallOptions par;
  par.workers = 4;
  auto a = ball(g, g.base(), 3);
  auto b = ball(g, g.base(), 3, par);
  CHECK(a.keys == b.keys);
  CHECK(a.edges == b.edges);
  CHECK(export_json(a) == export_json(b));
  CHECK(export_dot(a) == export_dot(b));
}

TEST_CASE("bidirectional distance agrees with BFS layers") {
  DLGraph g({2, 2, 1});
  auto layers = bfs_layers(g, g.base(), 4);
  for (std::size_t r = 0; r < layers.size(); ++r)
    for (std::size_t i = 0; i < layers[r].size(); i += 7) CHECK(distance(g, g.base(), layers[r][i], 10) == static_cast<int>(r));
  CHECK_THROWS_AS(distance(g, g.base(), layers[4][0], 3), Error);
}

TEST_CASE("export formats") {
  DLGraph g({2, 2, 1});
  auto b = ball(g, g.base(), 1);
  auto dot = export_dot(b);
  CHECK(dot.rfind("graph dl {", 0) == 0);
  CHECK(dot.find("n0 -- ") != std::string::npos);
  auto json = export_json(b);
  CHECK(json.find("\"edges\"") != std::string::npos);
  CHECK(json.find("\"heights\"") != std::string::npos);
}
