#include "dlab/box.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "dlab/error.hpp"

namespace dlab {

namespace {

int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

int sum(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

std::uint64_t pow_q(int q, int e) {
  require(e >= 0, "negative exponent");
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(q))
      fail(ErrorCode::BudgetExceeded, "fiber too large to index");
    r *= static_cast<std::uint64_t>(q);
  }
  return r;
}

// Tree levels below root i occupied by coordinate i at height point v.
std::vector<int> fiber_steps(const Box& b, const std::vector<int>& v) {
  const int n = b.cube.axes();
  std::vector<int> steps(static_cast<std::size_t>(n + 1));
  for (int i = 0; i < n; ++i) steps[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] - b.cube.lo[static_cast<std::size_t>(i)];
  steps[static_cast<std::size_t>(n)] = sum(b.cube.hi) - sum(v);
  return steps;
}

}  // namespace

bool HeightCube::contains(const std::vector<int>& v) const {
  if (static_cast<int>(v.size()) != axes()) return false;
  for (int i = 0; i < axes(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (v[u] < lo[u] || v[u] > hi[u]) return false;
    if ((v[u] - lo[u]) % step(i) != 0) return false;
  }
  return true;
}

std::size_t HeightCube::size() const {
  std::size_t n = 1;
  for (int i = 0; i < axes(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    n *= static_cast<std::size_t>((hi[u] - lo[u]) / step(i) + 1);
  }
  return n;
}

std::vector<std::vector<int>> HeightCube::points() const {
  std::vector<std::vector<int>> out;
  out.reserve(size());
  std::vector<int> v = lo;
  for (;;) {
    out.push_back(v);
    int i = axes() - 1;
    for (; i >= 0; --i) {
      const auto u = static_cast<std::size_t>(i);
      v[u] += step(i);
      if (v[u] <= hi[u]) break;
      v[u] = lo[u];
    }
    if (i < 0) break;
  }
  return out;
}

int HeightCube::fiber_depth() const { return sum(hi) - sum(lo); }

HeightCube cube(int axes, const std::vector<int>& lo, int h, int k) {
  require(static_cast<int>(lo.size()) == axes, "cube corner has the wrong dimension");
  HeightCube c;
  c.lo = lo;
  c.hi = lo;
  for (int& x : c.hi) x += h;
  c.k = k;
  return c;
}

void validate_box(const DLGraph& g, const Box& b) {
  const int n = g.d() - 1;
  require(b.cube.axes() == n && static_cast<int>(b.cube.hi.size()) == n, "cube dimension must be d-1");
  require(b.cube.k == g.k(), "cube congruence differs from the graph's k");
  require(static_cast<int>(b.roots.size()) == g.d(), "box needs d roots");
  for (int i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    require(b.cube.lo[u] <= b.cube.hi[u], "empty cube interval");
    require(b.roots[u].level() == b.cube.lo[u], "root level does not match the cube");
  }
  require(b.cube.lo[0] % g.k() == 0 && b.cube.hi[0] % g.k() == 0, "axis 0 of the cube must lie in kZ");
  require(b.roots[static_cast<std::size_t>(n)].level() == -sum(b.cube.hi), "last root level must be -sum(hi)");
}

Box standard_box(const DLGraph& g, int h) {
  require(h >= 0, "box side must be nonnegative");
  require(h % g.k() == 0, "box side must be a multiple of k");
  const int n = g.d() - 1;
  std::vector<int> lo(static_cast<std::size_t>(n), -(h / 2));
  lo[0] = g.k() * floor_div(lo[0], g.k());
  Box b;
  b.cube = cube(n, lo, h, g.k());
  for (int i = 0; i < n; ++i) b.roots.emplace_back(lo[static_cast<std::size_t>(i)]);
  b.roots.emplace_back(-sum(b.cube.hi));
  return b;
}

Box box_containing(const DLGraph& g, const HeightCube& c, const DLVertex& x) {
  require(c.contains(g.rho(x)), "vertex height outside the cube");
  Box b;
  b.cube = c;
  for (int i = 0; i < c.axes(); ++i)
    b.roots.push_back(x.coords[static_cast<std::size_t>(i)].ancestor(x.height(i) - c.lo[static_cast<std::size_t>(i)]));
  const auto& last = x.coords.back();
  b.roots.push_back(last.ancestor(last.level() + sum(c.hi)));
  validate_box(g, b);
  return b;
}

bool box_contains(const Box& b, const DLVertex& x) {
  if (x.coords.size() != b.roots.size()) return false;
  std::vector<int> v;
  for (int i = 0; i < b.cube.axes(); ++i) v.push_back(x.height(i));
  if (!b.cube.contains(v)) return false;
  for (std::size_t i = 0; i < b.roots.size(); ++i)
    if (!x.coords[i].descends_from(b.roots[i])) return false;
  return true;
}

std::size_t fiber_size(const DLGraph& g, const Box& b) {
  return static_cast<std::size_t>(pow_q(g.q(), b.cube.fiber_depth()));
}

std::size_t box_size(const DLGraph& g, const Box& b) { return b.cube.size() * fiber_size(g, b); }

std::uint64_t fiber_index(const DLGraph& g, const Box& b, const DLVertex& x) {
  require(box_contains(b, x), "vertex is not in the box");
  pow_q(g.q(), b.cube.fiber_depth());
  std::vector<Digit> path;
  for (std::size_t i = 0; i < b.roots.size(); ++i) x.coords[i].append_path(b.roots[i].level(), path);
  std::uint64_t idx = 0;
  for (Digit a : path) idx = idx * static_cast<std::uint64_t>(g.q()) + a;
  return idx;
}

DLVertex fiber_vertex(const DLGraph& g, const Box& b, const std::vector<int>& v, std::uint64_t index) {
  require(b.cube.contains(v), "height point outside the cube");
  const int depth = b.cube.fiber_depth();
  require(index < pow_q(g.q(), depth), "fiber index out of range");
  std::vector<Digit> path(static_cast<std::size_t>(depth));
  for (int i = depth - 1; i >= 0; --i) {
    path[static_cast<std::size_t>(i)] = static_cast<Digit>(index % static_cast<std::uint64_t>(g.q()));
    index /= static_cast<std::uint64_t>(g.q());
  }
  DLVertex x;
  std::size_t pos = 0;
  for (int s : fiber_steps(b, v)) {
    TreeVertex t = b.roots[x.coords.size()];
    for (int j = 0; j < s; ++j) t = t.child(path[pos++]);
    x.coords.push_back(std::move(t));
  }
  return x;
}

std::vector<DLVertex> box_fiber(const DLGraph& g, const Box& b, const std::vector<int>& v) {
  require(b.cube.contains(v), "height point outside the cube");
  const auto n = pow_q(g.q(), b.cube.fiber_depth());
  std::vector<DLVertex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(fiber_vertex(g, b, v, i));
  return out;
}

std::vector<DLVertex> box_enumerate(const DLGraph& g, const Box& b) {
  std::vector<DLVertex> out;
  out.reserve(box_size(g, b));
  for (const auto& v : b.cube.points())
    for (auto& x : box_fiber(g, b, v)) out.push_back(std::move(x));
  return out;
}

std::vector<std::vector<int>> lattice_boundary(const DLGraph& g, const HeightCube& c, int r) {
  require(r >= 1, "boundary radius must be at least 1");
  const auto moves = g.rho_moves();
  std::vector<std::vector<int>> out;
  for (const auto& start : c.points()) {
    std::set<std::vector<int>> seen{start};
    std::deque<std::pair<std::vector<int>, int>> queue{{start, 0}};
    bool hit = false;
    while (!queue.empty() && !hit) {
      auto [p, dist] = queue.front();
      queue.pop_front();
      if (dist == r) continue;
      for (const auto& m : moves) {
        auto nxt = p;
        for (std::size_t i = 0; i < nxt.size(); ++i) nxt[i] += m[i];
        if (!c.contains(nxt)) {
          hit = true;
          break;
        }
        if (seen.insert(nxt).second) queue.emplace_back(std::move(nxt), dist + 1);
      }
    }
    if (hit) out.push_back(start);
  }
  return out;
}

std::vector<DLVertex> box_boundary(const DLGraph& g, const Box& b, int r) {
  validate_box(g, b);
  std::vector<DLVertex> out;
  for (const auto& v : lattice_boundary(g, b.cube, r))
    for (auto& x : box_fiber(g, b, v)) out.push_back(std::move(x));
  return out;
}

std::size_t box_boundary_size(const DLGraph& g, const Box& b, int r) {
  validate_box(g, b);
  return lattice_boundary(g, b.cube, r).size() * fiber_size(g, b);
}

FolnerRecord folner_record(const DLGraph& g, int h, int r) {
  Box b = standard_box(g, h);
  FolnerRecord rec;
  rec.h = h;
  rec.r = r;
  rec.lattice_size = b.cube.size();
  rec.lattice_boundary = lattice_boundary(g, b.cube, r).size();
  rec.box_size = box_size(g, b);
  rec.boundary_size = rec.lattice_boundary * fiber_size(g, b);
  return rec;
}

// ---------------------------------------------------------------- tiling

namespace {

void check_tiling(const Box& region, int h) {
  const auto& c = region.cube;
  require(h >= 1, "tile side must be positive");
  for (int i = 0; i < c.axes(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    require(h % c.step(i) == 0, "tile side must be a multiple of k");
    require((c.hi[u] - c.lo[u] + c.step(i)) % h == 0,
            "region side is not a whole number of tiles on axis " + std::to_string(i));
  }
}

}  // namespace

HeightCube tile_cube(const HeightCube& region, int h, const std::vector<int>& v) {
  require(region.contains(v), "height point outside the region");
  HeightCube t;
  t.k = region.k;
  for (int i = 0; i < region.axes(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    const int a = region.lo[u] + floor_div(v[u] - region.lo[u], h) * h;
    t.lo.push_back(a);
    t.hi.push_back(a + h - region.step(i));
  }
  return t;
}

std::size_t tiles_per_cube(const DLGraph& g, const Box& region, int h) {
  check_tiling(region, h);
  int excess = 0;
  for (int i = 0; i < region.cube.axes(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    excess += (region.cube.hi[u] - region.cube.lo[u]) - (h - region.cube.step(i));
  }
  return static_cast<std::size_t>(pow_q(g.q(), excess));
}

std::vector<Box> tile(const DLGraph& g, const Box& region, int h) {
  validate_box(g, region);
  check_tiling(region, h);
  // Tile corners: every lattice point of the region whose offsets are multiples of h.
  std::vector<Box> out;
  for (const auto& p : region.cube.points()) {
    bool corner = true;
    for (std::size_t i = 0; i < p.size(); ++i)
      if ((p[i] - region.cube.lo[i]) % h != 0) corner = false;
    if (!corner) continue;
    HeightCube t = tile_cube(region.cube, h, p);
    std::vector<std::vector<TreeVertex>> choices;
    for (int i = 0; i < t.axes(); ++i)
      choices.push_back(region.roots[static_cast<std::size_t>(i)].descendants(
          g.q(), t.lo[static_cast<std::size_t>(i)] - region.cube.lo[static_cast<std::size_t>(i)]));
    choices.push_back(region.roots.back().descendants(g.q(), sum(region.cube.hi) - sum(t.hi)));
    std::vector<std::size_t> idx(choices.size(), 0);
    bool more = true;
    while (more) {
      Box b;
      b.cube = t;
      for (std::size_t i = 0; i < choices.size(); ++i) b.roots.push_back(choices[i][idx[i]]);
      out.push_back(std::move(b));
      more = false;
      for (std::size_t i = choices.size(); i-- > 0;) {
        if (++idx[i] < choices[i].size()) {
          more = true;
          break;
        }
        idx[i] = 0;
      }
    }
  }
  return out;
}

}  // namespace dlab
