#include "dlab/qilab.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "dlab/error.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

BoundaryPoint section(const DLVertex& v) {
  BoundaryPoint p;
  for (const auto& c : v.coords) {
    p.streams.push_back(c.digits());
    p.heights.push_back(c.level());
  }
  return p;
}

DLVertex collapse(const DLGraph& g, const BoundaryPoint& p) {
  if (static_cast<int>(p.streams.size()) != g.d() || p.heights.size() != p.streams.size())
    fail(ErrorCode::OutOfDomain, "point needs one stream and one height per tree");
  DLVertex v;
  for (std::size_t i = 0; i < p.streams.size(); ++i) v.coords.emplace_back(p.heights[i], p.streams[i]);
  if (!g.is_vertex(v)) fail(ErrorCode::OutOfDomain, "heights violate the vertex constraints");
  return v;
}

// ---------------------------------------------------------------- Psi

StandardMap::StandardMap(const DLGraph& g, std::vector<BoundaryMap> phis) : g_(g), phis_(std::move(phis)) {
  require(static_cast<int>(phis_.size()) == g_.d(), "need one boundary map per tree");
  for (const auto& p : phis_) require(p.q() == g_.q(), "boundary map alphabet differs from q");
}

DLVertex StandardMap::operator()(const DLVertex& x) const {
  BoundaryPoint p = section(x);
  for (std::size_t i = 0; i < phis_.size(); ++i) p.streams[i] = phis_[i].apply(p.streams[i]);
  return collapse(g_, p);
}

Rational StandardMap::lambda_product() const {
  Rational prod(1);
  for (const auto& phi : phis_) {
    auto m = measure_linear_constant(phi, std::max(phi.transducer_depth(), phi.window_lo() + 2));
    if (!m.linear) fail(ErrorCode::InvalidArgument, "boundary map " + phi.describe() + " is not measure linear");
    prod = prod * m.lambda;
  }
  return prod;
}

std::int64_t StandardMap::K() const {
  std::int64_t k = 1;
  for (const auto& phi : phis_) k = std::max(k, phi.K());
  return k;
}

int StandardMap::default_r() const {
  int kappa = 0;
  for (const auto& phi : phis_) kappa = std::max(kappa, phi.kappa());
  return std::max(1, kappa);
}

// ---------------------------------------------------------------- fiber audit

namespace {

std::uint64_t checked_pow(int q, int e, std::uint64_t cap, const char* what) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    r *= static_cast<std::uint64_t>(q);
    if (r > cap) fail(ErrorCode::BudgetExceeded, std::string(what) + " exceeds the budget");
  }
  return r;
}

std::size_t point_index(const HeightCube& c, const std::vector<int>& v) {
  std::size_t idx = 0;
  for (int i = 0; i < c.axes(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    const auto len = static_cast<std::size_t>((c.hi[u] - c.lo[u]) / c.step(i) + 1);
    idx = idx * len + static_cast<std::size_t>((v[u] - c.lo[u]) / c.step(i));
  }
  return idx;
}

TreeVertex common_ancestor(const std::vector<TreeVertex>& clones) {
  TreeVertex a = clones.front();
  for (const auto& c : clones)
    while (!c.descends_from(a)) a = a.parent();
  return a;
}

// Vertex with heights v whose coordinates descend from the anchors, indexed
// by the concatenated path digits below the anchors.
DLVertex anchored_vertex(int q, const std::vector<TreeVertex>& anchors, const std::vector<int>& v, std::uint64_t index,
                         int depth) {
  std::vector<Digit> path(static_cast<std::size_t>(depth));
  for (int i = depth - 1; i >= 0; --i) {
    path[static_cast<std::size_t>(i)] = static_cast<Digit>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  DLVertex x;
  std::size_t pos = 0;
  int total = 0;
  for (int h : v) total += h;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const int h = i < v.size() ? v[i] : -total;
    TreeVertex t = anchors[i];
    for (int s = t.level(); s < h; ++s) t = t.child(path[pos++]);
    x.coords.push_back(std::move(t));
  }
  return x;
}

}  // namespace

FiberAudit fiber_count_audit(const StandardMap& psi, const Box& box, const FiberAuditOptions& opt) {
  const DLGraph& g = psi.graph();
  validate_box(g, box);
  FiberAudit a;
  a.r = opt.r > 0 ? opt.r : psi.default_r();
  a.K = psi.K();
  a.inv_lambda = Rational(1) / psi.lambda_product();

  // Preimages of box vertices have the same heights, and coordinate i of a
  // preimage lies in phi_i^-1(C(root_i)); these anchors enclose all of them.
  std::vector<TreeVertex> anchors;
  for (std::size_t i = 0; i < box.roots.size(); ++i) {
    TreeVertex anc = common_ancestor(psi.phis()[i].inverse().image(box.roots[i]));
    if (anc.level() > box.roots[i].level()) anc = anc.ancestor(anc.level() - box.roots[i].level());
    if (opt.margin >= 0) {
      TreeVertex given = box.roots[i].ancestor(opt.margin);
      if (!anc.descends_from(given))
        fail(ErrorCode::OutOfDomain, "evaluation region too small: tree " + std::to_string(i + 1) + " needs anchor " +
                                         anc.key() + " outside the margin of " + std::to_string(opt.margin));
      anc = given;
    }
    anchors.push_back(std::move(anc));
  }
  int depth = 0;
  for (const auto& anc : anchors) depth -= anc.level();
  const auto points = box.cube.points();
  const std::uint64_t per_point = checked_pow(g.q(), depth, opt.max_region, "preimage region");
  const std::uint64_t region = per_point * points.size();
  if (region > opt.max_region) fail(ErrorCode::BudgetExceeded, "preimage region exceeds the budget");
  a.region_size = static_cast<std::size_t>(region);

  const std::size_t fsize = fiber_size(g, box);
  a.box_size = points.size() * fsize;
  std::vector<std::vector<std::uint32_t>> parts(chunk_count(a.region_size, opt.workers));
  parallel_chunks(a.region_size, opt.workers, [&](std::size_t c, std::size_t b, std::size_t e) {
    auto& hist = parts[c];
    hist.assign(a.box_size, 0);
    for (std::size_t i = b; i < e; ++i) {
      const auto& v = points[i / per_point];
      DLVertex y = anchored_vertex(g.q(), anchors, v, i % per_point, depth);
      DLVertex x = psi(y);
      if (!box_contains(box, x)) continue;
      ++hist[point_index(box.cube, v) * fsize + fiber_index(g, box, x)];
    }
  });
  a.counts.assign(a.box_size, 0);
  for (const auto& hist : parts)
    for (std::size_t i = 0; i < hist.size(); ++i) a.counts[i] += hist[i];

  for (auto c : a.counts) {
    a.fiber_sum += c;
    ++a.histogram[c];
  }
  const auto bd = lattice_boundary(g, box.cube, a.r);
  a.boundary_size = bd.size() * fsize;
  std::vector<bool> on_boundary(points.size(), false);
  for (const auto& v : bd) on_boundary[point_index(box.cube, v)] = true;
  a.interior_min = UINT32_MAX;
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (on_boundary[p]) continue;
    for (std::size_t f = 0; f < fsize; ++f) {
      const auto c = a.counts[p * fsize + f];
      ++a.interior_size;
      a.interior_sum += c;
      a.interior_min = std::min(a.interior_min, c);
      a.interior_max = std::max(a.interior_max, c);
    }
  }
  if (a.interior_size == 0) a.interior_min = 0;
  a.interior_exact = a.interior_size > 0 && a.inv_lambda.den() == 1 &&
                     a.interior_min == static_cast<std::uint32_t>(a.inv_lambda.num()) &&
                     a.interior_max == a.interior_min;

  const Rational S(static_cast<std::int64_t>(a.box_size)), dS(static_cast<std::int64_t>(a.boundary_size));
  const Rational Kd = Rational::power(a.K, g.d());
  a.lower = a.inv_lambda * (S - dS);
  a.upper = a.inv_lambda * S + Kd * dS;
  const Rational sum(static_cast<std::int64_t>(a.fiber_sum));
  a.lower_ok = a.lower <= sum;
  a.upper_ok = sum <= a.upper;
  return a;
}

// ---------------------------------------------------------------- chain scan

std::vector<ChainRecord> uf_chain_scan(const StandardMap& psi, int k, const std::vector<int>& hs, int r,
                                       const FiberAuditOptions& opt) {
  require(k >= 1, "chain multiplicity must be positive");
  std::vector<ChainRecord> rows;
  for (int h : hs) {
    Box b = standard_box(psi.graph(), h);
    FiberAuditOptions o = opt;
    o.r = r;
    auto audit = fiber_count_audit(psi, b, o);
    ChainRecord rec;
    rec.h = h;
    rec.box_size = audit.box_size;
    rec.boundary_size = audit.boundary_size;
    rec.chain_sum = static_cast<std::int64_t>(audit.fiber_sum) - static_cast<std::int64_t>(k) * static_cast<std::int64_t>(audit.box_size);
    rows.push_back(rec);
  }
  return rows;
}

std::string chain_csv(const std::vector<ChainRecord>& rows) {
  std::string out = "h,box_size,boundary_size,chain_sum,ratio_boundary,ratio_box\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%zu,%zu,%lld,%.6f,%.6f\n", r.h, r.box_size, r.boundary_size,
                  static_cast<long long>(r.chain_sum), r.ratio_boundary().to_double(), r.ratio_box().to_double());
    out += buf;
  }
  return out;
}

// ---------------------------------------------------------------- umap

UMap::UMap(const DLGraph& g, int k, Box region) : g_(g), k_(k), region_(std::move(region)) {
  require(g_.k() == 1, "the k-to-1 map starts from DL_d(q) with k = 1");
  require(k_ >= 1, "k must be positive");
  validate_box(g_, region_);
  require(region_.cube.lo[0] % k_ == 0, "region must start in kZ on axis 1");
  for (int i = 0; i < region_.cube.axes(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    require((region_.cube.hi[u] - region_.cube.lo[u] + 1) % k_ == 0,
            "region side is not a whole number of k-tiles on axis " + std::to_string(i + 1));
  }
}

Box UMap::standard_region(const DLGraph& g, int k, int tiles) {
  require(tiles >= 1, "need at least one tile per axis");
  const int n = g.d() - 1;
  std::vector<int> lo(static_cast<std::size_t>(n), -k * (tiles / 2));
  Box b;
  b.cube = cube(n, lo, k * tiles - 1, g.k());
  for (int i = 0; i < n; ++i) b.roots.emplace_back(lo[static_cast<std::size_t>(i)]);
  int top = 0;
  for (int h : b.cube.hi) top += h;
  b.roots.emplace_back(-top);
  return b;
}

DLVertex UMap::operator()(const DLVertex& x) const {
  if (!box_contains(region_, x)) fail(ErrorCode::OutOfDomain, "vertex outside the tiled region");
  auto v = g_.rho(x);
  Box tile = box_containing(g_, tile_cube(region_.cube, k_, v), x);
  std::vector<int> vbar = v;
  vbar[0] = tile.cube.lo[0];
  return fiber_vertex(g_, tile, vbar, fiber_index(g_, tile, x));
}

UMapAudit umap_audit(const UMap& u, int workers) {
  const DLGraph& g = u.graph();
  UMapAudit a;
  auto members = box_enumerate(g, u.region());
  a.region_size = members.size();
  std::vector<DLVertex> images(members.size());
  std::vector<int> disp(members.size(), 0);
  parallel_chunks(members.size(), workers, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      images[i] = u(members[i]);
      disp[i] = distance(g, members[i], images[i], 4 * u.k() * g.d() + 8);
    }
  });
  DLGraph gk({g.d(), g.q(), u.k()});
  VertexMap<std::size_t> hits;
  a.images_valid = true;
  for (std::size_t i = 0; i < images.size(); ++i) {
    ++hits[images[i]];
    if (!gk.is_vertex(images[i]) || !box_contains(u.region(), images[i])) a.images_valid = false;
    a.max_displacement = std::max(a.max_displacement, disp[i]);
  }
  a.image_size = hits.size();
  a.min_preimages = SIZE_MAX;
  for (const auto& [v, n] : hits) {
    a.min_preimages = std::min(a.min_preimages, n);
    a.max_preimages = std::max(a.max_preimages, n);
  }
  bool targets_hit = true;
  for (const auto& x : members)
    if (x.height(0) % u.k() == 0) {
      ++a.target_size;
      if (!hits.count(x)) targets_hit = false;
    }
  a.exact = a.images_valid && targets_hit && a.image_size == a.target_size &&
            a.min_preimages == static_cast<std::size_t>(u.k()) && a.max_preimages == static_cast<std::size_t>(u.k());
  return a;
}

// ---------------------------------------------------------------- distortion

Distortion distortion_from_images(const DLGraph& domain, const DLGraph& codomain, const std::vector<DLVertex>& points,
                                  const std::vector<DLVertex>& images, std::size_t samples, std::uint64_t seed,
                                  const DLGraph* displacement_graph, int max_distance) {
  require(points.size() == images.size(), "one image per point");
  require(points.size() >= 2, "need at least two points");
  Distortion out;
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> dists;
  std::set<Rational> candidates{Rational(1)};
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t i = rng() % points.size();
    std::size_t j = rng() % (points.size() - 1);
    if (j >= i) ++j;
    const int dx = distance(domain, points[i], points[j], max_distance);
    const int dy = distance(codomain, images[i], images[j], max_distance);
    dists.emplace_back(dx, dy);
    if (dx > 0 && dy > 0) {
      candidates.insert(std::max(Rational(dy, dx), Rational(dx, dy)));
    } else if (dx > 0 || dy > 0) {
      candidates.insert(Rational(std::max(dx, dy)));
    }
  }
  out.pairs = dists.size();
  // Smallest C for each candidate K; keep the pair with least K + C.
  bool first = true;
  for (const auto& K : candidates) {
    Rational C(0);
    for (auto [dx, dy] : dists) {
      const Rational X(dx), Y(dy);
      C = std::max({C, Y - K * X, X / K - Y});
    }
    if (first || K + C < out.K_est + out.C_est) {
      out.K_est = K;
      out.C_est = C;
      first = false;
    }
  }
  if (displacement_graph) {
    out.max_displacement = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
      out.max_displacement = std::max(out.max_displacement, distance(*displacement_graph, points[i], images[i], max_distance));
  }
  return out;
}

}  // namespace dlab
