#include "dlab/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <random>
#include <set>

#include "dlab/error.hpp"
#include "dlab/group.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

namespace {

std::string fmt(const char* f, long long a = 0, long long b = 0, long long c = 0, long long d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::string params_tag(const SuiteConfig& c) {
  return fmt("d=%lld q=%lld k=%lld", c.d, c.q, c.k);
}

Rational rabs(const Rational& x) { return x < Rational(0) ? -x : x; }

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Component of rho^-1(cube) through `start`, found by walking graph edges.
std::size_t component_size(const DLGraph& g, const HeightCube& cube, const DLVertex& start, std::size_t cap) {
  VertexSet seen{start};
  std::deque<DLVertex> queue{start};
  while (!queue.empty()) {
    DLVertex v = std::move(queue.front());
    queue.pop_front();
    for (auto& n : g.neighbors(v))
      if (cube.contains(g.rho(n)) && seen.insert(n).second) {
        if (seen.size() > cap) return 0;
        queue.push_back(std::move(n));
      }
  }
  return seen.size();
}

}  // namespace

Report verify_counting(const SuiteConfig& c) {
  Report rep{"counting", {}};
  DLGraph g({c.d, c.q, c.k});
  const int h = c.h > 0 ? c.h : 2;
  Box b = standard_box(g, h);
  const std::uint64_t want = ipow(static_cast<std::uint64_t>(c.q), (c.d - 1) * h);
  const auto pts = b.cube.points();
  std::vector<std::size_t> sizes(pts.size());
  parallel_chunks(pts.size(), c.workers, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) sizes[i] = box_fiber(g, b, pts[i]).size();
  });
  std::size_t bad = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (sizes[i] != want) {
      bad = i;
      break;
    }
  std::string detail = params_tag(c) + fmt(" h=%lld fibers=%lld expected=%lld", h, static_cast<long long>(pts.size()),
                                           static_cast<long long>(want));
  if (bad < pts.size()) {
    detail += " counterexample v=(";
    for (std::size_t j = 0; j < pts[bad].size(); ++j) detail += (j ? "," : "") + std::to_string(pts[bad][j]);
    detail += ") size=" + std::to_string(sizes[bad]);
  }
  rep.add("fibers", bad == pts.size(), detail);

  const std::size_t total = box_size(g, b);
  rep.add("size", total == pts.size() * want,
          fmt("|B|=%lld |V_h|=%lld", static_cast<long long>(total), static_cast<long long>(pts.size())));

  const std::size_t comp = component_size(g, b.cube, box_fiber(g, b, pts.front()).front(), 2 * total + 1);
  rep.add("component", comp == total, fmt("component=%lld", static_cast<long long>(comp)));
  return rep;
}

Report verify_folner(const SuiteConfig& c) {
  Report rep{"folner", {}};
  DLGraph g({c.d, c.q, c.k});
  const std::vector<int> hs = c.hs.empty() ? std::vector<int>{2, 4, 6} : c.hs;
  const std::vector<int> rs = c.r > 0 ? std::vector<int>{c.r} : std::vector<int>{1, 2};
  for (int r : rs) {
    std::vector<FolnerRecord> recs;
    for (int h : hs) {
      auto f = folner_record(g, h, r);
      recs.push_back(f);
      rep.add(fmt("identity r=%lld h=%lld", r, h), f.ratio() == f.lattice_ratio(),
              params_tag(c) + " box " + std::to_string(f.boundary_size) + "/" + std::to_string(f.box_size) +
                  " lattice " + std::to_string(f.lattice_boundary) + "/" + std::to_string(f.lattice_size));
    }
    bool decreasing = true;
    std::string ratios;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (i && !(recs[i].ratio() < recs[i - 1].ratio())) decreasing = false;
      ratios += (i ? " " : "") + recs[i].ratio().str();
    }
    rep.add(fmt("decay r=%lld", r), decreasing, "ratios " + ratios);
  }
  return rep;
}

Report verify_correspondence(const SuiteConfig& c) {
  Group G(c.q, c.d);
  CayleyOptions opt;
  opt.workers = c.workers;
  Report rep = validate_correspondence(G, c.radius >= 0 ? c.radius : 4, {}, opt);
  rep.suite = "correspondence";
  return rep;
}

Report verify_index(const SuiteConfig& c) {
  Report rep{"index", {}};
  Group G(c.q, c.d);
  const int k = c.k;
  const int radius = c.radius >= 0 ? c.radius : k;
  CayleyOptions opt;
  opt.workers = c.workers;
  auto ball = cayley_ball(G, radius, opt);
  std::set<int> cosets;
  for (const auto& e : ball.elements) cosets.insert(coset_index(e, k));
  rep.add("cosets", static_cast<int>(cosets.size()) == k,
          fmt("k=%lld radius=%lld cosets=%lld", k, radius, static_cast<long long>(cosets.size())));

  // g and f lie in one coset iff g^-1 f is a member.
  const std::size_t n = std::min<std::size_t>(ball.elements.size(), 300);
  bool law = true;
  std::string where;
  for (std::size_t i = 0; i < n && law; ++i)
    for (std::size_t j = 0; j < n && law; ++j) {
      const auto& a = ball.elements[i];
      const auto& b = ball.elements[j];
      const bool same = coset_index(a, k) == coset_index(b, k);
      if (same != subgroup_membership(G.multiply(G.invert(a), b), k)) {
        law = false;
        where = a.key() + " " + b.key();
      }
    }
  rep.add("coset-law", law, law ? fmt("pairs=%lld", static_cast<long long>(n * n)) : where);

  bool closed = true;
  for (const auto& s : G.subgroup_generators(k))
    if (!subgroup_membership(s.element, k)) {
      closed = false;
      where = s.label;
    }
  rep.add("generators", closed, closed ? fmt("count=%lld", static_cast<long long>(G.subgroup_generators(k).size()))
                                       : "non-member " + where);
  return rep;
}

Report verify_subgroup(const SuiteConfig& c) {
  Report rep{"subgroup", {}};
  Group G(c.q, c.d);
  const int radius = c.radius >= 0 ? c.radius : 3;
  CayleyOptions opt;
  opt.workers = c.workers;
  auto res = subgroup_reachability(G, c.k, radius, opt);
  std::string detail = fmt("k=%lld radius=%lld members=%lld reached=%lld", c.k, radius,
                           static_cast<long long>(res.members), static_cast<long long>(res.reached));
  detail += " max_cost=" + std::to_string(res.max_cost) + " budget=" + std::to_string(c.k * radius);
  if (!res.missing.empty()) detail += " missing " + res.missing.front().key();
  rep.add("reach", res.missing.empty(), detail);
  return rep;
}

Report verify_umap(const SuiteConfig& c) {
  Report rep{"umap", {}};
  const int k = c.k > 1 ? c.k : 2;
  const int tiles = c.h > 0 ? c.h : 4;
  DLGraph g({c.d, c.q, 1});
  UMap u(g, k, UMap::standard_region(g, k, tiles));
  auto a = umap_audit(u, c.workers);
  const int side = k * tiles;
  rep.add("side", side >= 3 * k, fmt("k=%lld side=%lld", k, side));
  rep.add("exact", a.exact,
          fmt("region=%lld image=%lld target=%lld", static_cast<long long>(a.region_size),
              static_cast<long long>(a.image_size), static_cast<long long>(a.target_size)) +
              fmt(" preimages=%lld..%lld", static_cast<long long>(a.min_preimages),
                  static_cast<long long>(a.max_preimages)));
  rep.add("images", a.images_valid, "index graph degree " + std::to_string(DLGraph({c.d, c.q, k}).degree()));
  rep.add("displacement", a.max_displacement >= 0, fmt("max=%lld", a.max_displacement));
  return rep;
}

std::string default_map_json(int d) {
  std::string s = "[";
  for (int i = 0; i < d; ++i) s += i + 1 < d ? "\"alpha\"," : "\"id\"";
  return s + "]";
}

StandardMap standard_map_from(const DLGraph& g, const std::string& map_json) {
  const auto& p = g.params();
  return StandardMap(g, parse_boundary_maps(map_json.empty() ? default_map_json(p.d) : map_json, p.q, p.d));
}

Report verify_fibers(const SuiteConfig& c) {
  Report rep{"fibers", {}};
  DLGraph g({c.d, c.q, 1});
  StandardMap psi = standard_map_from(g, c.map);
  FiberAuditOptions opt;
  opt.r = c.r > 0 ? c.r : 0;
  opt.workers = c.workers;
  const int h = c.h > 0 ? c.h : 4;
  auto a = fiber_count_audit(psi, standard_box(g, h), opt);
  std::string nums = fmt("h=%lld r=%lld K=%lld", h, a.r, a.K) + " 1/lambda=" + a.inv_lambda.str();
  rep.add("lower", a.lower_ok, nums + " lower=" + a.lower.str() + " sum=" + std::to_string(a.fiber_sum));
  rep.add("upper", a.upper_ok, "sum=" + std::to_string(a.fiber_sum) + " upper=" + a.upper.str());
  bool causal = true;
  for (const auto& phi : psi.phis()) causal = causal && phi.causal();
  std::string inner = fmt("interior=%lld min=%lld max=%lld", static_cast<long long>(a.interior_size),
                          a.interior_min, a.interior_max);
  if (causal)
    rep.add("interior", a.interior_exact, inner);
  else
    rep.add("interior-average", a.interior_average() == a.inv_lambda, inner + " average=" + a.interior_average().str());
  return rep;
}

Report verify_measure(const SuiteConfig& c) {
  Report rep{"measure", {}};
  const int q = c.q;
  bool shifts = true;
  std::string detail;
  for (int m = -2; m <= 2; ++m) {
    auto r = measure_linear_constant(BoundaryMap::alpha(q, m), 6);
    if (!r.linear || !(r.lambda == Rational::power(q, -m))) shifts = false;
    detail += (m > -2 ? " " : "") + r.lambda.str();
  }
  rep.add("alpha-powers", shifts, fmt("q=%lld lambda(m=-2..2)=", q) + detail);

  std::mt19937_64 rng(c.seed);
  const int pairs = c.radius > 0 ? c.radius : 20;
  int good = 0;
  std::string bad;
  for (int t = 0; t < pairs; ++t) {
    auto f = random_measure_linear_map(q, rng), g = random_measure_linear_map(q, rng);
    auto fg = f.after(g);
    const int depth = std::max({f.transducer_depth(), g.transducer_depth(), fg.transducer_depth(), 3});
    auto lf = measure_linear_constant(f, depth), lg = measure_linear_constant(g, depth),
         lfg = measure_linear_constant(fg, depth);
    if (lf.linear && lg.linear && lfg.linear && lfg.lambda == lf.lambda * lg.lambda)
      ++good;
    else if (bad.empty())
      bad = " counterexample " + fg.describe();
  }
  rep.add("composition", good == pairs, fmt("pairs=%lld multiplicative=%lld", pairs, good) + bad);
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"counting", "folner", "correspondence", "index",
                                              "subgroup", "umap",   "fibers",         "measure"};
  return names;
}

Report run_suite(const std::string& name, const SuiteConfig& c) {
  if (name == "counting") return verify_counting(c);
  if (name == "folner") return verify_folner(c);
  if (name == "correspondence") return verify_correspondence(c);
  if (name == "index") return verify_index(c);
  if (name == "subgroup") return verify_subgroup(c);
  if (name == "umap") return verify_umap(c);
  if (name == "fibers") return verify_fibers(c);
  if (name == "measure") return verify_measure(c);
  fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

Report assert_chain(const std::string& kind, const std::vector<ChainRecord>& rows, const Rational& inv_lambda, int k) {
  Report rep{"chain", {}};
  require(!rows.empty(), "chain assertion needs at least one row");
  if (kind == "bounded") {
    bool ok = true;
    std::string ratios;
    for (const auto& r : rows) {
      if (rabs(r.ratio_boundary()) > Rational(1)) ok = false;
      ratios += (ratios.empty() ? "" : " ") + r.ratio_boundary().str();
    }
    rep.add("bounded", ok, "ratios " + ratios);
  } else if (kind == "divergence") {
    const Rational target = rabs(inv_lambda - Rational(k));
    const auto& last = rows.back();
    const Rational got = rabs(last.ratio_box());
    const bool near = target > Rational(0) && rabs(got - target) <= target * Rational(1, 10);
    rep.add("density", near, fmt("h=%lld", last.h) + " |S|/|B|=" + got.str() + " target=" + target.str());
    const Rational first = rabs(rows.front().ratio_boundary()), end = rabs(last.ratio_boundary());
    rep.add("growth", rows.size() > 1 && end >= Rational(2) * first && end > Rational(0),
            "|S|/|dB| " + first.str() + " -> " + end.str());
  } else {
    fail(ErrorCode::InvalidArgument, "unknown chain assertion '" + kind + "'");
  }
  return rep;
}

}  // namespace dlab
