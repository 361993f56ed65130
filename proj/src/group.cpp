#include "dlab/group.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "dlab/error.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

std::string GroupElement::key() const {
  std::string s;
  for (std::size_t i = 0; i < exps.size(); ++i) s += (i ? "," : "") + std::to_string(exps[i]);
  s += ';';
  bool first = true;
  for (Coeff c : P.numerator.coeffs()) {
    s += (first ? "" : ",") + std::to_string(c);
    first = false;
  }
  s += ';';
  for (std::size_t i = 0; i < P.den_exps.size(); ++i) s += (i ? "," : "") + std::to_string(P.den_exps[i]);
  return s;
}

std::size_t GroupElement::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) { h = (h ^ x) * 0x100000001b3ULL; };
  for (int e : exps) mix(static_cast<std::uint32_t>(e));
  mix(0xffff);
  for (Coeff c : P.numerator.coeffs()) mix(c);
  mix(0xfffe);
  for (int m : P.den_exps) mix(static_cast<std::uint32_t>(m));
  return static_cast<std::size_t>(h ^ (h >> 31));
}

std::string GroupElement::json() const {
  nlohmann::json j;
  j["exps"] = exps;
  j["num"] = std::vector<Coeff>(P.numerator.coeffs().begin(), P.numerator.coeffs().end());
  j["den"] = P.den_exps;
  return j.dump();
}

Group::Group(RingParams r) : r_(std::move(r)) {
  std::set<GroupElement> seen;
  auto add = [&](GroupElement e, std::string label) {
    if (seen.insert(e).second) gens_.push_back({std::move(e), std::move(label), 1});
  };
  const int n = r_.d - 1;
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < r_.q; ++b) {
      auto s = s_gen(i, static_cast<Coeff>(b));
      const std::string tag = "s" + std::to_string(i + 1) + "(" + std::to_string(b) + ")";
      add(s, tag);
      add(invert(s), tag + "^-1");
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int b = 0; b < r_.q; ++b) {
        auto s = sd_gen(i, j, static_cast<Coeff>(b));
        const std::string tag = "s" + std::to_string(r_.d) + "(" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + "," + std::to_string(b) + ")";
        add(s, tag);
        add(invert(s), tag + "^-1");
      }
    }
}

GroupElement Group::identity() const {
  return {std::vector<int>(static_cast<std::size_t>(r_.d - 1), 0), RationalElement::zero(r_)};
}

GroupElement Group::multiply(const GroupElement& g, const GroupElement& h) const {
  GroupElement out;
  out.exps.resize(g.exps.size());
  for (std::size_t i = 0; i < g.exps.size(); ++i) out.exps[i] = g.exps[i] + h.exps[i];
  out.P = rat_add(r_, g.P, rat_scale_units(r_, h.P, g.exps));
  return out;
}

GroupElement Group::invert(const GroupElement& g) const {
  GroupElement out;
  for (int e : g.exps) out.exps.push_back(-e);
  out.P = rat_neg(r_, rat_scale_units(r_, g.P, out.exps));
  return out;
}

GroupElement Group::s_gen(int i, Coeff b) const {
  GroupElement g = identity();
  g.exps[static_cast<std::size_t>(i)] = 1;
  g.P = RationalElement::constant(r_, b);
  return g;
}

GroupElement Group::sd_gen(int i, int j, Coeff b) const {
  require(i != j, "s_d generator needs distinct indices");
  GroupElement g = identity();
  g.exps[static_cast<std::size_t>(i)] = 1;
  g.exps[static_cast<std::size_t>(j)] = -1;
  g.P = rat_scale_unit(r_, RationalElement::constant(r_, r_.field().neg(b)), j, -1);
  return g;
}

bool Group::valid(const GroupElement& g) const {
  return static_cast<int>(g.exps.size()) == r_.d - 1 && rat_reduce(r_, g.P) == g.P;
}

std::vector<Generator> Group::subgroup_generators(int k) const {
  require(k >= 1, "subgroup index must be positive");
  if (k == 1) return gens_;
  std::vector<Generator> out;
  std::set<GroupElement> seen;
  auto add = [&](const GroupElement& e, const std::string& label, int length) {
    if (seen.insert(e).second) out.push_back({e, label, length});
    GroupElement inv = invert(e);
    if (seen.insert(inv).second) out.push_back({inv, "(" + label + ")^-1", length});
  };
  const int q = r_.q;
  // Digit tuples in lexicographic order.
  auto tuples = [](int base, int len) {
    std::vector<std::vector<int>> all{{}};
    for (int i = 0; i < len; ++i) {
      std::vector<std::vector<int>> next;
      for (const auto& t : all)
        for (int a = 0; a < base; ++a) {
          next.push_back(t);
          next.back().push_back(a);
        }
      all = std::move(next);
    }
    return all;
  };
  for (const auto& bs : tuples(q, k)) {
    GroupElement e = identity();
    std::string label;
    for (int b : bs) {
      e = multiply(e, s_gen(0, static_cast<Coeff>(b)));
      label += (label.empty() ? "" : "*") + std::string("s1(") + std::to_string(b) + ")";
    }
    add(e, label, k);
  }
  const int others = r_.d - 2;
  for (int k1 = 1; k1 <= k && others > 0; ++k1) {
    const int k2 = k - k1;
    for (const auto& js : tuples(others, k1))
      for (const auto& bs : tuples(q, k1))
        for (const auto& cs : tuples(q, k2)) {
          GroupElement e = identity();
          std::string label;
          for (int i = 0; i < k1; ++i) {
            const int j = js[static_cast<std::size_t>(i)] + 1;
            e = multiply(e, sd_gen(0, j, static_cast<Coeff>(bs[static_cast<std::size_t>(i)])));
            label += (label.empty() ? "" : "*") + std::string("s") + std::to_string(r_.d) + "(1," +
                     std::to_string(j + 1) + "," + std::to_string(bs[static_cast<std::size_t>(i)]) + ")";
          }
          for (int c : cs) {
            e = multiply(e, s_gen(0, static_cast<Coeff>(c)));
            label += "*s1(" + std::to_string(c) + ")";
          }
          add(e, label, k);
        }
  }
  for (const auto& g : gens_)
    if (g.element.exps[0] == 0) add(g.element, g.label, 1);
  return out;
}

bool subgroup_membership(const GroupElement& g, int k) {
  require(k >= 1, "subgroup index must be positive");
  return g.exps[0] % k == 0;
}

int coset_index(const GroupElement& g, int k) {
  require(k >= 1, "subgroup index must be positive");
  return ((g.exps[0] % k) + k) % k;
}

// ---------------------------------------------------------------- Cayley BFS

CayleyBall cayley_ball(const Group& G, const std::vector<Generator>& gens, int radius, const CayleyOptions& opt) {
  require(radius >= 0, "radius must be nonnegative");
  CayleyBall b;
  ElementMap<int> seen;
  b.elements.push_back(G.identity());
  b.length.push_back(0);
  seen.emplace(G.identity(), 0);
  b.spheres.push_back(1);
  std::size_t begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t end = b.elements.size();
    const std::size_t n = end - begin;
    std::vector<std::vector<GroupElement>> parts(chunk_count(n, opt.workers));
    parallel_chunks(n, opt.workers, [&](std::size_t c, std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i)
        for (const auto& s : gens) parts[c].push_back(G.multiply(b.elements[begin + i], s.element));
    });
    std::size_t count = 0;
    for (auto& part : parts)
      for (auto& e : part)
        if (seen.emplace(e, r).second) {
          b.elements.push_back(std::move(e));
          b.length.push_back(r);
          ++count;
          if (b.elements.size() > opt.max_elements)
            fail(ErrorCode::BudgetExceeded, "Cayley ball exceeds budget of " + std::to_string(opt.max_elements));
        }
    b.spheres.push_back(count);
    begin = end;
  }
  return b;
}

CayleyBall cayley_ball(const Group& G, int radius, const CayleyOptions& opt) {
  return cayley_ball(G, G.generators(), radius, opt);
}

std::string growth_csv(const CayleyBall& b) {
  std::string out = "radius,sphere_size,ball_size\n";
  std::size_t total = 0;
  for (std::size_t r = 0; r < b.spheres.size(); ++r) {
    total += b.spheres[r];
    out += std::to_string(r) + "," + std::to_string(b.spheres[r]) + "," + std::to_string(total) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------- correspondence

std::vector<int> default_offsets(int d) {
  std::vector<int> off(static_cast<std::size_t>(d), -1);
  off.back() = 0;
  return off;
}

DLVertex correspond(const Group& G, const GroupElement& g, const std::vector<int>& offsets) {
  const auto& r = G.ring();
  require(static_cast<int>(offsets.size()) == r.d, "need one offset per tree");
  require(r.q <= kMaxQ, "q too large for tree vertex digits");
  DLVertex v;
  int total = 0;
  for (int e : g.exps) total += e;
  for (int place = 0; place < r.d; ++place) {
    const int h = place < r.d - 1 ? g.exps[static_cast<std::size_t>(place)] : -total;
    const int off = offsets[static_cast<std::size_t>(place)];
    Series s;
    if (!g.P.is_zero()) {
      const int lo = local_order_bound(r, g.P, place);
      const int top = h + off;
      if (lo <= top) {
        DigitWindow w = expand_local(r, g.P, place, lo, top);
        s = Series(lo - off, std::vector<Digit>(w.digits.begin(), w.digits.end()));
      }
    }
    v.coords.emplace_back(h, s);
  }
  return v;
}

DLVertex correspond(const Group& G, const GroupElement& g) { return correspond(G, g, default_offsets(G.d())); }

Report validate_correspondence(const Group& G, int radius, const std::vector<int>& offsets_in,
                               const CayleyOptions& opt) {
  const auto offsets = offsets_in.empty() ? default_offsets(G.d()) : offsets_in;
  Report rep;
  rep.suite = "correspondence";
  DLGraph graph({G.d(), G.q(), 1});
  CayleyBall ball = cayley_ball(G, radius, opt);

  std::vector<DLVertex> images(ball.elements.size());
  parallel_chunks(images.size(), opt.workers, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) images[i] = correspond(G, ball.elements[i], offsets);
  });

  VertexMap<std::size_t> index;
  std::string bad;
  for (std::size_t i = 0; i < images.size(); ++i)
    if (!index.emplace(images[i], i).second && bad.empty())
      bad = ball.elements[i].key() + " and " + ball.elements[index[images[i]]].key() + " -> " + images[i].key();
  rep.add("injective", bad.empty(), bad.empty() ? std::to_string(images.size()) + " elements" : bad);

  BallOptions bo;
  bo.workers = opt.workers;
  bo.max_vertices = opt.max_elements;
  auto layers = bfs_layers(graph, graph.base(), radius, bo);
  VertexMap<int> dl_dist;
  std::vector<std::size_t> dl_spheres;
  for (std::size_t r = 0; r < layers.size(); ++r) {
    dl_spheres.push_back(layers[r].size());
    for (const auto& v : layers[r]) dl_dist.emplace(v, static_cast<int>(r));
  }
  bad.clear();
  for (std::size_t i = 0; i < images.size() && bad.empty(); ++i) {
    auto it = dl_dist.find(images[i]);
    if (it == dl_dist.end())
      bad = ball.elements[i].key() + " -> " + images[i].key() + " outside the DL ball";
    else if (it->second != ball.length[i])
      bad = ball.elements[i].key() + ": word length " + std::to_string(ball.length[i]) + ", DL distance " +
            std::to_string(it->second);
  }
  rep.add("distance", bad.empty(), bad);

  auto join = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  };
  rep.add("spheres", ball.spheres == dl_spheres, "cayley " + join(ball.spheres) + " dl " + join(dl_spheres));

  const std::size_t degree = static_cast<std::size_t>(G.d() * (G.d() - 1) * G.q());
  bad.clear();
  std::string bad_degree;
  std::size_t interior = 0;
  for (std::size_t i = 0; i < ball.elements.size() && bad.empty(); ++i) {
    if (ball.length[i] > radius - 1) continue;
    ++interior;
    if (graph.neighbors(images[i]).size() != degree && bad_degree.empty()) bad_degree = images[i].key();
    VertexSet nbrs;
    for (const auto& s : G.generators()) {
      auto gs = G.multiply(ball.elements[i], s.element);
      auto img = correspond(G, gs, offsets);
      if (!graph.adjacent(images[i], img)) {
        bad = ball.elements[i].key() + " * " + s.label + ": images not adjacent";
        break;
      }
      nbrs.insert(img);
    }
    if (bad.empty() && nbrs.size() != degree)
      bad = ball.elements[i].key() + ": " + std::to_string(nbrs.size()) + " distinct neighbor images";
  }
  rep.add("edges", bad.empty(), bad.empty() ? std::to_string(interior) + " interior elements" : bad);
  rep.add("degree", bad_degree.empty() && G.generators().size() == degree,
          bad_degree.empty() ? std::to_string(degree) : bad_degree);
  return rep;
}

// ---------------------------------------------------------------- subgroup reach

Reachability subgroup_reachability(const Group& G, int k, int radius, const CayleyOptions& opt) {
  Reachability res;
  CayleyBall ball = cayley_ball(G, radius, opt);
  ElementMap<bool> targets;
  for (const auto& e : ball.elements)
    if (subgroup_membership(e, k)) targets.emplace(e, false);
  res.members = targets.size();

  const auto gens = G.subgroup_generators(k);
  const int budget = k * radius;
  std::vector<std::vector<GroupElement>> buckets(static_cast<std::size_t>(budget) + 1);
  ElementMap<int> cost;
  cost.emplace(G.identity(), 0);
  buckets[0].push_back(G.identity());
  for (int c = 0; c <= budget && res.reached < res.members; ++c) {
    for (std::size_t n = 0; n < buckets[static_cast<std::size_t>(c)].size(); ++n) {
      const GroupElement e = buckets[static_cast<std::size_t>(c)][n];
      if (cost.at(e) != c) continue;
      if (auto t = targets.find(e); t != targets.end() && !t->second) {
        t->second = true;
        ++res.reached;
        res.max_cost = std::max(res.max_cost, c);
      }
      for (const auto& s : gens) {
        const int nc = c + s.length;
        if (nc > budget) continue;
        GroupElement f = G.multiply(e, s.element);
        auto [it, fresh] = cost.emplace(f, nc);
        if (!fresh) {
          if (it->second <= nc) continue;
          it->second = nc;
        }
        if (cost.size() > opt.max_elements) fail(ErrorCode::BudgetExceeded, "subgroup search exceeds budget");
        buckets[static_cast<std::size_t>(nc)].push_back(std::move(f));
      }
    }
  }
  for (const auto& e : ball.elements) {
    auto t = targets.find(e);
    if (t != targets.end() && !t->second) res.missing.push_back(e);
  }
  return res;
}

}  // namespace dlab
