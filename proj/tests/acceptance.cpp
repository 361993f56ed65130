// Acceptance gate: one PASS/FAIL line per criterion.
// Usage: acceptance [path-to-dlab-cli]

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dlab/dlab.h"
#include "dlab/group.hpp"
#include "dlab/verify.hpp"

using namespace dlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void absorb(const Report& r) {
    for (const auto& c : r.checks) need(c.pass, r.suite + "/" + c.name + " " + c.detail);
  }
};

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Members within distance r of the complement, grown inward from the
// members that have an outside neighbor.
std::size_t graph_boundary(const DLGraph& g, const std::vector<DLVertex>& members, int r) {
  VertexSet box(members.begin(), members.end());
  VertexSet layer;
  for (const auto& v : members)
    for (const auto& n : g.neighbors(v))
      if (!box.count(n)) {
        layer.insert(v);
        break;
      }
  VertexSet all = layer;
  for (int s = 1; s < r; ++s) {
    VertexSet next;
    for (const auto& v : layer)
      for (const auto& n : g.neighbors(v))
        if (box.count(n) && all.insert(n).second) next.insert(n);
    layer = std::move(next);
  }
  return all.size();
}

Outcome counting() {
  Outcome o;
  const std::vector<std::array<int, 4>> cases{{2, 2, 1, 2}, {2, 2, 1, 4}, {3, 2, 1, 2},
                                               {3, 3, 1, 2}, {3, 2, 2, 2}, {2, 2, 2, 4}};
  for (auto [d, q, k, h] : cases) {
    SuiteConfig c;
    c.d = d;
    c.q = q;
    c.k = k;
    c.h = h;
    o.absorb(verify_counting(c));
    DLGraph g({d, q, k});
    Box b = standard_box(g, h);
    o.need(box_size(g, b) == b.cube.size() * ipow(q, (d - 1) * h), "size formula");
  }
  o.detail = o.pass ? "6 configurations, every fiber q^((d-1)h)" : o.detail;
  return o;
}

Outcome folner() {
  Outcome o;
  std::string ratios;
  for (int d : {2, 3}) {
    DLGraph g({d, 2, 1});
    for (int r : {1, 2}) {
      Rational prev(2);
      for (int h : {2, 4, 6}) {
        auto f = folner_record(g, h, r);
        o.need(f.ratio() == f.lattice_ratio(), "identity d=" + std::to_string(d) + " r=" + std::to_string(r) +
                                                   " h=" + std::to_string(h));
        o.need(f.ratio() < prev, "decay d=" + std::to_string(d) + " r=" + std::to_string(r));
        prev = f.ratio();
        const auto members = box_enumerate(g, standard_box(g, h));
        o.need(graph_boundary(g, members, r) == f.boundary_size, "graph boundary h=" + std::to_string(h));
        ratios += (ratios.empty() ? "" : " ") + f.ratio().str();
      }
    }
  }
  if (o.pass) o.detail = "ratios " + ratios;
  return o;
}

Outcome correspondence() {
  Outcome o;
  const std::vector<std::array<int, 3>> cases{{2, 2, 4}, {2, 3, 4}, {3, 2, 3}};
  for (auto [d, q, radius] : cases) {
    Group G(q, d);
    Report r = validate_correspondence(G, radius);
    o.absorb(r);
    o.need(G.generators().size() == static_cast<std::size_t>(d * (d - 1) * q), "generator count");
    for (const auto& c : r.checks)
      if (c.name == "degree") o.need(c.detail == std::to_string(d * (d - 1) * q), "interior degree " + c.detail);
  }
  if (o.pass) o.detail = "(2,2) r4, (2,3) r4, (3,2) r3";
  return o;
}

Outcome index_and_generation() {
  Outcome o;
  Group G(2, 2);
  std::string reach;
  for (int k : {2, 3, 4}) {
    std::set<int> seen;
    for (const auto& e : cayley_ball(G, k).elements) seen.insert(coset_index(e, k));
    o.need(static_cast<int>(seen.size()) == k, "cosets k=" + std::to_string(k));
    auto res = subgroup_reachability(G, k, 3);
    o.need(res.missing.empty(), "unreached members k=" + std::to_string(k));
    o.need(res.max_cost <= 3 * k, "cost k=" + std::to_string(k));
    reach += " k=" + std::to_string(k) + ":" + std::to_string(res.reached) + "/" + std::to_string(res.members);
  }
  if (o.pass) o.detail = "cosets 2,3,4; reached" + reach;
  return o;
}

Outcome umap() {
  Outcome o;
  // Frozen from the first audited run.
  const std::vector<std::pair<int, int>> frozen{{2, 1}, {3, 3}};
  DLGraph g({2, 2, 1});
  std::string disp;
  for (auto [k, want] : frozen) {
    for (int tiles : {3, 4}) {
      UMap u(g, k, UMap::standard_region(g, k, tiles));
      auto a = umap_audit(u);
      o.need(k * tiles >= 3 * k, "side");
      o.need(a.exact && a.min_preimages == static_cast<std::size_t>(k) &&
                 a.max_preimages == static_cast<std::size_t>(k),
             "fibers k=" + std::to_string(k));
      o.need(a.images_valid, "images k=" + std::to_string(k));
      o.need(a.target_size * static_cast<std::size_t>(k) == a.region_size, "target size k=" + std::to_string(k));
      o.need(a.max_displacement == want, "displacement k=" + std::to_string(k) + " tiles=" + std::to_string(tiles) +
                                             " got " + std::to_string(a.max_displacement));
      disp += " k=" + std::to_string(k) + "/" + std::to_string(tiles) + ":" + std::to_string(a.max_displacement);
    }
  }
  if (o.pass) o.detail = "exact k-to-1, displacement" + disp;
  return o;
}

Outcome fiber_bounds() {
  Outcome o;
  struct Case {
    int d;
    std::string map;
    std::uint32_t fiber;
  };
  std::string sums;
  for (const auto& c : {Case{2, R"(["alpha","id"])", 2}, Case{3, R"(["alpha","alpha","id"])", 4}}) {
    DLGraph g({c.d, 2, 1});
    StandardMap psi = standard_map_from(g, c.map);
    o.need(psi.K() == 2, "K");
    o.need(psi.default_r() == 1, "r");
    auto a = fiber_count_audit(psi, standard_box(g, 4));
    o.need(a.interior_size > 0 && a.interior_min == c.fiber && a.interior_max == c.fiber,
           "interior fibers d=" + std::to_string(c.d));
    o.need(a.lower_ok, "lower d=" + std::to_string(c.d));
    o.need(a.upper_ok, "upper d=" + std::to_string(c.d));
    // Restate the inequality from the raw counts.
    const Rational sum(static_cast<std::int64_t>(a.fiber_sum));
    const Rational inv(c.fiber), bs(static_cast<std::int64_t>(a.box_size)), bd(static_cast<std::int64_t>(a.boundary_size));
    o.need(inv * (bs - bd) <= sum && sum <= inv * bs + Rational(static_cast<std::int64_t>(ipow(2, c.d))) * bd,
           "raw inequality d=" + std::to_string(c.d));
    sums += " d=" + std::to_string(c.d) + ":" + a.lower.str() + "<=" + std::to_string(a.fiber_sum) + "<=" + a.upper.str();
  }
  if (o.pass) o.detail = "interior 2 and 4;" + sums;
  return o;
}

Outcome obstruction() {
  Outcome o;
  DLGraph g({2, 2, 1});
  StandardMap psi = standard_map_from(g, R"(["alpha","id"])");
  const Rational inv = Rational(1) / psi.lambda_product();
  o.need(inv == Rational(2), "1/prod lambda");
  auto two = uf_chain_scan(psi, 2, {2, 4, 6}, 1);
  for (const auto& r : two) {
    const Rational x = r.ratio_boundary();
    o.need(Rational(-1) <= x && x <= Rational(1), "k=2 ratio h=" + std::to_string(r.h) + " " + x.str());
  }
  auto three = uf_chain_scan(psi, 3, {2, 4, 6}, 1);
  const Rational target(1);  // |1/prod lambda - k|
  Rational dens = three.back().ratio_box();
  if (dens < Rational(0)) dens = -dens;
  Rational diff = dens - target;
  if (diff < Rational(0)) diff = -diff;
  o.need(diff <= Rational(1, 10), "k=3 density " + dens.str());
  Rational first = three.front().ratio_boundary(), last = three.back().ratio_boundary();
  if (first < Rational(0)) first = -first;
  if (last < Rational(0)) last = -last;
  o.need(last >= Rational(2) * first && last > Rational(0), "k=3 growth " + first.str() + " -> " + last.str());
  if (o.pass)
    o.detail = "k=2 ratios " + two[0].ratio_boundary().str() + "," + two[1].ratio_boundary().str() + "," +
               two[2].ratio_boundary().str() + "; k=3 |S|/|B|=" + dens.str() + ", |S|/|dB| " + first.str() + " -> " +
               last.str();
  return o;
}

Outcome measure_laws() {
  Outcome o;
  int pairs = 0;
  for (int q : {2, 3}) {
    for (int m = -2; m <= 2; ++m) {
      auto r = measure_linear_constant(BoundaryMap::alpha(q, m), 6);
      o.need(r.linear && r.lambda == Rational::power(q, -m), "alpha^" + std::to_string(m));
    }
    std::mt19937_64 rng(static_cast<std::uint64_t>(q) * 1000 + 7);
    for (int t = 0; t < 20; ++t) {
      auto f = random_measure_linear_map(q, rng), g = random_measure_linear_map(q, rng);
      auto fg = f.after(g);
      const int depth = std::max({f.transducer_depth(), g.transducer_depth(), fg.transducer_depth(), 3});
      auto lf = measure_linear_constant(f, depth), lg = measure_linear_constant(g, depth),
           lfg = measure_linear_constant(fg, depth);
      o.need(lf.linear && lg.linear && lfg.linear, "linear " + fg.describe());
      o.need(lfg.lambda == lf.lambda * lg.lambda, "multiplicative " + fg.describe());
      // Net shift oracle.
      int shift = 0;
      for (const auto& p : fg.ops())
        if (const auto* s = std::get_if<Shift>(&p)) shift += s->m;
      o.need(lfg.lambda == Rational::power(q, -shift), "net shift " + fg.describe());
      ++pairs;
    }
  }
  if (o.pass) o.detail = "alpha^m for m=-2..2, " + std::to_string(pairs) + " random pairs";
  return o;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  dl_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism(const char* cli) {
  Outcome o;
  const int hs[] = {2, 4, 6};
  using Producer = std::function<std::string(int)>;
  std::vector<std::pair<std::string, Producer>> producers{
      {"graph ball", [](int w) {
         dl_graph* g = nullptr;
         dl_graph_create(2, 2, 1, &g);
         char* out = nullptr;
         dl_graph_ball(g, 6, "json", w, &out);
         dl_graph_free(g);
         return take(out);
       }},
      {"graph box", [](int w) {
         dl_graph* g = nullptr;
         dl_graph_create(3, 2, 2, &g);
         char* out = nullptr;
         dl_graph_box(g, 2, "dot", w, &out);
         dl_graph_free(g);
         return take(out);
       }},
      {"qilab chain", [&](int w) {
         dl_qimap* m = nullptr;
         dl_qimap_create(2, 2, nullptr, &m);
         char* out = nullptr;
         dl_qilab_chain(m, 3, hs, 3, 0, w, "csv", &out);
         dl_qimap_free(m);
         return take(out);
       }},
      {"qilab fibers", [](int w) {
         dl_qimap* m = nullptr;
         dl_qimap_create(3, 2, nullptr, &m);
         char* out = nullptr;
         dl_qilab_fibers(m, 4, 0, w, "json", &out);
         dl_qimap_free(m);
         return take(out);
       }},
  };
  for (const auto& [name, make] : producers) {
    const std::string a = make(1), b = make(1), c = make(4);
    o.need(!a.empty(), name + " empty");
    o.need(a == b, name + " differs between runs");
    o.need(a == c, name + " differs between worker counts");
  }
  int cli_runs = 0;
  if (cli) {
    const std::vector<std::string> cmds{"graph --d 2 --q 2 --radius 5 --format json", "graph --d 3 --q 2 --h 2",
                                        "qilab --k 3 --h 2,4,6", "qilab --experiment umap --k 3 --h 3"};
    for (std::size_t i = 0; i < cmds.size(); ++i) {
      std::string outs[3];
      const int workers[3] = {1, 1, 4};
      for (int run = 0; run < 3; ++run) {
        const std::string path = "acceptance_det_" + std::to_string(i) + "_" + std::to_string(run) + ".out";
        const std::string cmd = std::string(cli) + " " + cmds[i] + " --workers " + std::to_string(workers[run]) +
                                " --out " + path;
        o.need(std::system(cmd.c_str()) == 0, "cli exit: " + cmds[i]);
        outs[run] = slurp(path);
        std::remove(path.c_str());
        ++cli_runs;
      }
      o.need(!outs[0].empty() && outs[0] == outs[1] && outs[0] == outs[2], "cli bytes: " + cmds[i]);
    }
  }
  if (o.pass)
    o.detail = std::to_string(producers.size()) + " library outputs" +
               (cli ? ", " + std::to_string(cli_runs) + " cli runs" : std::string(", cli not given")) +
               " byte-identical over workers 1,1,4";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {"1 box counting", 120, counting},
      {"2 folner identity and decay", 120, folner},
      {"3 cayley graph correspondence", 300, correspondence},
      {"4 index and generation", 300, index_and_generation},
      {"5 k-to-1 map", 300, umap},
      {"6 fiber-count bounds", 300, fiber_bounds},
      {"7 obstruction dichotomy", 600, obstruction},
      {"8 measure-linear laws", 60, measure_laws},
      {"9 determinism", 300, [cli] { return determinism(cli); }},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) o.need(false, "took longer than the time limit");
    if (!o.pass) ++failed;
    std::printf("%s %s  (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
