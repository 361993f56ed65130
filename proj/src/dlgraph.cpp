#include "dlab/dlgraph.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include <json.hpp>

#include "dlab/error.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

void validate(const DLParams& p) {
  require(p.d >= 2, "d must be at least 2");
  require(p.q >= 2 && p.q <= kMaxQ, "q must lie in [2, " + std::to_string(kMaxQ) + "]");
  require(p.k >= 1, "k must be at least 1");
}

std::string DLVertex::key() const {
  std::string s;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += '|';
    coords[i].append_key(s);
  }
  return s;
}

std::size_t DLVertex::hash() const {
  std::size_t h = 0;
  for (const auto& c : coords) h = h * 1000003u ^ c.hash();
  return h;
}

DLGraph::DLGraph(DLParams p) : p_(p) { validate(p_); }

DLVertex DLGraph::base() const {
  return DLVertex{std::vector<TreeVertex>(static_cast<std::size_t>(p_.d))};
}

bool DLGraph::is_vertex(const DLVertex& v) const {
  if (static_cast<int>(v.coords.size()) != p_.d) return false;
  int sum = 0;
  for (const auto& c : v.coords) {
    sum += c.level();
    for (Digit x : c.digits().digits())
      if (x >= p_.q) return false;
  }
  const int h1 = v.coords[0].level();
  return sum == 0 && ((h1 % p_.k) + p_.k) % p_.k == 0;
}

std::size_t DLGraph::degree() const {
  const auto d = static_cast<std::size_t>(p_.d), q = static_cast<std::size_t>(p_.q);
  if (p_.k == 1) return d * (d - 1) * q;
  // (d-1)(d-2)q form-(a) edges plus 2 q^k C(k+d-2, d-2) form-(b) edges.
  std::size_t qk = 1, comps = 1;
  for (int i = 0; i < p_.k; ++i) qk *= q;
  for (int i = 1; i <= p_.d - 2; ++i) comps = comps * static_cast<std::size_t>(p_.k + i) / static_cast<std::size_t>(i);
  return (d - 1) * (d - 2) * q + 2 * qk * comps;
}

void DLGraph::append_compensations(const DLVertex& v, int coord, int remaining, bool down,
                                   std::vector<DLVertex>& out) const {
  const auto c = static_cast<std::size_t>(coord);
  const bool last = coord == p_.d - 1;
  const int lo = last ? remaining : 0;
  for (int steps = lo; steps <= remaining; ++steps) {
    if (down) {
      for (auto& t : v.coords[c].descendants(p_.q, steps)) {
        DLVertex w = v;
        w.coords[c] = std::move(t);
        if (last)
          out.push_back(std::move(w));
        else
          append_compensations(w, coord + 1, remaining - steps, down, out);
      }
    } else {
      DLVertex w = v;
      w.coords[c] = v.coords[c].ancestor(steps);
      if (last)
        out.push_back(std::move(w));
      else
        append_compensations(w, coord + 1, remaining - steps, down, out);
    }
  }
}

std::vector<DLVertex> DLGraph::neighbors(const DLVertex& v) const {
  std::vector<DLVertex> out;
  out.reserve(degree());
  const int first = p_.k == 1 ? 0 : 1;
  for (int i = first; i < p_.d; ++i) {
    for (int j = first; j < p_.d; ++j) {
      if (i == j) continue;
      const TreeVertex up = v.coords[static_cast<std::size_t>(j)].parent();
      for (int a = 0; a < p_.q; ++a) {
        DLVertex w = v;
        w.coords[static_cast<std::size_t>(i)] = v.coords[static_cast<std::size_t>(i)].child(static_cast<Digit>(a));
        w.coords[static_cast<std::size_t>(j)] = up;
        out.push_back(std::move(w));
      }
    }
  }
  if (p_.k > 1) {
    for (const auto& t : v.coords[0].descendants(p_.q, p_.k)) {
      DLVertex w = v;
      w.coords[0] = t;
      append_compensations(w, 1, p_.k, false, out);
    }
    DLVertex w = v;
    w.coords[0] = v.coords[0].ancestor(p_.k);
    append_compensations(w, 1, p_.k, true, out);
  }
  return out;
}

namespace {

// Level change from u to v if v is an ancestor or descendant of u (or equal),
// otherwise nullopt.
std::optional<int> tree_step(const TreeVertex& u, const TreeVertex& v) {
  const int s = v.level() - u.level();
  if (s == 0) return u == v ? std::optional<int>(0) : std::nullopt;
  if (s > 0) return v.descends_from(u) ? std::optional<int>(s) : std::nullopt;
  return u.descends_from(v) ? std::optional<int>(s) : std::nullopt;
}

}  // namespace

bool DLGraph::adjacent(const DLVertex& u, const DLVertex& v) const {
  if (u.coords.size() != v.coords.size()) return false;
  std::vector<int> delta(static_cast<std::size_t>(p_.d));
  for (int i = 0; i < p_.d; ++i) {
    auto s = tree_step(u.coords[static_cast<std::size_t>(i)], v.coords[static_cast<std::size_t>(i)]);
    if (!s) return false;
    delta[static_cast<std::size_t>(i)] = *s;
  }
  auto single_move = [&](int from) {
    int plus = 0, minus = 0;
    for (int i = from; i < p_.d; ++i) {
      const int s = delta[static_cast<std::size_t>(i)];
      if (s == 1) ++plus;
      else if (s == -1) ++minus;
      else if (s != 0) return false;
    }
    return plus == 1 && minus == 1;
  };
  if (p_.k == 1) return single_move(0);
  if (delta[0] == 0) return single_move(1);
  if (delta[0] != p_.k && delta[0] != -p_.k) return false;
  int total = 0;
  for (int i = 1; i < p_.d; ++i) {
    const int s = delta[static_cast<std::size_t>(i)];
    if (s * delta[0] > 0) return false;
    total += s;
  }
  return total == -delta[0];
}

std::vector<int> DLGraph::rho(const DLVertex& v) const {
  std::vector<int> h;
  h.reserve(static_cast<std::size_t>(p_.d - 1));
  for (int i = 0; i < p_.d - 1; ++i) h.push_back(v.height(i));
  return h;
}

std::vector<std::vector<int>> DLGraph::rho_moves() const {
  std::set<std::vector<int>> moves;
  const int n = p_.d - 1;
  const int first = p_.k == 1 ? 0 : 1;
  for (int i = first; i < p_.d; ++i)
    for (int j = first; j < p_.d; ++j) {
      if (i == j) continue;
      std::vector<int> m(static_cast<std::size_t>(n), 0);
      if (i < n) m[static_cast<std::size_t>(i)] += 1;
      if (j < n) m[static_cast<std::size_t>(j)] -= 1;
      moves.insert(m);
    }
  if (p_.k > 1) {
    // Compositions of k over coordinates 1..d-1; coordinate d-1 is implicit.
    std::vector<int> comp(static_cast<std::size_t>(p_.d), 0);
    std::function<void(int, int)> rec = [&](int coord, int remaining) {
      if (coord == p_.d - 1) {
        for (int sign : {1, -1}) {
          std::vector<int> m(static_cast<std::size_t>(n), 0);
          m[0] = sign * p_.k;
          for (int c = 1; c < n; ++c) m[static_cast<std::size_t>(c)] = -sign * comp[static_cast<std::size_t>(c)];
          moves.insert(m);
        }
        return;
      }
      for (int s = 0; s <= remaining; ++s) {
        comp[static_cast<std::size_t>(coord)] = s;
        rec(coord + 1, remaining - s);
      }
      comp[static_cast<std::size_t>(coord)] = 0;
    };
    rec(1, p_.k);
  }
  return {moves.begin(), moves.end()};
}

// ---------------------------------------------------------------- BFS

namespace {

// Neighbors of frontier[from, to), grouped by chunk in frontier order.
std::vector<std::vector<DLVertex>> expand(const DLGraph& g, const std::vector<DLVertex>& frontier, std::size_t from,
                                          std::size_t to, int workers) {
  std::vector<std::vector<DLVertex>> parts(chunk_count(to - from, workers));
  parallel_chunks(to - from, workers, [&](std::size_t c, std::size_t b, std::size_t e) {
    auto& out = parts[c];
    for (std::size_t i = from + b; i < from + e; ++i)
      for (auto& n : g.neighbors(frontier[i])) out.push_back(std::move(n));
  });
  return parts;
}

}  // namespace

std::vector<std::vector<DLVertex>> bfs_layers(const DLGraph& g, const DLVertex& center, int radius,
                                              const BallOptions& opt) {
  require(radius >= 0, "radius must be nonnegative");
  require(g.is_vertex(center), "center is not a vertex of the graph");
  std::vector<std::vector<DLVertex>> layers{{center}};
  VertexSet seen{center};
  for (int r = 1; r <= radius; ++r) {
    std::vector<DLVertex> next;
    const auto& frontier = layers.back();
    // Blocks keep the unmerged neighbor lists small.
    const std::size_t block = 8192;
    for (std::size_t from = 0; from < frontier.size(); from += block)
      for (auto& part : expand(g, frontier, from, std::min(frontier.size(), from + block), opt.workers))
        for (auto& n : part)
          if (seen.insert(n).second) {
            next.push_back(std::move(n));
            if (seen.size() > opt.max_vertices)
              fail(ErrorCode::BudgetExceeded, "ball exceeds vertex budget of " + std::to_string(opt.max_vertices));
          }
    layers.push_back(std::move(next));
  }
  return layers;
}

std::vector<std::size_t> sphere_sizes(const DLGraph& g, const DLVertex& center, int radius,
                                      const BallOptions& opt) {
  std::vector<std::size_t> out;
  for (const auto& layer : bfs_layers(g, center, radius, opt)) out.push_back(layer.size());
  return out;
}

FiniteGraph induced_subgraph(const DLGraph& g, std::vector<DLVertex> vertices, int workers) {
  FiniteGraph fg;
  fg.params = g.params();
  std::vector<std::pair<std::string, DLVertex>> keyed;
  keyed.reserve(vertices.size());
  for (auto& v : vertices) {
    std::string k = v.key();
    keyed.emplace_back(std::move(k), std::move(v));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  VertexMap<std::uint32_t> index;
  for (auto& [k, v] : keyed) {
    index.emplace(v, static_cast<std::uint32_t>(fg.vertices.size()));
    fg.keys.push_back(std::move(k));
    fg.vertices.push_back(std::move(v));
  }
  fg.dist.assign(fg.vertices.size(), -1);

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> parts(chunk_count(fg.vertices.size(), workers));
  parallel_chunks(fg.vertices.size(), workers, [&](std::size_t c, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (const auto& n : g.neighbors(fg.vertices[i])) {
        auto it = index.find(n);
        if (it != index.end() && it->second > i)
          parts[c].emplace_back(static_cast<std::uint32_t>(i), it->second);
      }
  });
  for (auto& p : parts) fg.edges.insert(fg.edges.end(), p.begin(), p.end());
  std::sort(fg.edges.begin(), fg.edges.end());
  fg.edges.erase(std::unique(fg.edges.begin(), fg.edges.end()), fg.edges.end());
  return fg;
}

FiniteGraph ball(const DLGraph& g, const DLVertex& center, int radius, const BallOptions& opt) {
  auto layers = bfs_layers(g, center, radius, opt);
  VertexMap<int> dist;
  std::vector<DLVertex> all;
  for (std::size_t r = 0; r < layers.size(); ++r)
    for (auto& v : layers[r]) {
      dist.emplace(v, static_cast<int>(r));
      all.push_back(std::move(v));
    }
  FiniteGraph fg = induced_subgraph(g, std::move(all), opt.workers);
  for (std::size_t i = 0; i < fg.vertices.size(); ++i) fg.dist[i] = dist.at(fg.vertices[i]);
  return fg;
}

int distance(const DLGraph& g, const DLVertex& a, const DLVertex& b, int max_distance) {
  if (a == b) return 0;
  VertexSet seen_a{a}, seen_b{b};
  std::vector<DLVertex> front_a{a}, front_b{b};
  int da = 0, db = 0;
  while (da + db < max_distance) {
    const bool grow_a = front_a.size() <= front_b.size();
    auto& front = grow_a ? front_a : front_b;
    auto& seen = grow_a ? seen_a : seen_b;
    const auto& other = grow_a ? seen_b : seen_a;
    std::vector<DLVertex> next;
    for (const auto& v : front)
      for (auto& n : g.neighbors(v)) {
        if (other.count(n)) return da + db + 1;
        if (seen.insert(n).second) next.push_back(std::move(n));
      }
    front = std::move(next);
    (grow_a ? da : db) += 1;
  }
  fail(ErrorCode::BudgetExceeded, "distance exceeds " + std::to_string(max_distance));
}

// ---------------------------------------------------------------- export

std::string export_dot(const FiniteGraph& g) {
  std::string out;
  out += "graph dl {\n";
  out += "  graph [d=" + std::to_string(g.params.d) + ", q=" + std::to_string(g.params.q) +
         ", k=" + std::to_string(g.params.k) + "];\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    std::string heights;
    for (std::size_t c = 0; c < g.vertices[i].coords.size(); ++c) {
      if (c) heights += ',';
      heights += std::to_string(g.vertices[i].coords[c].level());
    }
    out += "  n" + std::to_string(i) + " [key=\"" + g.keys[i] + "\", heights=\"" + heights + "\"";
    if (g.dist[i] >= 0) out += ", dist=" + std::to_string(g.dist[i]);
    out += "];\n";
  }
  for (const auto& [a, b] : g.edges) out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

std::string export_json(const FiniteGraph& g) {
  nlohmann::json j;
  j["params"] = {{"d", g.params.d}, {"q", g.params.q}, {"k", g.params.k}};
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    nlohmann::json h = nlohmann::json::array();
    for (const auto& c : g.vertices[i].coords) h.push_back(c.level());
    nlohmann::json v = {{"key", g.keys[i]}, {"heights", h}};
    if (g.dist[i] >= 0) v["dist"] = g.dist[i];
    verts.push_back(std::move(v));
  }
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return j.dump() + "\n";
}

}  // namespace dlab
