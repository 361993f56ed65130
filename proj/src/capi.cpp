#include "dlab/dlab.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "dlab/error.hpp"
#include "dlab/group.hpp"
#include "dlab/verify.hpp"

using namespace dlab;

struct dl_graph {
  DLGraph g;
};
struct dl_group {
  Group g;
};
struct dl_qimap {
  StandardMap psi;
};

namespace {

thread_local std::string last_error;

dl_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return DL_ERR_INVALID_ARGUMENT;
    case ErrorCode::BudgetExceeded: return DL_ERR_BUDGET;
    case ErrorCode::OutOfDomain: return DL_ERR_OUT_OF_DOMAIN;
    case ErrorCode::Parse: return DL_ERR_PARSE;
  }
  return DL_ERR_INTERNAL;
}

template <class F>
dl_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return DL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DL_ERR_BUDGET;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DL_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

void emit(const std::string& s, char** out) {
  need(out, "output pointer");
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.data(), s.size() + 1);
  *out = buf;
}

std::string fmt_of(const char* f, const char* fallback) { return f ? f : fallback; }

void check_graph_format(const std::string& f) {
  require(f == "dot" || f == "json", "unknown graph format '" + f + "' (expected dot or json)");
}

std::string graph_out(const FiniteGraph& fg, const std::string& format) {
  return format == "dot" ? export_dot(fg) : export_json(fg);
}

std::vector<int> heights(const int* hs, size_t n) {
  if (n) need(hs, "heights");
  return std::vector<int>(hs, hs + n);
}

void check_table_format(const std::string& f) {
  require(f == "csv" || f == "json", "unknown table format '" + f + "' (expected csv or json)");
}

// One-row CSV or a flat JSON object from ordered key/value pairs.
std::string table(const std::string& format, const std::vector<std::pair<std::string, std::string>>& kv,
                  const nlohmann::ordered_json& extra = {}) {
  check_table_format(format);
  if (format == "csv") {
    std::string head, row;
    for (const auto& [k, v] : kv) {
      head += (head.empty() ? "" : ",") + k;
      row += (row.empty() ? "" : ",") + v;
    }
    return head + "\n" + row + "\n";
  }
  nlohmann::ordered_json j;
  for (const auto& [k, v] : kv) j[k] = v;
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j.dump(2) + "\n";
}

std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }

SuiteConfig suite_config(const dl_suite_config* c) {
  SuiteConfig s;
  if (!c) return s;
  s.d = c->d;
  s.q = c->q;
  s.k = c->k;
  s.radius = c->radius;
  s.h = c->h;
  s.r = c->r;
  s.hs = heights(c->hs, c->n_hs);
  if (c->map) s.map = c->map;
  s.seed = c->seed;
  s.workers = c->workers;
  return s;
}

}  // namespace

extern "C" {

const char* dl_last_error(void) { return last_error.c_str(); }
void dl_string_free(char* s) { std::free(s); }
const char* dl_version(void) { return "0.1.0"; }

dl_status dl_graph_create(int d, int q, int k, dl_graph** out) {
  return guard([&] {
    need(out, "output pointer");
    *out = new dl_graph{DLGraph({d, q, k})};
  });
}

void dl_graph_free(dl_graph* g) { delete g; }

dl_status dl_graph_degree(const dl_graph* g, int* out) {
  return guard([&] {
    need(g, "graph");
    need(out, "output pointer");
    *out = static_cast<int>(g->g.degree());
  });
}

dl_status dl_graph_ball(const dl_graph* g, int radius, const char* format, int workers, char** out) {
  return guard([&] {
    need(g, "graph");
    const std::string f = fmt_of(format, "dot");
    check_graph_format(f);
    BallOptions opt;
    opt.workers = workers;
    emit(graph_out(ball(g->g, g->g.base(), radius, opt), f), out);
  });
}

dl_status dl_graph_box(const dl_graph* g, int h, const char* format, int workers, char** out) {
  return guard([&] {
    need(g, "graph");
    const std::string f = fmt_of(format, "dot");
    check_graph_format(f);
    emit(graph_out(induced_subgraph(g->g, box_enumerate(g->g, standard_box(g->g, h)), workers), f), out);
  });
}

dl_status dl_graph_spheres(const dl_graph* g, int radius, int workers, char** out) {
  return guard([&] {
    need(g, "graph");
    BallOptions opt;
    opt.workers = workers;
    std::string s;
    for (auto n : sphere_sizes(g->g, g->g.base(), radius, opt)) s += (s.empty() ? "" : ",") + std::to_string(n);
    emit(s, out);
  });
}

void dl_suite_config_init(dl_suite_config* c) {
  if (!c) return;
  *c = dl_suite_config{2, 2, 1, -1, -1, -1, nullptr, 0, nullptr, 1, 1};
}

dl_status dl_verify(const char* suite, const dl_suite_config* c, int* passed, char** table_out) {
  return guard([&] {
    need(suite, "suite");
    need(passed, "passed pointer");
    Report r = run_suite(suite, suite_config(c));
    emit(r.table(), table_out);
    *passed = r.pass() ? 1 : 0;
  });
}

const char* dl_suite_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : suite_names()) s += n + "\n";
    return s;
  }();
  return names.c_str();
}

dl_status dl_qimap_create(int d, int q, const char* map_json, dl_qimap** out) {
  return guard([&] {
    need(out, "output pointer");
    DLGraph g({d, q, 1});
    *out = new dl_qimap{standard_map_from(g, map_json ? map_json : "")};
  });
}

void dl_qimap_free(dl_qimap* m) { delete m; }

dl_status dl_qimap_inv_lambda(const dl_qimap* m, char** out) {
  return guard([&] {
    need(m, "map");
    emit((Rational(1) / m->psi.lambda_product()).str(), out);
  });
}

dl_status dl_qilab_chain(const dl_qimap* m, int k, const int* hs, size_t n_hs, int r, int workers, const char* format,
                         char** out) {
  return guard([&] {
    need(m, "map");
    const std::string f = fmt_of(format, "csv");
    check_table_format(f);
    FiberAuditOptions opt;
    opt.workers = workers;
    auto rows = uf_chain_scan(m->psi, k, heights(hs, n_hs), r > 0 ? r : m->psi.default_r(), opt);
    if (f == "csv") return emit(chain_csv(rows), out);
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& row : rows)
      j.push_back({{"h", row.h},
                   {"box_size", row.box_size},
                   {"boundary_size", row.boundary_size},
                   {"chain_sum", row.chain_sum},
                   {"ratio_boundary", row.ratio_boundary().str()},
                   {"ratio_box", row.ratio_box().str()}});
    emit(j.dump(2) + "\n", out);
  });
}

dl_status dl_qilab_chain_assert(const dl_qimap* m, const char* kind, int k, const int* hs, size_t n_hs, int r,
                                int workers, int* passed, char** table_out) {
  return guard([&] {
    need(m, "map");
    need(kind, "assertion kind");
    need(passed, "passed pointer");
    FiberAuditOptions opt;
    opt.workers = workers;
    auto rows = uf_chain_scan(m->psi, k, heights(hs, n_hs), r > 0 ? r : m->psi.default_r(), opt);
    Report rep = assert_chain(kind, rows, Rational(1) / m->psi.lambda_product(), k);
    emit(rep.table(), table_out);
    *passed = rep.pass() ? 1 : 0;
  });
}

dl_status dl_qilab_fibers(const dl_qimap* m, int h, int r, int workers, const char* format, char** out) {
  return guard([&] {
    need(m, "map");
    FiberAuditOptions opt;
    opt.r = r > 0 ? r : 0;
    opt.workers = workers;
    auto a = fiber_count_audit(m->psi, standard_box(m->psi.graph(), h), opt);
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [size, n] : a.histogram) hist[std::to_string(size)] = n;
    emit(table(fmt_of(format, "csv"),
               {{"h", std::to_string(h)},
                {"r", std::to_string(a.r)},
                {"K", std::to_string(a.K)},
                {"inv_lambda", a.inv_lambda.str()},
                {"box_size", str(std::uint64_t{a.box_size})},
                {"boundary_size", str(std::uint64_t{a.boundary_size})},
                {"region_size", str(std::uint64_t{a.region_size})},
                {"fiber_sum", str(a.fiber_sum)},
                {"lower", a.lower.str()},
                {"upper", a.upper.str()},
                {"lower_ok", str(a.lower_ok)},
                {"upper_ok", str(a.upper_ok)},
                {"interior_size", str(std::uint64_t{a.interior_size})},
                {"interior_min", std::to_string(a.interior_min)},
                {"interior_max", std::to_string(a.interior_max)},
                {"interior_average", a.interior_average().str()},
                {"interior_exact", str(a.interior_exact)}},
               {{"histogram", hist}}),
         out);
  });
}

dl_status dl_qilab_distortion(const dl_qimap* m, int radius, size_t samples, uint64_t seed, const char* format,
                              char** out) {
  return guard([&] {
    need(m, "map");
    const auto& g = m->psi.graph();
    auto pts = ball(g, g.base(), radius).vertices;
    auto d = distortion(m->psi, g, g, pts, samples, seed, &g);
    emit(table(fmt_of(format, "csv"),
               {{"radius", std::to_string(radius)},
                {"points", str(std::uint64_t{pts.size()})},
                {"pairs", str(std::uint64_t{d.pairs})},
                {"seed", str(seed)},
                {"K_est", d.K_est.str()},
                {"C_est", d.C_est.str()},
                {"max_displacement", std::to_string(d.max_displacement)}}),
         out);
  });
}

dl_status dl_qilab_umap(int d, int q, int k, int tiles, int workers, const char* format, char** out) {
  return guard([&] {
    DLGraph g({d, q, 1});
    UMap u(g, k, UMap::standard_region(g, k, tiles));
    auto a = umap_audit(u, workers);
    emit(table(fmt_of(format, "csv"),
               {{"k", std::to_string(k)},
                {"tiles", std::to_string(tiles)},
                {"region_size", str(std::uint64_t{a.region_size})},
                {"image_size", str(std::uint64_t{a.image_size})},
                {"target_size", str(std::uint64_t{a.target_size})},
                {"min_preimages", str(std::uint64_t{a.min_preimages})},
                {"max_preimages", str(std::uint64_t{a.max_preimages})},
                {"exact", str(a.exact)},
                {"images_valid", str(a.images_valid)},
                {"max_displacement", std::to_string(a.max_displacement)}}),
         out);
  });
}

dl_status dl_group_create(int q, int d, dl_group** out) {
  return guard([&] {
    need(out, "output pointer");
    *out = new dl_group{Group(q, d)};
  });
}

void dl_group_free(dl_group* g) { delete g; }

dl_status dl_group_growth_csv(const dl_group* g, int radius, int workers, char** out) {
  return guard([&] {
    need(g, "group");
    CayleyOptions opt;
    opt.workers = workers;
    emit(growth_csv(cayley_ball(g->g, radius, opt)), out);
  });
}

dl_status dl_group_ball_json(const dl_group* g, int radius, int workers, char** out) {
  return guard([&] {
    need(g, "group");
    CayleyOptions opt;
    opt.workers = workers;
    auto b = cayley_ball(g->g, radius, opt);
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t i = 0; i < b.elements.size(); ++i)
      j.push_back({{"element", nlohmann::json::parse(b.elements[i].json())}, {"length", b.length[i]}});
    emit(j.dump() + "\n", out);
  });
}

}  // extern "C"
