#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlab/dlab.h"

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3, kInternal = 4 };

struct Options {
  int d = 2, q = 2, k = -1;
  int radius = -1;
  std::vector<int> h;
  int r = -1;
  std::string map;
  std::string format;
  std::string out;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string assert_kind;
  std::string experiment = "chain";
  std::size_t samples = 1000;
  std::string suite;
};

int exit_for(dl_status s) {
  switch (s) {
    case DL_OK: return kOk;
    case DL_ERR_INVALID_ARGUMENT:
    case DL_ERR_PARSE: return kUsage;
    case DL_ERR_BUDGET:
    case DL_ERR_OUT_OF_DOMAIN: return kBudget;
    default: return kInternal;
  }
}

int report(dl_status s) {
  if (s != DL_OK) std::fprintf(stderr, "dlab: %s\n", dl_last_error());
  return exit_for(s);
}

// Writes and frees a C-API string.
bool write_out(const Options& o, char* s) {
  std::string text = s ? s : "";
  dl_string_free(s);
  if (o.out.empty() || o.out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return true;
  }
  std::ofstream f(o.out, std::ios::binary);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) {
    std::fprintf(stderr, "dlab: cannot write %s\n", o.out.c_str());
    return false;
  }
  return true;
}

const char* format_or(const Options& o, const char* fallback) { return o.format.empty() ? fallback : o.format.c_str(); }

int cmd_graph(const Options& o) {
  dl_graph* g = nullptr;
  if (auto s = dl_graph_create(o.d, o.q, o.k > 0 ? o.k : 1, &g); s != DL_OK) return report(s);
  char* out = nullptr;
  dl_status s = o.h.empty() ? dl_graph_ball(g, o.radius >= 0 ? o.radius : 2, format_or(o, "dot"), o.workers, &out)
                            : dl_graph_box(g, o.h.front(), format_or(o, "dot"), o.workers, &out);
  dl_graph_free(g);
  if (s != DL_OK) return report(s);
  return write_out(o, out) ? kOk : kInternal;
}

int cmd_verify(const Options& o) {
  const std::string suite = !o.suite.empty() ? o.suite : o.assert_kind;
  if (suite.empty()) {
    std::fprintf(stderr, "dlab: verify needs a suite; one of:\n%s", dl_suite_names());
    return kUsage;
  }
  dl_suite_config c;
  dl_suite_config_init(&c);
  c.d = o.d;
  c.q = o.q;
  c.k = o.k > 0 ? o.k : (suite == "umap" ? 2 : 1);
  c.radius = o.radius;
  c.r = o.r;
  if (!o.h.empty()) c.h = o.h.front();
  if (o.h.size() > 1) {
    c.hs = o.h.data();
    c.n_hs = o.h.size();
  }
  c.map = o.map.empty() ? nullptr : o.map.c_str();
  c.seed = o.seed;
  c.workers = o.workers;
  int passed = 0;
  char* table = nullptr;
  if (auto s = dl_verify(suite.c_str(), &c, &passed, &table); s != DL_OK) return report(s);
  if (!write_out(o, table)) return kInternal;
  return passed ? kOk : kFailed;
}

int cmd_qilab(const Options& o) {
  const char* fmt = format_or(o, "csv");
  char* out = nullptr;
  if (o.experiment == "umap") {
    const int tiles = o.h.empty() ? 4 : o.h.front();
    if (auto s = dl_qilab_umap(o.d, o.q, o.k > 0 ? o.k : 2, tiles, o.workers, fmt, &out); s != DL_OK)
      return report(s);
    return write_out(o, out) ? kOk : kInternal;
  }

  dl_qimap* m = nullptr;
  if (auto s = dl_qimap_create(o.d, o.q, o.map.empty() ? nullptr : o.map.c_str(), &m); s != DL_OK) return report(s);
  const int k = o.k > 0 ? o.k : 2;
  const std::vector<int> hs = o.h.empty() ? std::vector<int>{2, 4, 6} : o.h;
  dl_status s = DL_OK;
  if (o.experiment == "chain") {
    s = dl_qilab_chain(m, k, hs.data(), hs.size(), o.r, o.workers, fmt, &out);
  } else if (o.experiment == "fibers") {
    s = dl_qilab_fibers(m, hs.front(), o.r, o.workers, fmt, &out);
  } else if (o.experiment == "distortion") {
    s = dl_qilab_distortion(m, o.radius >= 0 ? o.radius : 3, o.samples, o.seed, fmt, &out);
  } else {
    dl_qimap_free(m);
    std::fprintf(stderr, "dlab: unknown experiment '%s' (chain, fibers, distortion, umap)\n", o.experiment.c_str());
    return kUsage;
  }
  if (s != DL_OK) {
    dl_qimap_free(m);
    return report(s);
  }
  if (!write_out(o, out)) {
    dl_qimap_free(m);
    return kInternal;
  }

  int code = kOk;
  if (!o.assert_kind.empty()) {
    if (o.experiment != "chain") {
      std::fprintf(stderr, "dlab: --assert applies to the chain experiment\n");
      code = kUsage;
    } else {
      int passed = 0;
      char* table = nullptr;
      s = dl_qilab_chain_assert(m, o.assert_kind.c_str(), k, hs.data(), hs.size(), o.r, o.workers, &passed, &table);
      if (s != DL_OK) {
        code = report(s);
      } else {
        std::fputs(table, stderr);
        dl_string_free(table);
        code = passed ? kOk : kFailed;
      }
    }
  }
  dl_qimap_free(m);
  return code;
}

int cmd_group(const Options& o) {
  dl_group* g = nullptr;
  if (auto s = dl_group_create(o.q, o.d, &g); s != DL_OK) return report(s);
  const std::string fmt = format_or(o, "csv");
  const int radius = o.radius >= 0 ? o.radius : 3;
  char* out = nullptr;
  dl_status s = DL_OK;
  if (fmt == "csv") {
    s = dl_group_growth_csv(g, radius, o.workers, &out);
  } else if (fmt == "json") {
    s = dl_group_ball_json(g, radius, o.workers, &out);
  } else {
    dl_group_free(g);
    std::fprintf(stderr, "dlab: unknown group format '%s' (csv or json)\n", fmt.c_str());
    return kUsage;
  }
  dl_group_free(g);
  if (s != DL_OK) return report(s);
  return write_out(o, out) ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diestel-Leader graph and group lab"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", dl_version());
  app.set_config("--config", "", "Read key=value options from a file; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--d", o.d, "Number of trees")->capture_default_str();
  app.add_option("--q", o.q, "Tree branching / field size")->capture_default_str();
  app.add_option("--k", o.k, "Index k of the graph, subgroup or chain target");
  app.add_option("--radius", o.radius, "Ball radius");
  app.add_option("--h", o.h, "Box height(s); comma separated for scans, tiles per axis for umap")->delimiter(',');
  app.add_option("--r", o.r, "Boundary thickness");
  app.add_option("--map", o.map, "Boundary maps as a JSON array, one entry per tree");
  app.add_option("--format", o.format, "dot|json for graph, csv|json otherwise");
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  app.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--assert", o.assert_kind, "Suite for verify; bounded|divergence for qilab");
  app.add_option("--experiment", o.experiment, "qilab: chain|fibers|distortion|umap")->capture_default_str();
  app.add_option("--samples", o.samples, "Pairs sampled by the distortion experiment")->capture_default_str();

  auto* graph = app.add_subcommand("graph", "Export a ball (--radius) or standard box (--h)");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", o.suite, "counting|folner|correspondence|index|subgroup|umap|fibers|measure");
  auto* qilab = app.add_subcommand("qilab", "Quasi-isometry experiments");
  auto* group = app.add_subcommand("group", "Cayley ball growth (csv) or elements (json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (graph->parsed()) return cmd_graph(o);
  if (verify->parsed()) return cmd_verify(o);
  if (qilab->parsed()) return cmd_qilab(o);
  if (group->parsed()) return cmd_group(o);
  return kUsage;
}
