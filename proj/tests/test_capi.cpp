#include <doctest.h>

#include <string>

#include "dlab/dlab.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  dl_string_free(s);
  return out;
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("graph handles") {
  dl_graph* g = nullptr;
  REQUIRE(dl_graph_create(2, 2, 1, &g) == DL_OK);
  int deg = 0;
  CHECK(dl_graph_degree(g, &deg) == DL_OK);
  CHECK(deg == 4);

  char* out = nullptr;
  REQUIRE(dl_graph_ball(g, 1, "dot", 1, &out) == DL_OK);
  std::string dot = take(out);
  CHECK(dot.rfind("graph dl {", 0) == 0);
  CHECK(count(dot, " -- ") == 4);
  CHECK(count(dot, "[key=") == 5);

  REQUIRE(dl_graph_box(g, 2, "json", 2, &out) == DL_OK);
  std::string js = take(out);
  CHECK(count(js, "\"key\"") == 12);

  REQUIRE(dl_graph_spheres(g, 2, 1, &out) == DL_OK);
  CHECK(take(out).rfind("1,4,", 0) == 0);

  out = nullptr;
  CHECK(dl_graph_ball(g, 1, "svg", 1, &out) == DL_ERR_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  CHECK(std::string(dl_last_error()).find("svg") != std::string::npos);
  CHECK(dl_graph_degree(nullptr, &deg) == DL_ERR_INVALID_ARGUMENT);
  dl_graph_free(g);

  CHECK(dl_graph_create(1, 2, 1, &g) == DL_ERR_INVALID_ARGUMENT);
  dl_graph* big = nullptr;
  REQUIRE(dl_graph_create(3, 3, 1, &big) == DL_OK);
  CHECK(dl_graph_ball(big, 40, "json", 1, &out) == DL_ERR_BUDGET);
  dl_graph_free(big);
}

TEST_CASE("verify through the C surface") {
  dl_suite_config c;
  dl_suite_config_init(&c);
  c.d = 3;
  c.h = 2;
  int passed = 0;
  char* table = nullptr;
  REQUIRE(dl_verify("counting", &c, &passed, &table) == DL_OK);
  CHECK(passed == 1);
  CHECK(take(table).find("PASS counting/fibers") != std::string::npos);
  CHECK(dl_verify("nope", &c, &passed, &table) == DL_ERR_INVALID_ARGUMENT);
  CHECK(std::string(dl_suite_names()).find("correspondence\n") != std::string::npos);
}

TEST_CASE("qilab through the C surface") {
  dl_qimap* m = nullptr;
  REQUIRE(dl_qimap_create(2, 2, nullptr, &m) == DL_OK);
  char* out = nullptr;
  REQUIRE(dl_qimap_inv_lambda(m, &out) == DL_OK);
  CHECK(take(out) == "2");

  const int hs[] = {2, 4, 6};
  REQUIRE(dl_qilab_chain(m, 2, hs, 3, 0, 1, "csv", &out) == DL_OK);
  std::string one = take(out);
  REQUIRE(dl_qilab_chain(m, 2, hs, 3, 0, 4, "csv", &out) == DL_OK);
  CHECK(take(out) == one);
  CHECK(count(one, "\n") == 4);

  int passed = 0;
  REQUIRE(dl_qilab_chain_assert(m, "divergence", 3, hs, 3, 0, 1, &passed, &out) == DL_OK);
  CHECK(passed == 1);
  take(out);
  REQUIRE(dl_qilab_chain_assert(m, "divergence", 2, hs, 3, 0, 1, &passed, &out) == DL_OK);
  CHECK(passed == 0);
  CHECK(take(out).find("FAIL chain/") != std::string::npos);

  REQUIRE(dl_qilab_fibers(m, 4, 0, 2, "json", &out) == DL_OK);
  std::string f = take(out);
  CHECK(f.find("\"interior_exact\": \"true\"") != std::string::npos);
  CHECK(f.find("\"histogram\"") != std::string::npos);

  REQUIRE(dl_qilab_distortion(m, 2, 50, 9, "csv", &out) == DL_OK);
  CHECK(take(out).rfind("radius,points,pairs,seed,K_est,C_est,max_displacement\n", 0) == 0);
  dl_qimap_free(m);

  REQUIRE(dl_qilab_umap(2, 2, 2, 3, 1, "csv", &out) == DL_OK);
  CHECK(take(out).find(",true,true,") != std::string::npos);

  CHECK(dl_qimap_create(2, 2, "[\"alpha\"", &m) == DL_ERR_PARSE);
  CHECK(dl_qimap_create(2, 2, R"(["alpha"])", &m) == DL_ERR_PARSE);
}

TEST_CASE("group handles") {
  dl_group* g = nullptr;
  REQUIRE(dl_group_create(2, 2, &g) == DL_OK);
  char* out = nullptr;
  REQUIRE(dl_group_growth_csv(g, 1, 1, &out) == DL_OK);
  CHECK(take(out) == "radius,sphere_size,ball_size\n0,1,1\n1,4,5\n");
  REQUIRE(dl_group_ball_json(g, 1, 1, &out) == DL_OK);
  std::string js = take(out);
  CHECK(count(js, "\"exps\"") == 5);
  CHECK(js.find("\"length\":1") != std::string::npos);
  dl_group_free(g);
  CHECK(dl_group_create(4, 2, &g) == DL_ERR_INVALID_ARGUMENT);
  CHECK(dl_group_create(2, 4, &g) == DL_ERR_INVALID_ARGUMENT);
}
