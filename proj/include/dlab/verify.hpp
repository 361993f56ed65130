#pragma once

// Named verification suites; each returns a PASS/FAIL table.

#include <cstdint>
#include <string>
#include <vector>

#include "dlab/qilab.hpp"
#include "dlab/report.hpp"

namespace dlab {

struct SuiteConfig {
  int d = 2, q = 2, k = 1;
  int radius = -1;  // -1: suite default
  int h = -1;
  int r = -1;
  std::vector<int> hs;  // empty: suite default
  std::string map;      // boundary-map JSON, empty: suite default
  std::uint64_t seed = 1;
  int workers = 1;
};

Report verify_counting(const SuiteConfig& c);
Report verify_folner(const SuiteConfig& c);
Report verify_correspondence(const SuiteConfig& c);
Report verify_index(const SuiteConfig& c);
Report verify_subgroup(const SuiteConfig& c);
Report verify_umap(const SuiteConfig& c);
Report verify_fibers(const SuiteConfig& c);
Report verify_measure(const SuiteConfig& c);

const std::vector<std::string>& suite_names();
// Throws InvalidArgument for an unknown suite.
Report run_suite(const std::string& name, const SuiteConfig& c);

// Default maps for the qilab experiments: alpha on the first d-1 trees.
std::string default_map_json(int d);
StandardMap standard_map_from(const DLGraph& g, const std::string& map_json);

// Chain-sum assertions over a scan: "bounded" wants |S/|dB|| <= 1 on every
// row; "divergence" wants |S|/|B| within 10% of |1/prod lambda - k| on the
// last row and the boundary ratio at least doubling from first to last.
Report assert_chain(const std::string& kind, const std::vector<ChainRecord>& rows, const Rational& inv_lambda, int k);

}  // namespace dlab
