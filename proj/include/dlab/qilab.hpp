#pragma once

// Quasi-isometries of Diestel-Leader graphs built from boundary maps, the
// k-to-1 map onto the index-k graph, fiber counting over boxes and the
// degree-0 chain sums over a nested box family.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlab/boundary_map.hpp"
#include "dlab/box.hpp"
#include "dlab/dlgraph.hpp"
#include "dlab/rational.hpp"

namespace dlab {

// d digit streams with finite support plus the d tree heights.
struct BoundaryPoint {
  std::vector<Series> streams;
  std::vector<int> heights;

  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

// Zero-extended streams of the clones.
BoundaryPoint section(const DLVertex& v);
// Truncates stream i at height i. Throws OutOfDomain if the heights are not
// those of a vertex of g.
DLVertex collapse(const DLGraph& g, const BoundaryPoint& p);

class StandardMap {
 public:
  StandardMap(const DLGraph& g, std::vector<BoundaryMap> phis);

  const DLGraph& graph() const { return g_; }
  const std::vector<BoundaryMap>& phis() const { return phis_; }
  DLVertex operator()(const DLVertex& x) const;

  // prod of measure-linear constants; throws if some map is not measure
  // linear.
  Rational lambda_product() const;
  std::int64_t K() const;  // max over the coordinate maps
  int default_r() const;   // ceil(log_q K), at least 1

 private:
  DLGraph g_;
  std::vector<BoundaryMap> phis_;
};

struct FiberAuditOptions {
  int r = 0;  // 0 -> default_r()
  // Levels above the box roots available to the preimage search; negative
  // means as many as needed.
  int margin = -1;
  std::size_t max_region = 20'000'000;
  int workers = 1;
};

struct FiberAudit {
  int r = 0;
  std::int64_t K = 1;
  Rational inv_lambda;
  std::size_t box_size = 0;
  std::size_t boundary_size = 0;
  std::size_t region_size = 0;
  std::uint64_t fiber_sum = 0;  // sum over the box of |Psi^-1(x)|
  Rational lower, upper;
  bool lower_ok = false, upper_ok = false;
  std::size_t interior_size = 0;
  std::uint64_t interior_sum = 0;
  std::uint32_t interior_min = 0, interior_max = 0;
  bool interior_exact = false;             // every interior fiber equals inv_lambda
  std::map<std::uint32_t, std::size_t> histogram;  // fiber size -> box vertices
  std::vector<std::uint32_t> counts;       // per box vertex, box_enumerate order

  Rational interior_average() const {
    return interior_size ? Rational(static_cast<std::int64_t>(interior_sum), static_cast<std::int64_t>(interior_size))
                         : Rational(0);
  }
};

FiberAudit fiber_count_audit(const StandardMap& psi, const Box& box, const FiberAuditOptions& opt = {});

struct ChainRecord {
  int h = 0;
  std::size_t box_size = 0;
  std::size_t boundary_size = 0;
  std::int64_t chain_sum = 0;  // sum of |Psi^-1(x)| - k over the box
  Rational ratio_boundary() const {
    return Rational(chain_sum, static_cast<std::int64_t>(boundary_size));
  }
  Rational ratio_box() const { return Rational(chain_sum, static_cast<std::int64_t>(box_size)); }
};

// Chain sums over the nested standard boxes of the map's graph.
std::vector<ChainRecord> uf_chain_scan(const StandardMap& psi, int k, const std::vector<int>& hs, int r,
                                       const FiberAuditOptions& opt = {});
// h,box_size,boundary_size,chain_sum,ratio_boundary,ratio_box
std::string chain_csv(const std::vector<ChainRecord>& rows);

// k-to-1 map from a tiled region of DL_d(q) onto the index-k vertices of the
// region. Tiles are the boxes over cubes of k lattice points per axis; each
// fiber of a tile over v is matched by index with the fiber over
// (k floor(v_1 / k), v_2, ...).
class UMap {
 public:
  UMap(const DLGraph& g, int k, Box region);

  // Region with zero-digit roots whose cube has `tiles` tiles of k points on
  // every axis, with axis 0 starting in kZ.
  static Box standard_region(const DLGraph& g, int k, int tiles);

  const DLGraph& graph() const { return g_; }
  int k() const { return k_; }
  const Box& region() const { return region_; }
  DLVertex operator()(const DLVertex& x) const;

 private:
  DLGraph g_;
  int k_;
  Box region_;
};

struct UMapAudit {
  std::size_t region_size = 0;
  std::size_t image_size = 0;
  std::size_t target_size = 0;  // region vertices with h_1 in kZ
  std::size_t min_preimages = 0, max_preimages = 0;
  bool exact = false;           // image == target and every fiber has k points
  bool images_valid = false;    // every image is a vertex of the index-k graph
  int max_displacement = 0;     // graph distance in DL_d(q)
};

UMapAudit umap_audit(const UMap& u, int workers = 1);

struct Distortion {
  std::size_t pairs = 0;
  Rational K_est;
  Rational C_est;
  int max_displacement = -1;  // -1 when not measured
};

// Samples pairs of points; d_X in `domain`, d_Y in `codomain`. Displacement
// d(x, f(x)) is measured in `displacement_graph` when given.
template <class F>
Distortion distortion(const F& f, const DLGraph& domain, const DLGraph& codomain, const std::vector<DLVertex>& points,
                      std::size_t samples, std::uint64_t seed, const DLGraph* displacement_graph = nullptr,
                      int max_distance = 64);

// Non-template core: pairs (x, y) with images (fx, fy).
Distortion distortion_from_images(const DLGraph& domain, const DLGraph& codomain, const std::vector<DLVertex>& points,
                                  const std::vector<DLVertex>& images, std::size_t samples, std::uint64_t seed,
                                  const DLGraph* displacement_graph, int max_distance);

template <class F>
Distortion distortion(const F& f, const DLGraph& domain, const DLGraph& codomain, const std::vector<DLVertex>& points,
                      std::size_t samples, std::uint64_t seed, const DLGraph* displacement_graph, int max_distance) {
  std::vector<DLVertex> images;
  images.reserve(points.size());
  for (const auto& p : points) images.push_back(f(p));
  return distortion_from_images(domain, codomain, points, images, samples, seed, displacement_graph, max_distance);
}

}  // namespace dlab
