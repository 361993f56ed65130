#pragma once

// Diestel-Leader graphs DL_d(q) and their index-k variants DL_d^k(q).
//
// A vertex is a d-tuple of tree vertices whose levels (heights) sum to zero.
// For k > 1 the first coordinate is restricted to heights in kZ and the
// edges are the length-k compilations described in DLGraph::neighbors.

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dlab/tree.hpp"

namespace dlab {

struct DLParams {
  int d = 2;
  int q = 2;
  int k = 1;
};

void validate(const DLParams& p);

struct DLVertex {
  std::vector<TreeVertex> coords;

  int height(int i) const { return coords[static_cast<std::size_t>(i)].level(); }
  std::string key() const;
  std::size_t hash() const;

  friend bool operator==(const DLVertex&, const DLVertex&) = default;
  friend auto operator<=>(const DLVertex&, const DLVertex&) = default;
};

struct DLVertexHash {
  std::size_t operator()(const DLVertex& v) const noexcept { return v.hash(); }
};

using VertexSet = std::unordered_set<DLVertex, DLVertexHash>;
template <class V>
using VertexMap = std::unordered_map<DLVertex, V, DLVertexHash>;

class DLGraph {
 public:
  explicit DLGraph(DLParams p);

  const DLParams& params() const { return p_; }
  int d() const { return p_.d; }
  int q() const { return p_.q; }
  int k() const { return p_.k; }

  // All coordinates at the tree base points.
  DLVertex base() const;
  // Heights sum to zero and h_1 is in kZ.
  bool is_vertex(const DLVertex& v) const;

  // For k = 1: move one coordinate to a child and another to its parent. For
  // k > 1: (a) such a move among coordinates 2..d, or (b) coordinate 1 moves
  // k levels and coordinates 2..d compensate along height-monotone paths of
  // total length k.
  std::vector<DLVertex> neighbors(const DLVertex& v) const;
  bool adjacent(const DLVertex& u, const DLVertex& v) const;
  std::size_t degree() const;

  // First d-1 heights.
  std::vector<int> rho(const DLVertex& v) const;

  // Displacements of rho along edges; every vector occurs at every vertex.
  std::vector<std::vector<int>> rho_moves() const;

 private:
  void append_compensations(const DLVertex& v, int coord, int remaining, bool down,
                            std::vector<DLVertex>& out) const;
  DLParams p_;
};

// Finite induced subgraph with vertices in canonical key order.
struct FiniteGraph {
  DLParams params;
  std::vector<DLVertex> vertices;
  std::vector<std::string> keys;
  std::vector<int> dist;  // BFS distance from the center, or -1 when not a ball
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j, sorted
};

struct BallOptions {
  std::size_t max_vertices = 2'000'000;
  int workers = 1;
};

// BFS layers from `center`; layers[r] is the sphere of radius r.
std::vector<std::vector<DLVertex>> bfs_layers(const DLGraph& g, const DLVertex& center, int radius,
                                              const BallOptions& opt = {});

FiniteGraph ball(const DLGraph& g, const DLVertex& center, int radius, const BallOptions& opt = {});
// Induced subgraph on an explicit vertex set.
FiniteGraph induced_subgraph(const DLGraph& g, std::vector<DLVertex> vertices, int workers = 1);

std::vector<std::size_t> sphere_sizes(const DLGraph& g, const DLVertex& center, int radius,
                                      const BallOptions& opt = {});

// Exact graph distance by bidirectional BFS; throws BudgetExceeded if it
// exceeds `max_distance`.
int distance(const DLGraph& g, const DLVertex& a, const DLVertex& b, int max_distance);

std::string export_dot(const FiniteGraph& g);
std::string export_json(const FiniteGraph& g);

}  // namespace dlab
