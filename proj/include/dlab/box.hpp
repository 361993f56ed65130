#pragma once

// Boxes: connected components of rho^-1(V) for a height cube V. A box is a
// product of complete subtrees (one per coordinate) cut down to the vertices
// whose first d-1 heights lie in V.

#include <cstdint>
#include <vector>

#include "dlab/dlgraph.hpp"
#include "dlab/rational.hpp"

namespace dlab {

// Closed per-axis intervals [lo_i, hi_i], i < d-1. Axis 0 only takes values in
// kZ, so lo_0 and hi_0 must be multiples of k.
struct HeightCube {
  std::vector<int> lo, hi;
  int k = 1;

  int axes() const { return static_cast<int>(lo.size()); }
  int step(int axis) const { return axis == 0 ? k : 1; }
  bool contains(const std::vector<int>& v) const;
  std::size_t size() const;
  // Lattice points in lexicographic order.
  std::vector<std::vector<int>> points() const;
  // Sum of (hi_i - lo_i): the number of tree levels spanned by a fiber.
  int fiber_depth() const;

  friend bool operator==(const HeightCube&, const HeightCube&) = default;
};

// Cube with every side equal to h.
HeightCube cube(int axes, const std::vector<int>& lo, int h, int k = 1);

struct Box {
  HeightCube cube;
  std::vector<TreeVertex> roots;  // roots[i] at level lo_i for i < d-1, roots[d-1] at -sum(hi)

  friend bool operator==(const Box&, const Box&) = default;
};

// The cube with lo_i = -floor(h/2) (axis 0 rounded down into kZ) and
// zero-digit roots. Increasing h gives a nested family.
Box standard_box(const DLGraph& g, int h);
// The unique box over `c` containing x.
Box box_containing(const DLGraph& g, const HeightCube& c, const DLVertex& x);

void validate_box(const DLGraph& g, const Box& b);
bool box_contains(const Box& b, const DLVertex& x);
std::size_t box_size(const DLGraph& g, const Box& b);
std::size_t fiber_size(const DLGraph& g, const Box& b);

// Members with rho = v, ordered lexicographically by the path digits below
// the roots (coordinate 0 first).
std::vector<DLVertex> box_fiber(const DLGraph& g, const Box& b, const std::vector<int>& v);
std::vector<DLVertex> box_enumerate(const DLGraph& g, const Box& b);

// Index of x within its fiber (the position box_fiber would report) and the
// inverse map.
std::uint64_t fiber_index(const DLGraph& g, const Box& b, const DLVertex& x);
DLVertex fiber_vertex(const DLGraph& g, const Box& b, const std::vector<int>& v, std::uint64_t index);

// Points of the cube within r lattice moves of a lattice point outside it.
std::vector<std::vector<int>> lattice_boundary(const DLGraph& g, const HeightCube& c, int r);
// Members within graph distance r of the complement of the box.
std::vector<DLVertex> box_boundary(const DLGraph& g, const Box& b, int r);
std::size_t box_boundary_size(const DLGraph& g, const Box& b, int r);

struct FolnerRecord {
  int h = 0;
  int r = 0;
  std::size_t lattice_size = 0;
  std::size_t lattice_boundary = 0;
  std::size_t box_size = 0;
  std::size_t boundary_size = 0;

  Rational ratio() const {
    return Rational(static_cast<std::int64_t>(boundary_size), static_cast<std::int64_t>(box_size));
  }
  Rational lattice_ratio() const {
    return Rational(static_cast<std::int64_t>(lattice_boundary), static_cast<std::int64_t>(lattice_size));
  }
};

FolnerRecord folner_record(const DLGraph& g, int h, int r);

// Partition of the region box into boxes over aligned half-open cubes
// [a, a + h) per axis. Each axis of the region must hold a whole number of
// tiles and axis 0 needs h in kZ.
std::vector<Box> tile(const DLGraph& g, const Box& region, int h);
// The tile cube that `tile` would assign to the height point v.
HeightCube tile_cube(const HeightCube& region, int h, const std::vector<int>& v);
// Number of tile boxes over each tile cube.
std::size_t tiles_per_cube(const DLGraph& g, const Box& region, int h);

}  // namespace dlab
