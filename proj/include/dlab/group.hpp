#pragma once

// The affine matrix group
//   [ prod_i (t + l_i)^{k_i}   P ]
//   [ 0                        1 ]
// over L_q[t, (t + l_i)^-1], its standard generators, the index-k subgroup
// with k_1 in kZ, and the map from group elements to vertices of DL_d(q).

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dlab/algebra.hpp"
#include "dlab/dlgraph.hpp"
#include "dlab/report.hpp"

namespace dlab {

struct GroupElement {
  std::vector<int> exps;
  RationalElement P;

  std::string key() const;
  std::size_t hash() const;
  // {"exps": [...], "num": [...], "den": [...]}
  std::string json() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept { return g.hash(); }
};

template <class V>
using ElementMap = std::unordered_map<GroupElement, V, GroupElementHash>;

struct Generator {
  GroupElement element;
  std::string label;
  int length = 1;  // length as a word in the standard generators
};

class Group {
 public:
  explicit Group(RingParams r);
  Group(int q, int d) : Group(ring_params(q, d)) {}

  const RingParams& ring() const { return r_; }
  int d() const { return r_.d; }
  int q() const { return r_.q; }

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement invert(const GroupElement& g) const;
  // (t + l_i, b) and ((t + l_i) / (t + l_j), -b / (t + l_j)).
  GroupElement s_gen(int i, Coeff b) const;
  GroupElement sd_gen(int i, int j, Coeff b) const;

  // The full generating set, inverses included, duplicates removed; it has
  // d(d-1)q elements.
  const std::vector<Generator>& generators() const { return gens_; }
  std::vector<Generator> subgroup_generators(int k) const;

  bool valid(const GroupElement& g) const;

 private:
  RingParams r_;
  std::vector<Generator> gens_;
};

bool subgroup_membership(const GroupElement& g, int k);
int coset_index(const GroupElement& g, int k);

struct CayleyBall {
  std::vector<GroupElement> elements;  // BFS order
  std::vector<int> length;             // word length
  std::vector<std::size_t> spheres;
};

struct CayleyOptions {
  std::size_t max_elements = 2'000'000;
  int workers = 1;
};

// BFS from the identity with edges g -> g s.
CayleyBall cayley_ball(const Group& G, int radius, const CayleyOptions& opt = {});
CayleyBall cayley_ball(const Group& G, const std::vector<Generator>& gens, int radius,
                       const CayleyOptions& opt = {});

// "radius,sphere_size,ball_size" rows.
std::string growth_csv(const CayleyBall& b);

// Digit cutoffs per tree: tree coordinate i keeps the expansion exponents up
// to h_i + offset_i, with exponent e stored at tree index e - offset_i.
std::vector<int> default_offsets(int d);
DLVertex correspond(const Group& G, const GroupElement& g);
DLVertex correspond(const Group& G, const GroupElement& g, const std::vector<int>& offsets);

Report validate_correspondence(const Group& G, int radius, const std::vector<int>& offsets = {},
                               const CayleyOptions& opt = {});

// Cheapest cost, counting each subgroup generator by its standard word
// length, of reaching every subgroup member of the radius-R Cayley ball;
// search is cut off at cost k*R. Returns the members not reached.
struct Reachability {
  std::size_t members = 0;
  std::size_t reached = 0;
  int max_cost = 0;
  std::vector<GroupElement> missing;
};
Reachability subgroup_reachability(const Group& G, int k, int radius, const CayleyOptions& opt = {});

}  // namespace dlab
