#pragma once

// Self-maps of L_q((t)) given as compositions of digit transducers. Clones
// are TreeVertex values: the vertex at level n is the clone of series whose
// digits at indices <= n are fixed, with measure q^-n.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dlab/rational.hpp"
#include "dlab/tree.hpp"

namespace dlab {

// out_j = in_{j-m}. Shift{1} is the contraction alpha (multiplication by t).
struct Shift {
  int m = 0;
};

// Digit at index `level` replaced by sigma[digit].
struct LevelPerm {
  int level = 0;
  std::vector<Digit> sigma;
};

// Reading digits from index lo upward, the unique source word that prefixes
// the stream is replaced by its target; the rest of the stream follows
// shifted by |target| - |source|. Sources and targets are complete prefix
// codes.
struct PrefixRewrite {
  int lo = 0;
  std::vector<std::pair<std::vector<Digit>, std::vector<Digit>>> pairs;
};

using Primitive = std::variant<Shift, LevelPerm, PrefixRewrite>;

class BoundaryMap {
 public:
  BoundaryMap() = default;
  BoundaryMap(int q, std::vector<Primitive> ops);

  static BoundaryMap identity(int q) { return BoundaryMap(q, {}); }
  static BoundaryMap alpha(int q, int m = 1) { return BoundaryMap(q, {Shift{m}}); }

  int q() const { return q_; }
  const std::vector<Primitive>& ops() const { return ops_; }

  Series apply(const Series& x) const;
  // Image of a clone as a disjoint union of clones.
  std::vector<TreeVertex> image(const TreeVertex& clone) const;
  // Level of the image when it is a single clone, otherwise nullopt.
  std::optional<TreeVertex> image_clone(const TreeVertex& clone) const;

  BoundaryMap inverse() const;
  // this after `first`.
  BoundaryMap after(const BoundaryMap& first) const;

  // Bilipschitz exponent: images of clones are unions of clones whose levels
  // differ from the source level by at most kappa(); K = q^kappa.
  int kappa() const;
  std::int64_t K() const;
  // Smallest level at which every clone maps onto a single clone.
  int transducer_depth() const;
  // Digits below this index are never rewritten or permuted (only shifted).
  int window_lo() const;
  // Only nonnegative shifts and level permutations, so output digits at
  // indices <= n depend only on input digits at indices <= n.
  bool causal() const;

  std::string describe() const;

 private:
  int q_ = 2;
  std::vector<Primitive> ops_;
};

struct MeasureLinearity {
  bool linear = false;
  Rational lambda;
  // Witnessing clones with different ratios when not linear.
  std::optional<std::pair<TreeVertex, TreeVertex>> witness;
  Rational witness_ratios[2];
};

// mu(phi(C)) / mu(C) over every clone at level `depth` with digits in
// [window_lo, depth]. Requires depth >= transducer_depth().
MeasureLinearity measure_linear_constant(const BoundaryMap& phi, int depth);

// Parses one map: "id", "alpha", "alpha_inv", or an array of
// {"op": "shift", "m": m}, {"op": "perm", "level": l, "sigma": [...]},
// {"op": "rewrite", "lo": l, "pairs": [[[src], [tgt]], ...]} and the
// shorthand strings.
BoundaryMap parse_boundary_map(const std::string& json, int q);
// An array with one map per tree.
std::vector<BoundaryMap> parse_boundary_maps(const std::string& json, int q, int d);
std::string to_json(const BoundaryMap& phi);

// A random measure-linear transducer: shifts, level permutations and
// uniform-length rewrites.
BoundaryMap random_measure_linear_map(int q, std::mt19937_64& rng);

}  // namespace dlab
