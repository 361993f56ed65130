#pragma once

// Vertices of the oriented (q+1)-valent tree, addressed as clones of
// Laurent series: the vertex at level n is the set of series whose digits
// at indices <= n are fixed. Children have level n+1 (one new digit at index
// n+1), the parent has level n-1.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dlab {

using Digit = std::uint8_t;

// Maximum digit alphabet size supported by vertex keys.
inline constexpr int kMaxQ = 36;

// A finitely supported digit sequence indexed by Z, stored densely between
// its lowest and highest nonzero digits.
class Series {
 public:
  Series() = default;
  Series(int lo, std::vector<Digit> digits);

  bool empty() const { return d_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(d_.size()) - 1; }
  std::span<const Digit> digits() const { return d_; }

  Digit at(int i) const {
    return i >= lo_ && i < lo_ + static_cast<int>(d_.size()) ? d_[static_cast<std::size_t>(i - lo_)] : 0;
  }
  void set(int i, Digit v);
  // Digits with index <= n.
  Series truncated(int n) const;
  // Shift every digit from index i to i + m.
  Series shifted(int m) const;

  friend bool operator==(const Series&, const Series&) = default;
  friend auto operator<=>(const Series&, const Series&) = default;

 private:
  void trim();
  std::int32_t lo_ = 0;
  std::vector<Digit> d_;
};

class TreeVertex {
 public:
  TreeVertex() = default;
  explicit TreeVertex(int level) : level_(level) {}
  // Digits above `level` in `digits` are dropped.
  TreeVertex(int level, const Series& digits);

  int level() const { return level_; }
  const Series& digits() const { return digits_; }
  Digit digit(int i) const { return i <= level_ ? digits_.at(i) : 0; }

  TreeVertex parent() const;
  TreeVertex child(Digit a) const;
  std::vector<TreeVertex> children(int q) const;
  TreeVertex ancestor(int steps) const;
  // All descendants exactly `steps` levels below, in lexicographic order of
  // the new digits (index level+1 first).
  std::vector<TreeVertex> descendants(int q, int steps) const;

  // True if this vertex lies in the subtree rooted at `a` (or equals it).
  bool descends_from(const TreeVertex& a) const;

  // The digits at indices a.level()+1 .. level(), where a is the ancestor
  // at level `from`. Used to index vertices of a subtree.
  void append_path(int from, std::vector<Digit>& out) const;

  std::string key() const;
  void append_key(std::string& out) const;
  std::size_t hash() const;

  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
  friend auto operator<=>(const TreeVertex&, const TreeVertex&) = default;

 private:
  std::int32_t level_ = 0;
  Series digits_;
};

char digit_char(Digit d);

}  // namespace dlab

template <>
struct std::hash<dlab::TreeVertex> {
  std::size_t operator()(const dlab::TreeVertex& v) const noexcept { return v.hash(); }
};
