#include "dlab/tree.hpp"

#include "dlab/error.hpp"

namespace dlab {

Series::Series(int lo, std::vector<Digit> digits) : lo_(lo), d_(std::move(digits)) { trim(); }

void Series::trim() {
  std::size_t first = 0;
  while (first < d_.size() && d_[first] == 0) ++first;
  if (first == d_.size()) {
    d_.clear();
    lo_ = 0;
    return;
  }
  while (d_.back() == 0) d_.pop_back();
  if (first > 0) {
    d_.erase(d_.begin(), d_.begin() + static_cast<std::ptrdiff_t>(first));
    lo_ += static_cast<std::int32_t>(first);
  }
}

void Series::set(int i, Digit v) {
  if (d_.empty()) {
    if (v == 0) return;
    lo_ = i;
    d_.assign(1, v);
    return;
  }
  if (i < lo_) {
    if (v == 0) return;
    d_.insert(d_.begin(), static_cast<std::size_t>(lo_ - i), 0);
    lo_ = i;
  } else if (i > hi()) {
    if (v == 0) return;
    d_.resize(static_cast<std::size_t>(i - lo_ + 1), 0);
  }
  d_[static_cast<std::size_t>(i - lo_)] = v;
  if (v == 0) trim();
}

Series Series::truncated(int n) const {
  if (d_.empty() || hi() <= n) return *this;
  if (n < lo_) return {};
  return Series(lo_, std::vector<Digit>(d_.begin(), d_.begin() + (n - lo_ + 1)));
}

Series Series::shifted(int m) const {
  Series s = *this;
  if (!s.d_.empty()) s.lo_ += m;
  return s;
}

TreeVertex::TreeVertex(int level, const Series& digits)
    : level_(level), digits_(digits.truncated(level)) {}

TreeVertex TreeVertex::parent() const {
  TreeVertex p;
  p.level_ = level_ - 1;
  p.digits_ = digits_.truncated(level_ - 1);
  return p;
}

TreeVertex TreeVertex::child(Digit a) const {
  TreeVertex c = *this;
  c.level_ = level_ + 1;
  c.digits_.set(level_ + 1, a);
  return c;
}

std::vector<TreeVertex> TreeVertex::children(int q) const {
  std::vector<TreeVertex> out;
  out.reserve(static_cast<std::size_t>(q));
  for (int a = 0; a < q; ++a) out.push_back(child(static_cast<Digit>(a)));
  return out;
}

TreeVertex TreeVertex::ancestor(int steps) const {
  require(steps >= 0, "ancestor: negative step count");
  return TreeVertex(level_ - steps, digits_);
}

std::vector<TreeVertex> TreeVertex::descendants(int q, int steps) const {
  require(steps >= 0, "descendants: negative step count");
  std::vector<TreeVertex> layer{*this};
  for (int s = 0; s < steps; ++s) {
    std::vector<TreeVertex> next;
    next.reserve(layer.size() * static_cast<std::size_t>(q));
    for (const auto& v : layer)
      for (int a = 0; a < q; ++a) next.push_back(v.child(static_cast<Digit>(a)));
    layer = std::move(next);
  }
  return layer;
}

bool TreeVertex::descends_from(const TreeVertex& a) const {
  if (level_ < a.level_) return false;
  return digits_.truncated(a.level_) == a.digits_;
}

void TreeVertex::append_path(int from, std::vector<Digit>& out) const {
  for (int i = from + 1; i <= level_; ++i) out.push_back(digits_.at(i));
}

char digit_char(Digit d) { return "0123456789abcdefghijklmnopqrstuvwxyz"[d % kMaxQ]; }

void TreeVertex::append_key(std::string& out) const {
  out += std::to_string(level_);
  if (digits_.empty()) return;
  out += '/';
  out += std::to_string(digits_.lo());
  out += ':';
  for (Digit x : digits_.digits()) out += digit_char(x);
}

std::string TreeVertex::key() const {
  std::string s;
  append_key(s);
  return s;
}

std::size_t TreeVertex::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint32_t>(level_);
  h = (h ^ static_cast<std::uint32_t>(digits_.lo())) * 0x100000001b3ULL;
  for (Digit x : digits_.digits()) h = (h ^ x) * 0x100000001b3ULL;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

}  // namespace dlab
