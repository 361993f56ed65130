#include "dlab/boundary_map.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>

#include <json.hpp>

#include "dlab/error.hpp"

namespace dlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_prefix(const std::vector<Digit>& a, const std::vector<Digit>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

void check_code(const std::vector<std::vector<Digit>>& code, int q, const char* what) {
  Rational kraft(0);
  for (std::size_t i = 0; i < code.size(); ++i) {
    for (Digit x : code[i]) require(x < q, std::string(what) + " digit out of range");
    kraft += Rational::power(q, -static_cast<int>(code[i].size()));
    for (std::size_t j = 0; j < code.size(); ++j)
      if (i != j) require(!is_prefix(code[i], code[j]), std::string(what) + " words are not prefix-free");
  }
  require(kraft == Rational(1), std::string(what) + " words are not a complete prefix code");
}

void validate(const Primitive& p, int q) {
  std::visit(overloaded{[](const Shift&) {},
                        [q](const LevelPerm& lp) {
                          require(static_cast<int>(lp.sigma.size()) == q, "permutation must have q entries");
                          std::vector<Digit> s = lp.sigma;
                          std::sort(s.begin(), s.end());
                          for (int i = 0; i < q; ++i) require(s[static_cast<std::size_t>(i)] == i, "sigma is not a permutation");
                        },
                        [q](const PrefixRewrite& rw) {
                          require(!rw.pairs.empty(), "rewrite needs at least one pair");
                          std::vector<std::vector<Digit>> src, tgt;
                          for (const auto& [s, t] : rw.pairs) {
                            src.push_back(s);
                            tgt.push_back(t);
                          }
                          check_code(src, q, "rewrite source");
                          check_code(tgt, q, "rewrite target");
                        }},
             p);
}

// Digits of x at indices lo .. lo+n-1.
std::vector<Digit> read(const Series& x, int lo, int n) {
  std::vector<Digit> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = x.at(lo + i);
  return w;
}

std::size_t max_len(const PrefixRewrite& rw, bool source) {
  std::size_t m = 0;
  for (const auto& [s, t] : rw.pairs) m = std::max(m, source ? s.size() : t.size());
  return m;
}

// Digits of `x` below lo, then `word` from lo, then `tail` digits of x taken
// from index `from` onward shifted to follow the word.
Series splice(const Series& x, int lo, const std::vector<Digit>& word, int from, bool keep_tail) {
  std::vector<Digit> digs;
  const int start = std::min(x.empty() ? lo : x.lo(), lo);
  for (int i = start; i < lo; ++i) digs.push_back(x.at(i));
  digs.insert(digs.end(), word.begin(), word.end());
  if (keep_tail && !x.empty())
    for (int i = from; i <= x.hi(); ++i) digs.push_back(x.at(i));
  return Series(start, std::move(digs));
}

Series apply_one(const Primitive& p, const Series& x) {
  return std::visit(overloaded{[&](const Shift& s) { return x.shifted(s.m); },
                               [&](const LevelPerm& lp) {
                                 Series y = x;
                                 y.set(lp.level, lp.sigma[x.at(lp.level)]);
                                 return y;
                               },
                               [&](const PrefixRewrite& rw) {
                                 for (const auto& [src, tgt] : rw.pairs)
                                   if (read(x, rw.lo, static_cast<int>(src.size())) == src)
                                     return splice(x, rw.lo, tgt, rw.lo + static_cast<int>(src.size()), true);
                                 fail(ErrorCode::InvalidArgument, "rewrite source code is not complete");
                               }},
                    p);
}

void image_one(const Primitive& p, const TreeVertex& c, std::vector<TreeVertex>& out) {
  std::visit(overloaded{[&](const Shift& s) { out.emplace_back(c.level() + s.m, c.digits().shifted(s.m)); },
                        [&](const LevelPerm& lp) {
                          if (c.level() < lp.level) {
                            out.push_back(c);
                            return;
                          }
                          Series y = c.digits();
                          y.set(lp.level, lp.sigma[y.at(lp.level)]);
                          out.emplace_back(c.level(), y);
                        },
                        [&](const PrefixRewrite& rw) {
                          const int n = c.level();
                          if (n < rw.lo) {
                            out.push_back(c);
                            return;
                          }
                          const int known = n - rw.lo + 1;
                          const auto w = read(c.digits(), rw.lo, known);
                          for (const auto& [src, tgt] : rw.pairs) {
                            const int ls = static_cast<int>(src.size()), lt = static_cast<int>(tgt.size());
                            if (ls <= known && is_prefix(src, w)) {
                              out.emplace_back(n + lt - ls, splice(c.digits(), rw.lo, tgt, rw.lo + ls, true));
                              return;
                            }
                          }
                          for (const auto& [src, tgt] : rw.pairs)
                            if (is_prefix(w, src))
                              out.emplace_back(rw.lo + static_cast<int>(tgt.size()) - 1,
                                               splice(c.digits(), rw.lo, tgt, 0, false));
                        }},
             p);
}

struct ShiftRange {
  int lo = 0, hi = 0;
};

}  // namespace

BoundaryMap::BoundaryMap(int q, std::vector<Primitive> ops) : q_(q), ops_(std::move(ops)) {
  require(q >= 2 && q <= kMaxQ, "q out of range for boundary maps");
  for (const auto& p : ops_) validate(p, q_);
}

Series BoundaryMap::apply(const Series& x) const {
  Series y = x;
  for (const auto& p : ops_) y = apply_one(p, y);
  return y;
}

std::vector<TreeVertex> BoundaryMap::image(const TreeVertex& clone) const {
  std::vector<TreeVertex> cur{clone};
  for (const auto& p : ops_) {
    std::vector<TreeVertex> next;
    for (const auto& c : cur) image_one(p, c, next);
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

std::optional<TreeVertex> BoundaryMap::image_clone(const TreeVertex& clone) const {
  auto im = image(clone);
  if (im.size() != 1) return std::nullopt;
  return im.front();
}

BoundaryMap BoundaryMap::inverse() const {
  std::vector<Primitive> inv;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it)
    inv.push_back(std::visit(overloaded{[](const Shift& s) -> Primitive { return Shift{-s.m}; },
                                        [](const LevelPerm& lp) -> Primitive {
                                          LevelPerm r{lp.level, lp.sigma};
                                          for (std::size_t a = 0; a < lp.sigma.size(); ++a)
                                            r.sigma[lp.sigma[a]] = static_cast<Digit>(a);
                                          return r;
                                        },
                                        [](const PrefixRewrite& rw) -> Primitive {
                                          PrefixRewrite r{rw.lo, {}};
                                          for (const auto& [s, t] : rw.pairs) r.pairs.emplace_back(t, s);
                                          return r;
                                        }},
                             *it));
  return BoundaryMap(q_, std::move(inv));
}

BoundaryMap BoundaryMap::after(const BoundaryMap& first) const {
  require(first.q_ == q_, "composing maps over different alphabets");
  std::vector<Primitive> ops = first.ops_;
  ops.insert(ops.end(), ops_.begin(), ops_.end());
  return BoundaryMap(q_, std::move(ops));
}

int BoundaryMap::kappa() const {
  int k = 0;
  for (const auto& p : ops_)
    k += std::visit(overloaded{[](const Shift& s) { return std::abs(s.m); }, [](const LevelPerm&) { return 0; },
                               [](const PrefixRewrite& rw) {
                                 int m = static_cast<int>(std::max(max_len(rw, true), max_len(rw, false)));
                                 for (const auto& [s, t] : rw.pairs)
                                   m = std::max(m, std::abs(static_cast<int>(t.size()) - static_cast<int>(s.size())));
                                 return m;
                               }},
                    p);
  return k;
}

std::int64_t BoundaryMap::K() const { return Rational::power(q_, kappa()).num(); }

namespace {

// Walks the ops tracking the range of cumulative index shifts; calls
// touch(index_in_input_coords, range) for every rewrite or permutation.
template <class Fn>
void walk(const std::vector<Primitive>& ops, Fn&& touch) {
  ShiftRange c;
  for (const auto& p : ops)
    std::visit(overloaded{[&](const Shift& s) {
                            c.lo += s.m;
                            c.hi += s.m;
                          },
                          [&](const LevelPerm& lp) { touch(lp.level, 0, c); },
                          [&](const PrefixRewrite& rw) {
                            touch(rw.lo, static_cast<int>(max_len(rw, true)), c);
                            int dmin = INT_MAX, dmax = INT_MIN;
                            for (const auto& [s, t] : rw.pairs) {
                              const int dl = static_cast<int>(t.size()) - static_cast<int>(s.size());
                              dmin = std::min(dmin, dl);
                              dmax = std::max(dmax, dl);
                            }
                            c.lo += dmin;
                            c.hi += dmax;
                          }},
               p);
}

}  // namespace

int BoundaryMap::window_lo() const {
  int w = 0;
  walk(ops_, [&](int index, int, ShiftRange c) { w = std::min(w, index - c.hi); });
  return w;
}

int BoundaryMap::transducer_depth() const {
  int depth = window_lo();
  walk(ops_, [&](int index, int src_len, ShiftRange c) {
    if (src_len > 0) depth = std::max(depth, index + src_len - 1 - c.lo);
  });
  return depth;
}

bool BoundaryMap::causal() const {
  for (const auto& p : ops_) {
    if (std::holds_alternative<PrefixRewrite>(p)) return false;
    if (const auto* s = std::get_if<Shift>(&p); s && s->m < 0) return false;
  }
  return true;
}

std::string BoundaryMap::describe() const {
  if (ops_.empty()) return "id";
  std::string out;
  for (const auto& p : ops_) {
    if (!out.empty()) out += " ; ";
    out += std::visit(overloaded{[](const Shift& s) { return "shift(" + std::to_string(s.m) + ")"; },
                                 [](const LevelPerm& lp) { return "perm@" + std::to_string(lp.level); },
                                 [](const PrefixRewrite& rw) {
                                   return "rewrite@" + std::to_string(rw.lo) + "[" + std::to_string(rw.pairs.size()) + "]";
                                 }},
                      p);
  }
  return out;
}

MeasureLinearity measure_linear_constant(const BoundaryMap& phi, int depth) {
  require(depth >= phi.transducer_depth(),
          "depth " + std::to_string(depth) + " is below the transducer depth " + std::to_string(phi.transducer_depth()));
  const int lo = phi.window_lo();
  const int width = depth - lo + 1;
  std::uint64_t count = 1;
  for (int i = 0; i < width; ++i) {
    count *= static_cast<std::uint64_t>(phi.q());
    if (count > 50'000'000) fail(ErrorCode::BudgetExceeded, "too many clones at this depth");
  }
  MeasureLinearity res;
  std::optional<TreeVertex> first;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Digit> digs(static_cast<std::size_t>(width));
    std::uint64_t v = idx;
    for (int i = width - 1; i >= 0; --i) {
      digs[static_cast<std::size_t>(i)] = static_cast<Digit>(v % static_cast<std::uint64_t>(phi.q()));
      v /= static_cast<std::uint64_t>(phi.q());
    }
    TreeVertex c(depth, Series(lo, std::move(digs)));
    Rational ratio(0);
    for (const auto& im : phi.image(c)) ratio += Rational::power(phi.q(), depth - im.level());
    if (!first) {
      first = c;
      res.lambda = ratio;
      res.linear = true;
    } else if (!(ratio == res.lambda)) {
      res.linear = false;
      res.witness = std::make_pair(*first, c);
      res.witness_ratios[0] = res.lambda;
      res.witness_ratios[1] = ratio;
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------- JSON

namespace {

std::vector<Digit> digits_of(const nlohmann::json& j) {
  std::vector<Digit> out;
  for (const auto& x : j) {
    const int v = x.get<int>();
    if (v < 0 || v >= kMaxQ) fail(ErrorCode::Parse, "digit out of range in map description");
    out.push_back(static_cast<Digit>(v));
  }
  return out;
}

void append_ops(const nlohmann::json& j, std::vector<Primitive>& ops) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "id") return;
    if (s == "alpha") ops.push_back(Shift{1});
    else if (s == "alpha_inv") ops.push_back(Shift{-1});
    else fail(ErrorCode::Parse, "unknown map name '" + s + "'");
    return;
  }
  if (j.is_array()) {
    for (const auto& e : j) append_ops(e, ops);
    return;
  }
  if (!j.is_object() || !j.contains("op")) fail(ErrorCode::Parse, "map primitive must be an object with \"op\"");
  const auto op = j.at("op").get<std::string>();
  if (op == "shift") {
    ops.push_back(Shift{j.at("m").get<int>()});
  } else if (op == "perm") {
    ops.push_back(LevelPerm{j.at("level").get<int>(), digits_of(j.at("sigma"))});
  } else if (op == "rewrite") {
    PrefixRewrite rw{j.value("lo", 0), {}};
    for (const auto& pr : j.at("pairs")) {
      if (!pr.is_array() || pr.size() != 2) fail(ErrorCode::Parse, "rewrite pair must be [source, target]");
      rw.pairs.emplace_back(digits_of(pr[0]), digits_of(pr[1]));
    }
    ops.push_back(std::move(rw));
  } else {
    fail(ErrorCode::Parse, "unknown primitive '" + op + "'");
  }
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("invalid map JSON: ") + e.what());
  }
}

BoundaryMap build(const nlohmann::json& j, int q) {
  std::vector<Primitive> ops;
  try {
    append_ops(j, ops);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed map primitive: ") + e.what());
  }
  try {
    return BoundaryMap(q, std::move(ops));
  } catch (const Error& e) {
    fail(ErrorCode::Parse, e.what());
  }
}

}  // namespace

BoundaryMap parse_boundary_map(const std::string& text, int q) { return build(parse_json(text), q); }

std::vector<BoundaryMap> parse_boundary_maps(const std::string& text, int q, int d) {
  auto j = parse_json(text);
  if (!j.is_array()) fail(ErrorCode::Parse, "expected an array with one map per tree");
  if (static_cast<int>(j.size()) != d)
    fail(ErrorCode::Parse, "expected " + std::to_string(d) + " maps, got " + std::to_string(j.size()));
  std::vector<BoundaryMap> out;
  for (const auto& e : j) out.push_back(build(e, q));
  return out;
}

std::string to_json(const BoundaryMap& phi) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : phi.ops())
    arr.push_back(std::visit(
        overloaded{[](const Shift& s) { return nlohmann::json{{"op", "shift"}, {"m", s.m}}; },
                   [](const LevelPerm& lp) {
                     return nlohmann::json{{"op", "perm"}, {"level", lp.level}, {"sigma", lp.sigma}};
                   },
                   [](const PrefixRewrite& rw) {
                     nlohmann::json pairs = nlohmann::json::array();
                     for (const auto& [s, t] : rw.pairs) pairs.push_back({s, t});
                     return nlohmann::json{{"op", "rewrite"}, {"lo", rw.lo}, {"pairs", pairs}};
                   }},
        p));
  return arr.dump();
}

// ---------------------------------------------------------------- random maps

namespace {

// Random complete prefix code: split a random leaf until `splits` splits.
std::vector<std::vector<Digit>> random_code(int q, int splits, std::mt19937_64& rng) {
  std::vector<std::vector<Digit>> leaves{{}};
  for (int s = 0; s < splits; ++s) {
    const auto i = std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng);
    auto w = leaves[i];
    leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(i));
    for (int a = 0; a < q; ++a) {
      leaves.push_back(w);
      leaves.back().push_back(static_cast<Digit>(a));
    }
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

}  // namespace

BoundaryMap random_measure_linear_map(int q, std::mt19937_64& rng) {
  std::vector<Primitive> ops;
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < n; ++i) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0:
        ops.push_back(Shift{std::uniform_int_distribution<int>(-2, 2)(rng)});
        break;
      case 1: {
        LevelPerm lp{std::uniform_int_distribution<int>(-2, 3)(rng), {}};
        for (int a = 0; a < q; ++a) lp.sigma.push_back(static_cast<Digit>(a));
        std::shuffle(lp.sigma.begin(), lp.sigma.end(), rng);
        ops.push_back(std::move(lp));
        break;
      }
      default: {
        // Same length profile on both sides: a relabelled copy of the code,
        // paired at random within each word length.
        auto src = random_code(q, std::uniform_int_distribution<int>(1, 3)(rng), rng);
        std::vector<Digit> relabel(static_cast<std::size_t>(q));
        std::iota(relabel.begin(), relabel.end(), Digit{0});
        std::shuffle(relabel.begin(), relabel.end(), rng);
        std::map<std::size_t, std::vector<std::vector<Digit>>> by_len;
        for (auto w : src) {
          for (auto& x : w) x = relabel[x];
          by_len[w.size()].push_back(std::move(w));
        }
        for (auto& [len, words] : by_len) std::shuffle(words.begin(), words.end(), rng);
        PrefixRewrite rw{std::uniform_int_distribution<int>(-1, 2)(rng), {}};
        std::map<std::size_t, std::size_t> used;
        for (const auto& s : src) rw.pairs.emplace_back(s, by_len[s.size()][used[s.size()]++]);
        ops.push_back(std::move(rw));
      }
    }
  }
  return BoundaryMap(q, std::move(ops));
}

}  // namespace dlab
