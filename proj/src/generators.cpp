// Copyright 2026 The UltraOT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"
#include "rng.hpp"

namespace uot {

namespace {

constexpr const char* kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

// Heights q^-n / 2 by repeated division, so every routine that walks the
// grid lands on bit-identical values.
std::vector<double> level_heights(double q, int levels) {
  std::vector<double> g(static_cast<std::size_t>(levels) + 1);
  g[0] = 0.5;
  for (int n = 1; n <= levels; ++n) {
    g[n] = g[n - 1] / q;
    if (!(g[n] > 0.0) || !(g[n] < g[n - 1]))
      fail(ErrorCode::kInvalidArgument,
           "height grid degenerates at level " + std::to_string(n));
  }
  return g;
}

// Vertex order with every child before its parent.
std::vector<int> children_first(const Srt& s) {
  std::vector<int> order(static_cast<std::size_t>(s.num_vertices()));
  for (int v = 0; v < s.num_vertices(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return s.depth[a] > s.depth[b]; });
  return order;
}

// Rank of each leaf ordinal when labels are sorted.
std::vector<int> label_ranks(const Srt& s) {
  int n = s.num_leaves();
  std::vector<int> by_label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) by_label[i] = i;
  std::sort(by_label.begin(), by_label.end(), [&](int a, int b) {
    return s.labels[s.leaf_vertex[a]] < s.labels[s.leaf_vertex[b]];
  });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rank[by_label[i]] = i;
  return rank;
}

}  // namespace

Srt regular_space(int k, double q, int depth, long long leaf_cap) {
  if (k < 2 || k > 36)
    fail(ErrorCode::kInvalidArgument, "branching must be between 2 and 36");
  if (!(q > 1.0)) fail(ErrorCode::kInvalidArgument, "q must exceed 1");
  if (depth < 1) fail(ErrorCode::kInvalidArgument, "depth must be positive");
  if (leaf_cap < 1) fail(ErrorCode::kInvalidArgument, "leaf cap must be positive");
  long long leaves = 1;
  for (int n = 0; n < depth; ++n) {
    leaves *= k;
    if (leaves > leaf_cap)
      fail(ErrorCode::kCapExceeded,
           "leaf count k^depth exceeds the cap of " + std::to_string(leaf_cap));
  }
  std::vector<double> g = level_heights(q, depth);

  long long total = 0;
  long long width = 1;
  for (int n = 0; n <= depth; ++n) {
    total += width;
    width *= k;
  }
  std::vector<int> parent(static_cast<std::size_t>(total));
  std::vector<double> height(static_cast<std::size_t>(total));
  std::vector<std::string> labels(static_cast<std::size_t>(total));
  // Level n occupies a contiguous id block; child j of level-n index i is
  // level-(n+1) index i*k + j.
  long long base = 0;
  width = 1;
  for (int n = 0; n <= depth; ++n) {
    long long parent_base = base - width / k;
    for (long long i = 0; i < width; ++i) {
      std::size_t id = static_cast<std::size_t>(base + i);
      parent[id] = n == 0 ? -1 : static_cast<int>(parent_base + i / k);
      height[id] = n == depth ? 0.0 : g[n];
      if (n == depth) {
        std::string word(static_cast<std::size_t>(depth), '0');
        long long rest = i;
        for (int pos = depth - 1; pos >= 0; --pos) {
          word[static_cast<std::size_t>(pos)] = kDigits[rest % k];
          rest /= k;
        }
        labels[id] = std::move(word);
      }
    }
    base += width;
    width *= k;
  }
  return canonical_srt(make_srt(std::move(parent), std::move(height), std::move(labels)));
}

Srt smallparts_space(int max_vertices) {
  if (max_vertices < 3)
    fail(ErrorCode::kInvalidArgument, "vertex budget cannot fit the root's children");
  // 1-based construction: vertex m's children are a contiguous block, and
  // child counts a_1 = 2, a_m = 2^(m-1) + 1 grow so fast that once one
  // vertex is demoted all later ones are too.
  std::vector<int> parent1{0};
  std::vector<char> has_kids{0};
  long long total = 1;
  for (long long m = 1; m <= total; ++m) {
    if (m > 62) break;
    long long am = m == 1 ? 2 : (1LL << (m - 1)) + 1;
    if (total + am > max_vertices) break;
    for (long long j = 0; j < am; ++j) {
      parent1.push_back(static_cast<int>(m));
      has_kids.push_back(0);
    }
    has_kids[static_cast<std::size_t>(m - 1)] = 1;
    total += am;
  }
  std::vector<int> parent(static_cast<std::size_t>(total));
  std::vector<double> height(static_cast<std::size_t>(total));
  std::vector<std::string> labels(static_cast<std::size_t>(total));
  for (long long m = 1; m <= total; ++m) {
    std::size_t id = static_cast<std::size_t>(m - 1);
    parent[id] = parent1[id] - 1;
    if (has_kids[id]) {
      height[id] = std::ldexp(1.0, static_cast<int>(1 - m));
    } else {
      height[id] = 0.0;
      labels[id] = std::to_string(m);
    }
  }
  return canonical_srt(make_srt(std::move(parent), std::move(height), std::move(labels)));
}

CountableExample countable_example(int n) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "need at least two points");
  std::vector<int> parent;
  std::vector<double> height;
  std::vector<std::string> labels;
  auto add = [&](int par, double h, std::string label) {
    parent.push_back(par);
    height.push_back(h);
    labels.push_back(std::move(label));
    return static_cast<int>(parent.size()) - 1;
  };
  int spine = add(-1, 0.5, "");
  add(spine, 0.0, "w1");
  for (int i = 2; i <= n - 1; ++i) {
    spine = add(spine, 0.5 / (1.0 + std::log(static_cast<double>(i))), "");
    add(spine, 0.0, "w" + std::to_string(i));
  }
  add(spine, 0.0, "w" + std::to_string(n));

  std::vector<std::string> mlabels(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) mlabels[static_cast<std::size_t>(i - 1)] = "w" + std::to_string(i);
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      double d = 1.0 / (1.0 + std::log(static_cast<double>(i)));
      dist[static_cast<std::size_t>(i - 1) * n + (j - 1)] = d;
      dist[static_cast<std::size_t>(j - 1) * n + (i - 1)] = d;
    }
  CountableExample out;
  out.matrix = make_matrix(std::move(mlabels), std::move(dist));
  out.tree = canonical_srt(make_srt(std::move(parent), std::move(height), std::move(labels)));
  return out;
}

Srt random_ultrametric(uint64_t seed, int leaves) {
  if (leaves < 1) fail(ErrorCode::kInvalidArgument, "leaf count must be positive");
  int width = 1;
  for (int v = leaves - 1; v >= 10; v /= 10) ++width;
  int next_label = 0;
  auto label = [&]() {
    std::string t = std::to_string(next_label++);
    return "x" + std::string(static_cast<std::size_t>(width) - t.size(), '0') + t;
  };
  if (leaves == 1) return make_srt({-1}, {0.0}, {label()});

  Rng rng(seed, 1);
  std::vector<int> parent;
  std::vector<double> height;
  std::vector<std::string> labels;
  auto add = [&](int par, double h, std::string lab) {
    parent.push_back(par);
    height.push_back(h);
    labels.push_back(std::move(lab));
    return static_cast<int>(parent.size()) - 1;
  };
  // units on the 2^-20 grid keep heights exact and strictly decreasing
  struct Item {
    int par;
    int count;
    long long units;
  };
  std::vector<Item> stack;
  long long root_units = (1LL << 18) + static_cast<long long>(rng.below((1ULL << 18) + 1));
  stack.push_back({-1, leaves, root_units});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    int v = add(it.par, std::ldexp(static_cast<double>(it.units), -20), "");
    if (it.units <= 1) {
      for (int i = 0; i < it.count; ++i) add(v, 0.0, label());
      continue;
    }
    int parts = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(
                        std::min(3, it.count - 1))));
    std::vector<int> size(static_cast<std::size_t>(parts), 1);
    for (int extra = it.count - parts; extra > 0; --extra)
      ++size[rng.below(static_cast<uint64_t>(parts))];
    for (int j = 0; j < parts; ++j) {
      if (size[static_cast<std::size_t>(j)] == 1) {
        add(v, 0.0, label());
      } else {
        long long cu = 1 + static_cast<long long>(
                               rng.below(static_cast<uint64_t>(it.units - 1)));
        stack.push_back({v, size[static_cast<std::size_t>(j)], cu});
      }
    }
  }
  return canonical_srt(make_srt(std::move(parent), std::move(height), std::move(labels)));
}

Measure random_measure(const Srt& s, uint64_t seed) {
  int n = s.num_leaves();
  Rng rng(seed, 2);
  std::vector<long long> cuts(static_cast<std::size_t>(n) - 1);
  for (auto& c : cuts) c = static_cast<long long>(rng.below((1ULL << 30) + 1));
  std::sort(cuts.begin(), cuts.end());
  Measure mu;
  mu.w.resize(static_cast<std::size_t>(n));
  long long prev = 0;
  for (int i = 0; i < n; ++i) {
    long long next = i + 1 < n ? cuts[static_cast<std::size_t>(i)] : (1LL << 30);
    mu.w[static_cast<std::size_t>(i)] = std::ldexp(static_cast<double>(next - prev), -30);
    prev = next;
  }
  return mu;
}

CubeLayout cube_vprime(const Srt& s) {
  CubeLayout out;
  out.k = s.degree(s.root);
  if (out.k < 2) fail(ErrorCode::kStructure, "root must branch");
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (s.is_leaf(v)) continue;
    if (s.degree(v) != out.k)
      fail(ErrorCode::kStructure,
           "tree is not " + std::to_string(out.k) + "-regular at vertex " +
               std::to_string(v));
    for (int e = s.child_off[v]; e + 1 < s.child_off[v + 1]; ++e) {
      int c = s.child[static_cast<std::size_t>(e)];
      out.vertex.push_back(c);
      out.depth.push_back(s.depth[c]);
    }
  }
  return out;
}

Measure cube_to_measure(const Srt& s, double eps, const std::vector<double>& a) {
  CubeLayout layout = cube_vprime(s);
  if (!(eps >= 0.0) || eps * (layout.k - 1) >= 1.0)
    fail(ErrorCode::kInvalidArgument,
         "spread eps must satisfy eps * (k - 1) < 1");
  if (a.size() != layout.vertex.size())
    fail(ErrorCode::kInvalidArgument,
         "assignment needs " + std::to_string(layout.vertex.size()) +
             " coordinates, got " + std::to_string(a.size()));
  for (double x : a)
    if (!(x >= 0.0 && x <= 1.0))
      fail(ErrorCode::kInvalidArgument, "assignment coordinates must lie in [0, 1]");

  std::vector<double> share(static_cast<std::size_t>(s.num_vertices()),
                            std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < layout.vertex.size(); ++i)
    share[static_cast<std::size_t>(layout.vertex[i])] = a[i];

  std::vector<double> mass(static_cast<std::size_t>(s.num_vertices()), 0.0);
  mass[static_cast<std::size_t>(s.root)] = 1.0;
  std::vector<int> order = children_first(s);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (s.is_leaf(v)) continue;
    double rem = mass[static_cast<std::size_t>(v)];
    for (int e = s.child_off[v]; e + 1 < s.child_off[v + 1]; ++e) {
      int c = s.child[static_cast<std::size_t>(e)];
      double m = mass[static_cast<std::size_t>(v)] *
                 (1.0 + eps * share[static_cast<std::size_t>(c)]) / layout.k;
      mass[static_cast<std::size_t>(c)] = m;
      rem -= m;
    }
    mass[static_cast<std::size_t>(s.child[static_cast<std::size_t>(
        s.child_off[v + 1] - 1)])] = rem;
  }
  Measure mu;
  mu.w.resize(static_cast<std::size_t>(s.num_leaves()));
  for (int i = 0; i < s.num_leaves(); ++i)
    mu.w[static_cast<std::size_t>(i)] =
        mass[static_cast<std::size_t>(s.leaf_vertex[static_cast<std::size_t>(i)])];
  return mu;
}

std::vector<double> comb_weights(int count, double eps) {
  if (count < 1) fail(ErrorCode::kInvalidArgument, "weight count must be positive");
  if (!(eps > 0.0)) fail(ErrorCode::kInvalidArgument, "eps must be positive");
  double z = zeta(1.0 + eps);
  std::vector<double> b(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i)
    b[static_cast<std::size_t>(i - 1)] =
        0.9 * std::pow(static_cast<double>(i), -(1.0 + eps)) / z;
  return b;
}

Measure dirac_comb_measure(const Srt& s, const std::vector<int>& points,
                           const std::vector<double>& b,
                           const std::vector<double>& x) {
  if (points.empty()) fail(ErrorCode::kInvalidArgument, "no comb points");
  std::vector<char> seen(static_cast<std::size_t>(s.num_leaves()), 0);
  for (int p : points) {
    if (p < 0 || p >= s.num_leaves())
      fail(ErrorCode::kInvalidArgument, "comb point out of range");
    if (seen[static_cast<std::size_t>(p)]++)
      fail(ErrorCode::kInvalidArgument, "comb points must be distinct");
  }
  if (x.size() + 1 > points.size() || x.size() > b.size())
    fail(ErrorCode::kInvalidArgument, "coordinate vector too long");
  Kahan total;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(b[i] > 0.0)) fail(ErrorCode::kInvalidArgument, "weights must be positive");
    if (!(x[i] >= 0.0 && x[i] <= 1.0))
      fail(ErrorCode::kInvalidArgument, "coordinates must lie in [0, 1]");
    total.add(b[i] * x[i]);
  }
  if (total.value() > 1.0 + 1e-12)
    fail(ErrorCode::kInvalidArgument, "weighted coordinates exceed unit mass");
  Measure mu;
  mu.w.assign(static_cast<std::size_t>(s.num_leaves()), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    mu.w[static_cast<std::size_t>(points[i + 1])] = b[i] * x[i];
  mu.w[static_cast<std::size_t>(points[0])] += std::max(0.0, 1.0 - total.value());
  return mu;
}

FrostmanSeq greedy_frostman_sequence(const Srt& s, const Measure& mu,
                                     double c1, double d2, double eps,
                                     int target_len) {
  if (!(c1 > 0.0) || !(d2 > 0.0) || !(eps > 0.0))
    fail(ErrorCode::kInvalidArgument, "c1, d2 and eps must be positive");
  if (target_len < 0) fail(ErrorCode::kInvalidArgument, "negative target length");
  if (mu.size() != s.num_leaves())
    fail(ErrorCode::kSupportMismatch, "measure does not match the tree");
  std::vector<double> ball = ball_masses(s, mu);
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (s.is_leaf(v)) continue;
    double cap = c1 * std::pow(2.0 * s.height[v], d2);
    if (ball[static_cast<std::size_t>(v)] > cap * (1.0 + 1e-12))
      fail(ErrorCode::kFrostman,
           "ball at vertex " + std::to_string(v) + " carries mass " +
               fmt_double(ball[static_cast<std::size_t>(v)]) +
               ", above c1 * diam^d2 = " + fmt_double(cap));
  }

  FrostmanSeq seq;
  seq.c2 = 1.0 / zeta(1.0 + eps);
  seq.c = std::pow(seq.c2 / c1, 1.0 / d2);
  seq.dp = d2 / (1.0 + eps);

  int n = s.num_leaves();
  std::vector<int> by_label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) by_label[static_cast<std::size_t>(i)] = i;
  std::sort(by_label.begin(), by_label.end(), [&](int a, int b) {
    return s.labels[s.leaf_vertex[a]] < s.labels[s.leaf_vertex[b]];
  });
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  int ptr = 0;
  while (target_len == 0 ||
         static_cast<int>(seq.points.size()) < target_len) {
    while (ptr < n && !alive[static_cast<std::size_t>(by_label[ptr])]) ++ptr;
    if (ptr == n) break;
    int leaf = by_label[static_cast<std::size_t>(ptr)];
    long long i = static_cast<long long>(seq.points.size()) + 1;
    double r = std::pow(
        seq.c2 * std::pow(static_cast<double>(i), -(1.0 + eps)) / c1, 1.0 / d2);
    seq.points.push_back(leaf);
    seq.radii.push_back(r);
    // the closed ball of radius r is the highest ancestor with 2h <= r
    int v = s.leaf_vertex[static_cast<std::size_t>(leaf)];
    int u = s.parent[static_cast<std::size_t>(v)];
    while (u != -1 && 2.0 * s.height[static_cast<std::size_t>(u)] <= r) {
      v = u;
      u = s.parent[static_cast<std::size_t>(v)];
    }
    for (int j = s.range_lo[static_cast<std::size_t>(v)];
         j < s.range_hi[static_cast<std::size_t>(v)]; ++j)
      alive[static_cast<std::size_t>(j)] = 0;
  }
  return seq;
}

namespace {

// Mutable tree arrays shared by the regrouping stages.
struct ReWork {
  std::vector<int> par;
  std::vector<double> hgt;
  std::vector<std::vector<int>> kids;
  std::vector<double> mass;
  std::vector<int> rank;
  std::vector<char> removed;

  int add(int parent, double h, double m, int rk) {
    par.push_back(parent);
    hgt.push_back(h);
    kids.emplace_back();
    mass.push_back(m);
    rank.push_back(rk);
    removed.push_back(0);
    return static_cast<int>(par.size()) - 1;
  }
};

}  // namespace

RegroupResult regroup(const Srt& s, const Measure& mu, double q, double c,
                      double sp, int depth) {
  if (!(q > 1.0)) fail(ErrorCode::kInvalidArgument, "q must exceed 1");
  if (!(c > 0.0)) fail(ErrorCode::kInvalidArgument, "c must be positive");
  if (!(sp > 0.0)) fail(ErrorCode::kInvalidArgument, "sp must be positive");
  if (depth < 1 || depth > 60)
    fail(ErrorCode::kInvalidArgument, "depth must lie in [1, 60]");
  if (mu.size() != s.num_leaves())
    fail(ErrorCode::kSupportMismatch, "measure does not match the tree");
  std::vector<double> g = level_heights(q, depth);
  if (s.height[static_cast<std::size_t>(s.root)] != 0.5)
    fail(ErrorCode::kStructure,
         "root height must be exactly 1/2; quantize to the q-grid first");

  int nv = s.num_vertices();
  std::vector<double> hgt(s.height);
  for (int v = 0; v < nv; ++v) {
    if (s.is_leaf(v)) continue;
    double h = s.height[static_cast<std::size_t>(v)];
    bool snapped = false;
    for (int n = 0; n <= depth; ++n)
      if (std::abs(h - g[static_cast<std::size_t>(n)]) <=
          1e-12 * g[static_cast<std::size_t>(n)]) {
        hgt[static_cast<std::size_t>(v)] = g[static_cast<std::size_t>(n)];
        snapped = true;
        break;
      }
    if (!snapped && h > g[static_cast<std::size_t>(depth)])
      fail(ErrorCode::kStructure,
           "internal height " + fmt_double(h) +
               " is off the q-grid; quantize first");
  }

  std::vector<double> ball = ball_masses(s, mu);
  for (int v = 0; v < nv; ++v) {
    double cap = s.is_leaf(v)
                     ? c * std::pow(2.0 * g[static_cast<std::size_t>(depth)], sp)
                     : c * std::pow(2.0 * hgt[static_cast<std::size_t>(v)], sp);
    if (ball[static_cast<std::size_t>(v)] > cap * (1.0 + 1e-12))
      fail(ErrorCode::kFrostman,
           std::string(s.is_leaf(v) ? "atom" : "ball") + " at vertex " +
               std::to_string(v) + " carries mass " +
               fmt_double(ball[static_cast<std::size_t>(v)]) +
               ", above the scale cap " + fmt_double(cap));
  }

  ReWork w;
  w.par = s.parent;
  w.hgt = hgt;
  w.mass = ball;
  w.removed.assign(static_cast<std::size_t>(nv), 0);
  w.kids.resize(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v)
    for (int e = s.child_off[v]; e < s.child_off[v + 1]; ++e)
      w.kids[static_cast<std::size_t>(v)].push_back(
          s.child[static_cast<std::size_t>(e)]);
  w.rank.assign(static_cast<std::size_t>(nv), 0);
  {
    std::vector<int> lr = label_ranks(s);
    std::vector<int> order = children_first(s);
    for (int v : order) {
      if (s.is_leaf(v)) {
        w.rank[static_cast<std::size_t>(v)] =
            lr[static_cast<std::size_t>(s.leaf_ix[static_cast<std::size_t>(v)])];
      } else {
        int best = std::numeric_limits<int>::max();
        for (int e = s.child_off[v]; e < s.child_off[v + 1]; ++e)
          best = std::min(
              best, w.rank[static_cast<std::size_t>(
                        s.child[static_cast<std::size_t>(e)])]);
        w.rank[static_cast<std::size_t>(v)] = best;
      }
    }
  }

  RegroupResult out;
  out.levels.resize(static_cast<std::size_t>(depth));
  out.precondition_ok = std::pow(q, sp) > 2.0 * c;
  out.child_bound =
      static_cast<long long>(std::ceil(std::pow(q, sp) / 3.0 - 1e-9));

  for (int n = 1; n <= depth; ++n) {
    double hp = g[static_cast<std::size_t>(n - 1)];
    double hc = g[static_cast<std::size_t>(n)];
    double lo = 0.5 * c * std::pow(2.0 * hc, sp);
    double hi = 3.0 * lo;
    RegroupLevel& lev = out.levels[static_cast<std::size_t>(n - 1)];
    lev.n = n;
    lev.lo = lo;
    lev.hi = hi;
    lev.min_mass = std::numeric_limits<double>::infinity();
    long long prev_min_children = -1;

    int snapshot = static_cast<int>(w.par.size());
    for (int u = 0; u < snapshot; ++u) {
      if (w.removed[static_cast<std::size_t>(u)]) continue;
      if (w.hgt[static_cast<std::size_t>(u)] != hp) continue;
      if (w.kids[static_cast<std::size_t>(u)].empty()) continue;

      // w.add below may reallocate the outer kids array, so walk a copy
      std::vector<int> members;
      std::vector<int> orig = w.kids[static_cast<std::size_t>(u)];
      for (int cid : orig) {
        if (w.hgt[static_cast<std::size_t>(cid)] == hc) {
          members.push_back(cid);
        } else {
          int stub = w.add(u, hc, w.mass[static_cast<std::size_t>(cid)],
                           w.rank[static_cast<std::size_t>(cid)]);
          w.kids[static_cast<std::size_t>(stub)].push_back(cid);
          w.par[static_cast<std::size_t>(cid)] = stub;
          members.push_back(stub);
        }
      }
      std::sort(members.begin(), members.end(), [&](int a, int b) {
        return w.rank[static_cast<std::size_t>(a)] <
               w.rank[static_cast<std::size_t>(b)];
      });

      std::vector<std::pair<std::vector<int>, double>> groups;
      std::vector<int> cur;
      double sum = 0.0;
      for (int m : members) {
        cur.push_back(m);
        sum += w.mass[static_cast<std::size_t>(m)];
        if (sum >= lo) {
          groups.emplace_back(std::move(cur), sum);
          cur.clear();
          sum = 0.0;
        }
      }
      if (!cur.empty()) groups.emplace_back(std::move(cur), sum);
      if (groups.size() >= 2 && groups.back().second < lo) {
        auto& prev = groups[groups.size() - 2];
        if (prev.second + groups.back().second <= hi * (1.0 + 1e-12)) {
          prev.first.insert(prev.first.end(), groups.back().first.begin(),
                            groups.back().first.end());
          prev.second += groups.back().second;
          groups.pop_back();
        }
      }

      std::vector<int> newkids;
      for (auto& [mids, msum] : groups) {
        int head = mids[0];
        for (std::size_t j = 1; j < mids.size(); ++j) {
          int m = mids[j];
          for (int kid : w.kids[static_cast<std::size_t>(m)]) {
            w.kids[static_cast<std::size_t>(head)].push_back(kid);
            w.par[static_cast<std::size_t>(kid)] = head;
          }
          w.kids[static_cast<std::size_t>(m)].clear();
          w.removed[static_cast<std::size_t>(m)] = 1;
        }
        w.mass[static_cast<std::size_t>(head)] = msum;
        newkids.push_back(head);
        lev.min_mass = std::min(lev.min_mass, msum);
        lev.max_mass = std::max(lev.max_mass, msum);
        if (msum < lo * (1.0 - 1e-12) || msum > hi * (1.0 + 1e-12))
          lev.window_ok = false;
      }
      w.kids[static_cast<std::size_t>(u)] = std::move(newkids);
      lev.groups += static_cast<long long>(groups.size());
      if (n >= 2) {
        long long cnt = static_cast<long long>(groups.size());
        if (prev_min_children < 0 || cnt < prev_min_children)
          prev_min_children = cnt;
      }
    }
    if (lev.groups == 0) lev.min_mass = 0.0;
    if (n >= 2)
      out.levels[static_cast<std::size_t>(n - 2)].min_children =
          prev_min_children;
    if (!lev.window_ok && out.first_failure_level == 0)
      out.first_failure_level = n;
  }

  for (int n = 1; n < depth; ++n) {
    long long mc = out.levels[static_cast<std::size_t>(n - 1)].min_children;
    if (mc < 0) continue;
    if (out.min_children < 0 || mc < out.min_children) out.min_children = mc;
  }
  if (out.min_children >= 0) out.child_bound_ok = out.min_children >= out.child_bound;

  // contract stubs that stayed unary through grouping
  bool changed = true;
  while (changed) {
    changed = false;
    int size = static_cast<int>(w.par.size());
    for (int v = 0; v < size; ++v) {
      if (w.removed[static_cast<std::size_t>(v)]) continue;
      if (w.kids[static_cast<std::size_t>(v)].size() != 1) continue;
      int kid = w.kids[static_cast<std::size_t>(v)][0];
      int p = w.par[static_cast<std::size_t>(v)];
      w.par[static_cast<std::size_t>(kid)] = p;
      if (p != -1)
        for (int& c2 : w.kids[static_cast<std::size_t>(p)])
          if (c2 == v) c2 = kid;
      w.removed[static_cast<std::size_t>(v)] = 1;
      w.kids[static_cast<std::size_t>(v)].clear();
      changed = true;
    }
  }

  int size = static_cast<int>(w.par.size());
  std::vector<int> newid(static_cast<std::size_t>(size), -1);
  int live = 0;
  for (int v = 0; v < size; ++v)
    if (!w.removed[static_cast<std::size_t>(v)]) newid[static_cast<std::size_t>(v)] = live++;
  std::vector<int> parent2(static_cast<std::size_t>(live));
  std::vector<double> height2(static_cast<std::size_t>(live));
  std::vector<std::string> labels2(static_cast<std::size_t>(live));
  for (int v = 0; v < size; ++v) {
    if (w.removed[static_cast<std::size_t>(v)]) continue;
    int id = newid[static_cast<std::size_t>(v)];
    int p = w.par[static_cast<std::size_t>(v)];
    parent2[static_cast<std::size_t>(id)] = p == -1 ? -1 : newid[static_cast<std::size_t>(p)];
    height2[static_cast<std::size_t>(id)] = w.hgt[static_cast<std::size_t>(v)];
    if (v < nv && s.is_leaf(v))
      labels2[static_cast<std::size_t>(id)] = s.labels[static_cast<std::size_t>(v)];
  }
  out.tree = canonical_srt(
      make_srt(std::move(parent2), std::move(height2), std::move(labels2)));
  std::vector<std::pair<std::string, double>> entries;
  entries.reserve(static_cast<std::size_t>(s.num_leaves()));
  for (int i = 0; i < s.num_leaves(); ++i)
    entries.emplace_back(s.labels[static_cast<std::size_t>(
                             s.leaf_vertex[static_cast<std::size_t>(i)])],
                         mu.w[static_cast<std::size_t>(i)]);
  out.mu = make_measure(out.tree, entries, 1e-9);
  return out;
}

double regroup_expansion(const Srt& in, const Srt& out) {
  if (in.num_leaves() != out.num_leaves())
    fail(ErrorCode::kSupportMismatch, "trees have different leaf counts");
  std::vector<int> to_out(static_cast<std::size_t>(in.num_leaves()));
  for (int i = 0; i < in.num_leaves(); ++i) {
    auto it = out.leaf_by_label.find(
        in.labels[static_cast<std::size_t>(in.leaf_vertex[static_cast<std::size_t>(i)])]);
    if (it == out.leaf_by_label.end())
      fail(ErrorCode::kSupportMismatch, "trees have different label sets");
    to_out[static_cast<std::size_t>(i)] =
        out.leaf_vertex[static_cast<std::size_t>(it->second)];
  }
  auto lca = [&](int a, int b) {
    while (a != b) {
      if (out.depth[static_cast<std::size_t>(a)] >=
          out.depth[static_cast<std::size_t>(b)])
        a = out.parent[static_cast<std::size_t>(a)];
      else
        b = out.parent[static_cast<std::size_t>(b)];
    }
    return a;
  };
  double worst = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < in.num_vertices(); ++v) {
    if (in.is_leaf(v)) continue;
    int fold = to_out[static_cast<std::size_t>(in.range_lo[static_cast<std::size_t>(v)])];
    for (int j = in.range_lo[static_cast<std::size_t>(v)] + 1;
         j < in.range_hi[static_cast<std::size_t>(v)]; ++j)
      fold = lca(fold, to_out[static_cast<std::size_t>(j)]);
    worst = std::max(worst, 2.0 * out.height[static_cast<std::size_t>(fold)] -
                                2.0 * in.height[static_cast<std::size_t>(v)]);
  }
  return worst;
}

FrostmanInstance random_frostman_instance(uint64_t seed, double q, double c,
                                          double sp, int depth) {
  if (!(q > 1.0) || !(c > 0.0) || !(sp > 0.0))
    fail(ErrorCode::kInvalidArgument, "q, c and sp must be positive (q > 1)");
  if (depth < 2 || depth > 40)
    fail(ErrorCode::kInvalidArgument, "depth must lie in [2, 40]");
  std::vector<double> g = level_heights(q, depth);
  const double units = std::ldexp(1.0, 40);
  // chunk_cap[n] is half the mass cap c (2 g[n])^sp in 2^-40 units, so a
  // child at level n stays at or below half its own scale cap
  std::vector<long long> chunk_cap(static_cast<std::size_t>(depth) + 1, 0);
  for (int n = 1; n <= depth; ++n) {
    chunk_cap[static_cast<std::size_t>(n)] = static_cast<long long>(
        0.5 * c * std::pow(2.0 * g[static_cast<std::size_t>(n)], sp) * units);
    if (chunk_cap[static_cast<std::size_t>(n)] < 8)
      fail(ErrorCode::kInvalidArgument,
           "mass grid too coarse for these parameters");
  }
  long long atom_cap =
      static_cast<long long>(0.95 * static_cast<double>(
                                        chunk_cap[static_cast<std::size_t>(depth)]));
  long long internal_min = std::max<long long>(2, atom_cap / 4);

  Rng rng(seed, 3);
  uint64_t counter = 0;
  auto unif = [&]() { return rng.uniform_at(counter++); };

  std::vector<int> parent;
  std::vector<double> height;
  std::vector<std::string> labels;
  std::vector<long long> leaf_units;
  auto add = [&](int par, double h) {
    parent.push_back(par);
    height.push_back(h);
    labels.emplace_back();
    return static_cast<int>(parent.size()) - 1;
  };

  struct Node {
    int par;
    int level;
    long long mass;
  };
  std::vector<Node> stack;
  stack.push_back({-1, 0, 1LL << 40});
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    int v = add(nd.par, g[static_cast<std::size_t>(nd.level)]);
    long long remaining = nd.mass;
    bool first = true;
    while (remaining > 0) {
      int nl = nd.level + 1;
      if (nd.level + 2 <= depth - 1 && unif() < 0.15) nl = nd.level + 2;
      double u = 0.55 + 0.4 * unif();
      long long want;
      if (nd.level == depth - 1) {
        want = static_cast<long long>(
            u * static_cast<double>(chunk_cap[static_cast<std::size_t>(depth)]));
      } else {
        want = static_cast<long long>(
            u * static_cast<double>(chunk_cap[static_cast<std::size_t>(nl)]));
      }
      long long chunk = std::max<long long>(1, std::min(want, remaining));
      if (first) chunk = std::min(chunk, nd.mass - 1);
      bool leaf = nd.level == depth - 1 ||
                  (chunk <= atom_cap && (chunk < internal_min || unif() < 0.18));
      if (leaf) {
        int lv = add(v, 0.0);
        labels[static_cast<std::size_t>(lv)] = "pending";
        leaf_units.push_back(chunk);
      } else {
        stack.push_back({v, nl, chunk});
      }
      remaining -= chunk;
      first = false;
    }
  }
  int width = 1;
  for (std::size_t t = leaf_units.size() - 1; t >= 10; t /= 10) ++width;
  int next = 0;
  std::vector<std::pair<std::string, double>> entries;
  std::size_t li = 0;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (labels[v].empty()) continue;
    std::string t = std::to_string(next++);
    labels[v] = "x" + std::string(static_cast<std::size_t>(width) - t.size(), '0') + t;
    entries.emplace_back(
        labels[v], std::ldexp(static_cast<double>(leaf_units[li++]), -40));
  }
  FrostmanInstance out;
  out.tree = canonical_srt(make_srt(std::move(parent), std::move(height),
                                    std::move(labels)));
  out.mu = make_measure(out.tree, entries, 1e-9);
  return out;
}

}  // namespace uot
