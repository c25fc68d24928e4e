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

#include "ultra_core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "error.hpp"
#include "numeric.hpp"

namespace uot {
namespace {

std::string quoted(const std::string& s) { return "'" + s + "'"; }

void check_label_text(const std::string& label) {
  if (label.empty()) fail(ErrorCode::kStructure, "empty point label");
  for (char c : label) {
    if (c == ',' || c == '#' || std::isspace(static_cast<unsigned char>(c))) {
      fail(ErrorCode::kStructure,
           "label " + quoted(label) + " contains whitespace, ',' or '#'");
    }
  }
}

void check_labels_unique(const std::vector<std::string>& labels) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second)
      fail(ErrorCode::kStructure, "duplicate label " + quoted(l));
  }
}

// Collapses runs of equal-height parent/child vertices to their topmost
// member. rep[v] == v marks the vertices that survive.
std::vector<int> equal_height_reps(const std::vector<int>& parent,
                                   const std::vector<double>& height) {
  const int nv = static_cast<int>(parent.size());
  std::vector<int> rep(nv, -1);
  std::vector<int> path;
  for (int v = 0; v < nv; ++v) {
    int u = v;
    path.clear();
    while (rep[u] == -1) {
      int p = parent[u];
      if (p != -1 && height[p] == height[u]) {
        path.push_back(u);
        u = p;
      } else {
        rep[u] = u;
        break;
      }
    }
    int r = rep[u];
    for (int x : path) rep[x] = r;
  }
  return rep;
}

// Renumbers a raw vertex forest (single root expected) in depth-first
// preorder with children ordered by the smallest leaf key below them.
// keys must hold a distinct nonnegative value per leaf, -1 elsewhere.
Srt reindex_canonical(const std::vector<int>& parent,
                      const std::vector<double>& height,
                      const std::vector<std::string>& labels,
                      const std::vector<int>& keys, bool allow_unary) {
  const int nv = static_cast<int>(parent.size());
  int root = -1;
  std::vector<int> head(nv, -1), next(nv, -1);
  for (int v = nv - 1; v >= 0; --v) {
    if (parent[v] == -1) {
      if (root != -1) fail(ErrorCode::kInternal, "two roots after rebuild");
      root = v;
    } else {
      next[v] = head[parent[v]];
      head[parent[v]] = v;
    }
  }
  if (root == -1) fail(ErrorCode::kInternal, "no root after rebuild");

  // Children strictly below their parent, so ascending height is a
  // child-first order for the leftmost-leaf keys.
  std::vector<int> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (height[a] != height[b]) return height[a] < height[b];
    return a < b;
  });
  std::vector<int> min_key(nv, -1);
  std::vector<std::vector<int>> kids(nv);
  for (int v : order) {
    if (head[v] == -1) {
      min_key[v] = keys[v];
      if (min_key[v] < 0) fail(ErrorCode::kInternal, "leaf without order key");
      continue;
    }
    int mk = -1;
    for (int c = head[v]; c != -1; c = next[c]) {
      kids[v].push_back(c);
      if (min_key[c] < 0) fail(ErrorCode::kInternal, "child visited late");
      if (mk == -1 || min_key[c] < mk) mk = min_key[c];
    }
    min_key[v] = mk;
    std::sort(kids[v].begin(), kids[v].end(),
              [&](int a, int b) { return min_key[a] < min_key[b]; });
  }

  std::vector<int> new_id(nv, -1);
  std::vector<int> new_parent;
  std::vector<double> new_height;
  std::vector<std::string> new_labels;
  new_parent.reserve(nv);
  new_height.reserve(nv);
  new_labels.reserve(nv);
  std::vector<int> stack = {root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    int id = static_cast<int>(new_parent.size());
    new_id[v] = id;
    new_parent.push_back(parent[v] == -1 ? -1 : new_id[parent[v]]);
    new_height.push_back(height[v]);
    new_labels.push_back(labels[v]);
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it)
      stack.push_back(*it);
  }
  if (static_cast<int>(new_parent.size()) != nv)
    fail(ErrorCode::kInternal, "rebuild dropped vertices");
  return make_srt(std::move(new_parent), std::move(new_height),
                  std::move(new_labels), allow_unary);
}

bool has_unary_vertex(const Srt& s) {
  for (int v = 0; v < s.num_vertices(); ++v)
    if (s.degree(v) == 1) return true;
  return false;
}

}  // namespace

DistanceMatrix make_matrix(std::vector<std::string> labels,
                           std::vector<double> dist) {
  const std::size_t n = labels.size();
  if (n == 0) fail(ErrorCode::kStructure, "matrix has no points");
  if (dist.size() != n * n)
    fail(ErrorCode::kStructure, "matrix is not square");
  for (const auto& l : labels) check_label_text(l);
  check_labels_unique(labels);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i * n + j];
      if (!std::isfinite(d))
        fail(ErrorCode::kStructure, "non-finite distance at row " +
                                        std::to_string(i) + ", column " +
                                        std::to_string(j));
      if (i == j && d != 0.0)
        fail(ErrorCode::kStructure,
             "nonzero diagonal at row " + std::to_string(i));
      if (i != j && !(d > 0.0))
        fail(ErrorCode::kStructure,
             "distance between " + quoted(labels[i]) + " and " +
                 quoted(labels[j]) + " is not positive");
      if (j > i && d != dist[j * n + i])
        fail(ErrorCode::kStructure,
             "asymmetry between " + quoted(labels[i]) + " and " +
                 quoted(labels[j]));
    }
  }
  DistanceMatrix m;
  m.labels = std::move(labels);
  m.dist = std::move(dist);
  return m;
}

double matrix_diameter(const DistanceMatrix& m) {
  double d = 0.0;
  for (double x : m.dist) d = std::max(d, x);
  return d;
}

std::optional<UltrametricViolation> check_ultrametric(const DistanceMatrix& m,
                                                      double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau))
    fail(ErrorCode::kInvalidArgument, "tau must be finite and nonnegative");
  const int n = m.size();
  const double tol = tau * matrix_diameter(m);
  const double* d = m.dist.data();
  for (int k = 0; k < n; ++k) {
    const double* dk = d + static_cast<std::size_t>(k) * n;
    for (int i = 0; i + 1 < n; ++i) {
      const double* di = d + static_cast<std::size_t>(i) * n;
      const double dik = di[k];
      double worst = tol;
      for (int j = i + 1; j < n; ++j) {
        const double rhs = dk[j] > dik ? dk[j] : dik;
        const double e = di[j] - rhs;
        if (e > worst) worst = e;
      }
      if (worst > tol) {
        for (int j = i + 1; j < n; ++j) {
          const double rhs = dk[j] > dik ? dk[j] : dik;
          if (di[j] - rhs == worst) {
            UltrametricViolation w;
            w.i = i;
            w.j = j;
            w.k = k;
            w.dij = di[j];
            w.dik = dik;
            w.djk = dk[j];
            w.excess = worst;
            return w;
          }
        }
      }
    }
  }
  return std::nullopt;
}

Srt make_srt(std::vector<int> parent, std::vector<double> height,
             std::vector<std::string> labels, bool allow_unary) {
  const int nv = static_cast<int>(parent.size());
  if (nv == 0) fail(ErrorCode::kStructure, "tree has no vertices");
  if (height.size() != parent.size() || labels.size() != parent.size())
    fail(ErrorCode::kStructure, "tree arrays differ in length");

  Srt s;
  s.parent = std::move(parent);
  s.height = std::move(height);
  s.labels = std::move(labels);

  s.root = -1;
  for (int v = 0; v < nv; ++v) {
    const int p = s.parent[v];
    if (p == -1) {
      if (s.root != -1)
        fail(ErrorCode::kStructure, "vertices " + std::to_string(s.root) +
                                        " and " + std::to_string(v) +
                                        " both lack a parent");
      s.root = v;
    } else if (p < 0 || p >= nv || p == v) {
      fail(ErrorCode::kStructure,
           "bad parent for vertex " + std::to_string(v));
    }
    if (!std::isfinite(s.height[v]) || s.height[v] < 0.0)
      fail(ErrorCode::kStructure,
           "bad height at vertex " + std::to_string(v));
  }
  if (s.root == -1) fail(ErrorCode::kStructure, "tree has no root");

  s.child_off.assign(nv + 1, 0);
  for (int v = 0; v < nv; ++v)
    if (v != s.root) ++s.child_off[s.parent[v] + 1];
  for (int v = 0; v < nv; ++v) s.child_off[v + 1] += s.child_off[v];
  s.child.resize(nv - 1);
  {
    std::vector<int> cur(s.child_off.begin(), s.child_off.end() - 1);
    for (int v = 0; v < nv; ++v)
      if (v != s.root) s.child[cur[s.parent[v]]++] = v;
  }

  s.depth.assign(nv, -1);
  s.leaf_ix.assign(nv, -1);
  s.range_lo.assign(nv, 0);
  s.range_hi.assign(nv, 0);
  std::vector<std::pair<int, int>> stack;  // vertex, next child slot
  stack.emplace_back(s.root, s.child_off[s.root]);
  s.depth[s.root] = 0;
  int visited = 0;
  while (!stack.empty()) {
    auto& [v, slot] = stack.back();
    if (slot == s.child_off[v]) {
      ++visited;
      s.range_lo[v] = static_cast<int>(s.leaf_vertex.size());
      if (s.is_leaf(v)) {
        s.leaf_ix[v] = static_cast<int>(s.leaf_vertex.size());
        s.leaf_vertex.push_back(v);
      }
    }
    if (slot == s.child_off[v + 1]) {
      s.range_hi[v] = static_cast<int>(s.leaf_vertex.size());
      stack.pop_back();
      continue;
    }
    const int c = s.child[slot++];
    s.depth[c] = s.depth[v] + 1;
    stack.emplace_back(c, s.child_off[c]);
  }
  if (visited != nv)
    fail(ErrorCode::kStructure, "tree is cyclic or disconnected");

  for (int v = 0; v < nv; ++v) {
    if (s.is_leaf(v)) {
      if (s.height[v] != 0.0)
        fail(ErrorCode::kStructure,
             "leaf vertex " + std::to_string(v) + " is not at height zero");
      check_label_text(s.labels[v]);
    } else {
      if (!s.labels[v].empty())
        fail(ErrorCode::kStructure,
             "internal vertex " + std::to_string(v) + " carries a label");
      if (!(s.height[v] > 0.0))
        fail(ErrorCode::kStructure, "internal vertex " + std::to_string(v) +
                                        " is not above height zero");
      if (!allow_unary && s.degree(v) < 2)
        fail(ErrorCode::kStructure,
             "internal vertex " + std::to_string(v) + " has a single child");
    }
    if (v != s.root && !(s.height[v] < s.height[s.parent[v]]))
      fail(ErrorCode::kStructure,
           "height does not decrease from vertex " +
               std::to_string(s.parent[v]) + " to child " + std::to_string(v));
  }

  std::vector<std::string> leaf_labels;
  leaf_labels.reserve(s.leaf_vertex.size());
  for (int v : s.leaf_vertex) leaf_labels.push_back(s.labels[v]);
  check_labels_unique(leaf_labels);
  s.leaf_by_label.reserve(leaf_labels.size());
  for (int a = 0; a < static_cast<int>(s.leaf_vertex.size()); ++a)
    s.leaf_by_label.emplace(leaf_labels[a], a);
  return s;
}

Srt canonical_srt(const Srt& s) {
  return reindex_canonical(s.parent, s.height, s.labels, s.leaf_ix,
                           has_unary_vertex(s));
}

Srt srt_from_matrix(const DistanceMatrix& m) {
  const int n = m.size();
  if (n == 1) return make_srt({-1}, {0.0}, {m.labels[0]});

  // Bucket the point pairs by exact distance value; an ultrametric on n
  // points takes at most n - 1 distinct positive values.
  struct Level {
    double value;
    std::vector<std::pair<int, int>> pairs;
  };
  std::vector<Level> levels;
  std::unordered_map<std::uint64_t, int> level_of;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = m.at(i, j);
      std::uint64_t bits;
      std::memcpy(&bits, &d, sizeof(bits));
      auto [it, fresh] = level_of.try_emplace(bits, levels.size());
      if (fresh) levels.push_back({d, {}});
      levels[it->second].pairs.emplace_back(i, j);
    }
  }
  std::sort(levels.begin(), levels.end(),
            [](const Level& a, const Level& b) { return a.value < b.value; });

  std::vector<int> uf(n), uf_size(n, 1);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };

  std::vector<int> parent(n, -1);
  std::vector<double> height(n, 0.0);
  std::vector<std::string> labels = m.labels;
  std::vector<int> tag(n, -1);    // level index a vertex was created at
  std::vector<int> cvert(n);      // current cluster vertex per root
  std::iota(cvert.begin(), cvert.end(), 0);

  for (int li = 0; li < static_cast<int>(levels.size()); ++li) {
    const double h = levels[li].value / 2.0;
    for (auto [i, j] : levels[li].pairs) {
      int ra = find(i), rb = find(j);
      if (ra == rb) continue;
      const int va = cvert[ra], vb = cvert[rb];
      int keep;
      if (tag[va] == li) {
        parent[vb] = va;  // may tie equal heights, contracted below
        keep = va;
      } else if (tag[vb] == li) {
        parent[va] = vb;
        keep = vb;
      } else {
        keep = static_cast<int>(parent.size());
        parent.push_back(-1);
        height.push_back(h);
        labels.emplace_back();
        tag.push_back(li);
        parent[va] = keep;
        parent[vb] = keep;
      }
      if (uf_size[ra] < uf_size[rb]) std::swap(ra, rb);
      uf[rb] = ra;
      uf_size[ra] += uf_size[rb];
      cvert[ra] = keep;
    }
  }

  const std::vector<int> rep = equal_height_reps(parent, height);
  const int nv = static_cast<int>(parent.size());
  std::vector<int> compact(nv, -1);
  std::vector<int> kparent;
  std::vector<double> kheight;
  std::vector<std::string> klabels;
  std::vector<int> kkeys;
  for (int v = 0; v < nv; ++v) {
    if (rep[v] != v) continue;
    compact[v] = static_cast<int>(kparent.size());
    kparent.push_back(parent[v]);  // old ids, remapped below
    kheight.push_back(height[v]);
    klabels.push_back(labels[v]);
    kkeys.push_back(v < n ? v : -1);
  }
  for (auto& p : kparent)
    if (p != -1) p = compact[rep[p]];
  Srt s = reindex_canonical(kparent, kheight, klabels, kkeys, false);

  // The construction yields the largest ultrametric below the input, so
  // equality of the rebuilt matrix certifies the input was ultrametric.
  std::unordered_map<std::string, int> row;
  row.reserve(m.labels.size());
  for (int i = 0; i < n; ++i) row.emplace(m.labels[i], i);
  DistanceMatrix back = matrix_from_srt(s);
  std::vector<int> pos(n);
  for (int a = 0; a < n; ++a) pos[a] = row.at(back.labels[a]);
  for (int a = 0; a < n; ++a) {
    const int ia = pos[a];
    for (int b = a + 1; b < n; ++b) {
      const int ib = pos[b];
      if (back.at(a, b) != m.at(ia, ib)) {
        fail(ErrorCode::kUltrametric,
             "matrix is not ultrametric: d(" + back.labels[a] + ", " +
                 back.labels[b] + ") = " + fmt_double(m.at(ia, ib)) +
                 " but the closest tree gives " + fmt_double(back.at(a, b)));
      }
    }
  }
  return s;
}

DistanceMatrix matrix_from_srt(const Srt& s) {
  const int n = s.num_leaves();
  if (n > 16384)
    fail(ErrorCode::kInvalidArgument,
         "matrix on " + std::to_string(n) + " points would be too large");
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int v : s.leaf_vertex) labels.push_back(s.labels[v]);
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (s.is_leaf(v)) continue;
    const double d = 2.0 * s.height[v];
    for (int ca = s.child_off[v]; ca < s.child_off[v + 1]; ++ca) {
      for (int cb = ca + 1; cb < s.child_off[v + 1]; ++cb) {
        const int a = s.child[ca], b = s.child[cb];
        for (int x = s.range_lo[a]; x < s.range_hi[a]; ++x) {
          for (int y = s.range_lo[b]; y < s.range_hi[b]; ++y) {
            dist[static_cast<std::size_t>(x) * n + y] = d;
            dist[static_cast<std::size_t>(y) * n + x] = d;
          }
        }
      }
    }
  }
  return make_matrix(std::move(labels), std::move(dist));
}

double leaf_distance(const Srt& s, int a, int b) {
  const int n = s.num_leaves();
  if (a < 0 || a >= n || b < 0 || b >= n)
    fail(ErrorCode::kInvalidArgument, "leaf ordinal out of range");
  int va = s.leaf_vertex[a], vb = s.leaf_vertex[b];
  while (va != vb) {
    if (s.depth[va] < s.depth[vb])
      vb = s.parent[vb];
    else
      va = s.parent[va];
  }
  return 2.0 * s.height[va];
}

Srt quantize_heights(const Srt& s, double q) {
  if (!std::isfinite(q) || !(q > 1.0))
    fail(ErrorCode::kInvalidArgument, "q must exceed one");
  if (s.height[s.root] > 0.5)
    fail(ErrorCode::kInvalidArgument,
         "tree diameter exceeds one; rescale before quantizing");

  double hmin = 0.5;
  bool any_internal = false;
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (!s.is_leaf(v)) {
      any_internal = true;
      hmin = std::min(hmin, s.height[v]);
    }
  }
  if (!any_internal) return canonical_srt(s);

  // Grid values q^-n / 2 by iterated division, largest first.
  std::vector<double> grid = {0.5};
  while (grid.back() >= hmin) {
    const double nxt = grid.back() / q;
    if (!(nxt < grid.back()) || nxt == 0.0) break;
    grid.push_back(nxt);
  }

  std::vector<double> nh(s.height);
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (s.is_leaf(v)) continue;
    // Largest index whose grid value still dominates the height.
    auto it = std::partition_point(grid.begin(), grid.end(),
                                   [&](double g) { return g >= s.height[v]; });
    nh[v] = *(it - 1);
  }

  const std::vector<int> rep = equal_height_reps(s.parent, nh);
  const int nv = s.num_vertices();
  std::vector<int> compact(nv, -1);
  std::vector<int> kparent;
  std::vector<double> kheight;
  std::vector<std::string> klabels;
  std::vector<int> kkeys;
  for (int v = 0; v < nv; ++v) {
    if (rep[v] != v) continue;
    compact[v] = static_cast<int>(kparent.size());
    kparent.push_back(s.parent[v]);
    kheight.push_back(nh[v]);
    klabels.push_back(s.labels[v]);
    kkeys.push_back(s.leaf_ix[v]);
  }
  for (auto& p : kparent)
    if (p != -1) p = compact[rep[p]];
  return reindex_canonical(kparent, kheight, klabels, kkeys,
                           has_unary_vertex(s));
}

std::vector<CoverBlock> covering_partition(const Srt& s, double eps) {
  if (!std::isfinite(eps) || eps < 0.0)
    fail(ErrorCode::kInvalidArgument, "eps must be finite and nonnegative");
  std::vector<CoverBlock> out;
  std::vector<int> stack = {s.root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (s.height[v] <= eps) {
      CoverBlock b;
      b.vertex = v;
      b.leaves.resize(s.range_hi[v] - s.range_lo[v]);
      std::iota(b.leaves.begin(), b.leaves.end(), s.range_lo[v]);
      out.push_back(std::move(b));
      continue;
    }
    for (int c = s.child_off[v + 1] - 1; c >= s.child_off[v]; --c)
      stack.push_back(s.child[c]);
  }
  return out;
}

long long covering_count_matrix(const DistanceMatrix& m, double eps) {
  if (!std::isfinite(eps) || eps < 0.0)
    fail(ErrorCode::kInvalidArgument, "eps must be finite and nonnegative");
  const int n = m.size();
  std::vector<char> covered(n, 0);
  long long count = 0;
  for (int i = 0; i < n; ++i) {
    if (covered[i]) continue;
    ++count;
    const double* di = m.dist.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j)
      if (di[j] <= 2.0 * eps) covered[j] = 1;
  }
  return count;
}

Srt prune_ball(const Srt& s, int v) {
  if (v < 0 || v >= s.num_vertices())
    fail(ErrorCode::kInvalidArgument, "vertex out of range");
  if (v == s.root)
    fail(ErrorCode::kInvalidArgument, "cannot remove the root ball");

  std::vector<char> removed(s.num_vertices(), 0);
  std::vector<int> stack = {v};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    removed[u] = 1;
    for (int c = s.child_off[u]; c < s.child_off[u + 1]; ++c)
      stack.push_back(s.child[c]);
  }

  // Drop ancestors left childless, then contract the one that may have
  // become unary.
  int u = s.parent[v];
  int live = 0;
  while (u != -1) {
    live = 0;
    for (int c = s.child_off[u]; c < s.child_off[u + 1]; ++c)
      if (!removed[s.child[c]]) ++live;
    if (live > 0) break;
    removed[u] = 1;
    u = s.parent[u];
  }
  if (u == -1)
    fail(ErrorCode::kInvalidArgument, "pruning would remove every leaf");
  if (live == 1) removed[u] = 1;  // its only child reattaches one level up

  const int nv = s.num_vertices();
  std::vector<int> compact(nv, -1);
  std::vector<int> kparent;
  std::vector<double> kheight;
  std::vector<std::string> klabels;
  std::vector<int> kkeys;
  for (int w = 0; w < nv; ++w) {
    if (removed[w]) continue;
    compact[w] = static_cast<int>(kparent.size());
    int p = s.parent[w];
    while (p != -1 && removed[p]) p = s.parent[p];
    kparent.push_back(p);
    kheight.push_back(s.height[w]);
    klabels.push_back(s.labels[w]);
    kkeys.push_back(s.leaf_ix[w]);
  }
  for (auto& p : kparent)
    if (p != -1) p = compact[p];
  return reindex_canonical(kparent, kheight, klabels, kkeys,
                           has_unary_vertex(s));
}

}  // namespace uot
