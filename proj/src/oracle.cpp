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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"
#include "numeric.hpp"

namespace uot {
namespace {

struct BasicCell {
  int i = 0;
  int j = 0;
  double mass = 0;
};

}  // namespace

OracleResult oracle_cost(const DistanceMatrix& m, const std::vector<double>& mu,
                         const std::vector<double>& nu, double p, int cap) {
  if (!std::isfinite(p) || p < 1.0)
    fail(ErrorCode::kInvalidArgument, "order p must be finite and at least 1");
  if (cap < 1) fail(ErrorCode::kInvalidArgument, "cap must be positive");
  const int n = m.size();
  if (static_cast<int>(mu.size()) != n || static_cast<int>(nu.size()) != n)
    fail(ErrorCode::kSupportMismatch,
         "measure length does not match the matrix");
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(mu[i]) || mu[i] < 0.0 || !std::isfinite(nu[i]) ||
        nu[i] < 0.0)
      fail(ErrorCode::kStructure, "weights must be finite and nonnegative");
  }

  std::vector<int> rows, cols;
  for (int i = 0; i < n; ++i) {
    if (mu[i] > 0.0) rows.push_back(i);
    if (nu[i] > 0.0) cols.push_back(i);
  }
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(cols.size());
  if (r == 0 && c == 0) return {};
  if (r == 0 || c == 0)
    fail(ErrorCode::kStructure, "one measure is zero and the other is not");
  if (std::max(r, c) > cap)
    fail(ErrorCode::kCapExceeded,
         "support of size " + std::to_string(std::max(r, c)) +
             " exceeds the solver cap " + std::to_string(cap) +
             "; raise the cap to allow it");

  std::vector<double> a(r), b(c);
  for (int i = 0; i < r; ++i) a[i] = mu[rows[i]];
  for (int j = 0; j < c; ++j) b[j] = nu[cols[j]];
  const double sa = compensated_sum(a), sb = compensated_sum(b);
  if (std::abs(sa - sb) > 1e-9 * std::max(1.0, std::max(sa, sb)))
    fail(ErrorCode::kStructure, "measure totals differ: " + fmt_double(sa) +
                                    " versus " + fmt_double(sb));
  // Absorb the rounding residue into the heaviest demand.
  {
    int jmax = static_cast<int>(std::max_element(b.begin(), b.end()) -
                                b.begin());
    b[jmax] += sa - sb;
    if (b[jmax] < 0.0)
      fail(ErrorCode::kStructure, "measure totals cannot be balanced");
  }

  std::vector<double> cost(static_cast<std::size_t>(r) * c);
  double cmax = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      cost[static_cast<std::size_t>(i) * c + j] = pow_p(m.at(rows[i], cols[j]), p);
      cmax = std::max(cmax, cost[static_cast<std::size_t>(i) * c + j]);
    }
  }
  const double eps = 1e-12 * std::max(cmax, 1.0);

  // Northwest of nothing: allocate cheapest cells first, then join the
  // leftover components with zero-mass cells to get a spanning basis.
  std::vector<int> order(static_cast<std::size_t>(r) * c);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (cost[x] != cost[y]) return cost[x] < cost[y];
    return x < y;
  });

  std::vector<double> ra = a, rb = b;
  std::vector<BasicCell> basic;
  basic.reserve(r + c - 1);
  std::vector<char> is_basic(static_cast<std::size_t>(r) * c, 0);
  for (int cell : order) {
    const int i = cell / c, j = cell % c;
    const double x = std::min(ra[i], rb[j]);
    if (x > 0.0) {
      basic.push_back({i, j, x});
      is_basic[cell] = 1;
      ra[i] -= x;
      rb[j] -= x;
    }
  }
  {
    std::vector<int> dsu(r + c);
    std::iota(dsu.begin(), dsu.end(), 0);
    auto find = [&](int x) {
      while (dsu[x] != x) {
        dsu[x] = dsu[dsu[x]];
        x = dsu[x];
      }
      return x;
    };
    for (const auto& cell : basic) dsu[find(cell.i)] = find(r + cell.j);
    for (int cell : order) {
      if (static_cast<int>(basic.size()) == r + c - 1) break;
      const int i = cell / c, j = cell % c;
      const int fi = find(i), fj = find(r + j);
      if (fi == fj) continue;
      basic.push_back({i, j, 0.0});
      is_basic[cell] = 1;
      dsu[fi] = fj;
    }
  }
  if (static_cast<int>(basic.size()) != r + c - 1)
    fail(ErrorCode::kInternal, "initial basis is not spanning");

  // Node 0..r-1 are rows, r..r+c-1 are columns; adjacency lists hold
  // indices into basic.
  std::vector<std::vector<int>> adj(r + c);
  for (int e = 0; e < static_cast<int>(basic.size()); ++e) {
    adj[basic[e].i].push_back(e);
    adj[r + basic[e].j].push_back(e);
  }

  std::vector<double> u(r), v(c);
  std::vector<int> par_node(r + c), par_edge(r + c), depth(r + c), bfs(r + c);
  const long long bland_after = 500 + 50LL * (r + c);
  const long long max_iter = 200000 + 2000LL * (r + c);
  for (long long iter = 0;; ++iter) {
    if (iter > max_iter)
      fail(ErrorCode::kInternal, "transport solver failed to converge");

    // Potentials and rooted tree structure from one traversal.
    std::fill(depth.begin(), depth.end(), -1);
    int head = 0, tail = 0;
    bfs[tail++] = 0;
    depth[0] = 0;
    par_node[0] = -1;
    par_edge[0] = -1;
    u[0] = 0.0;
    while (head < tail) {
      const int x = bfs[head++];
      for (int e : adj[x]) {
        const BasicCell& cell = basic[e];
        const int y = (x == cell.i) ? r + cell.j : cell.i;
        if (depth[y] != -1) continue;
        depth[y] = depth[x] + 1;
        par_node[y] = x;
        par_edge[y] = e;
        if (y >= r)
          v[y - r] = cost[static_cast<std::size_t>(cell.i) * c + cell.j] -
                     u[cell.i];
        else
          u[y] = cost[static_cast<std::size_t>(cell.i) * c + cell.j] -
                 v[cell.j];
        bfs[tail++] = y;
      }
    }
    if (tail != r + c) fail(ErrorCode::kInternal, "basis lost connectivity");

    int ei = -1, ej = -1;
    if (iter < bland_after) {
      double best = -eps;
      for (int i = 0; i < r; ++i) {
        const double* ci = cost.data() + static_cast<std::size_t>(i) * c;
        const char* bi = is_basic.data() + static_cast<std::size_t>(i) * c;
        for (int j = 0; j < c; ++j) {
          if (bi[j]) continue;
          const double rc = ci[j] - u[i] - v[j];
          if (rc < best) {
            best = rc;
            ei = i;
            ej = j;
          }
        }
      }
    } else {
      for (int i = 0; i < r && ei == -1; ++i) {
        const double* ci = cost.data() + static_cast<std::size_t>(i) * c;
        const char* bi = is_basic.data() + static_cast<std::size_t>(i) * c;
        for (int j = 0; j < c; ++j) {
          if (bi[j]) continue;
          if (ci[j] - u[i] - v[j] < -eps) {
            ei = i;
            ej = j;
            break;
          }
        }
      }
    }
    if (ei == -1) break;

    // The unique basis cycle through the entering cell, as the tree
    // path from its row node to its column node.
    std::vector<int> down, up;
    int x = ei, y = r + ej;
    while (x != y) {
      if (depth[x] >= depth[y]) {
        down.push_back(par_edge[x]);
        x = par_node[x];
      } else {
        up.push_back(par_edge[y]);
        y = par_node[y];
      }
    }
    std::vector<int> path = std::move(down);
    path.insert(path.end(), up.rbegin(), up.rend());
    if (path.size() % 2 != 1)
      fail(ErrorCode::kInternal, "basis cycle has even length");

    // Odd positions gain the shift, even positions give it up.
    double theta = basic[path[0]].mass;
    int leave_pos = 0;
    for (std::size_t k = 2; k < path.size(); k += 2) {
      const BasicCell& cand = basic[path[k]];
      const BasicCell& cur = basic[path[leave_pos]];
      if (cand.mass < theta ||
          (cand.mass == theta && (cand.i < cur.i ||
                                  (cand.i == cur.i && cand.j < cur.j)))) {
        theta = cand.mass;
        leave_pos = static_cast<int>(k);
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k % 2 == 0)
        basic[path[k]].mass -= theta;
      else
        basic[path[k]].mass += theta;
    }

    const int le = path[leave_pos];
    const BasicCell old = basic[le];
    auto drop = [&](int node, int e) {
      auto& list = adj[node];
      list.erase(std::find(list.begin(), list.end(), e));
    };
    drop(old.i, le);
    drop(r + old.j, le);
    is_basic[static_cast<std::size_t>(old.i) * c + old.j] = 0;
    basic[le] = {ei, ej, theta};
    adj[ei].push_back(le);
    adj[r + ej].push_back(le);
    is_basic[static_cast<std::size_t>(ei) * c + ej] = 1;
  }

  OracleResult out;
  Kahan total;
  for (const auto& cell : basic) {
    if (cell.mass <= 0.0) continue;
    total.add(cell.mass * cost[static_cast<std::size_t>(cell.i) * c + cell.j]);
    out.plan.entries.push_back({rows[cell.i], cols[cell.j], cell.mass});
  }
  out.cost_pp = total.value();
  out.plan.cost_pp = out.cost_pp;
  std::sort(out.plan.entries.begin(), out.plan.entries.end(),
            [](const PlanEntry& x, const PlanEntry& y) {
              if (x.src != y.src) return x.src < y.src;
              return x.dst < y.dst;
            });
  return out;
}

}  // namespace uot
