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

#include "transport.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "numeric.hpp"

namespace uot {
namespace {

void check_p(double p) {
  if (!std::isfinite(p) || p < 1.0)
    fail(ErrorCode::kInvalidArgument, "order p must be finite and at least 1");
}

void check_same_tree(const Srt& s, const Measure& mu) {
  if (mu.size() != s.num_leaves())
    fail(ErrorCode::kSupportMismatch,
         "measure has " + std::to_string(mu.size()) + " weights but the tree " +
             std::to_string(s.num_leaves()) + " leaves");
}

// Vertices ordered deepest first, so children appear before parents.
std::vector<int> by_depth_desc(const Srt& s) {
  const int nv = s.num_vertices();
  int dmax = 0;
  for (int v = 0; v < nv; ++v) dmax = std::max(dmax, s.depth[v]);
  std::vector<int> off(dmax + 2, 0);
  for (int v = 0; v < nv; ++v) ++off[dmax - s.depth[v] + 1];
  for (int d = 0; d <= dmax; ++d) off[d + 1] += off[d];
  std::vector<int> out(nv);
  std::vector<int> cur(off.begin(), off.end() - 1);
  for (int v = 0; v < nv; ++v) out[cur[dmax - s.depth[v]]++] = v;
  return out;
}

}  // namespace

double Measure::total() const { return compensated_sum(w); }

Measure make_measure(const Srt& s,
                     const std::vector<std::pair<std::string, double>>& entries,
                     double sum_tol, bool renormalize) {
  Measure mu;
  mu.w.assign(s.num_leaves(), 0.0);
  std::vector<char> seen(s.num_leaves(), 0);
  for (const auto& [label, weight] : entries) {
    auto it = s.leaf_by_label.find(label);
    if (it == s.leaf_by_label.end())
      fail(ErrorCode::kSupportMismatch,
           "label '" + label + "' is not a point of the space");
    if (seen[it->second])
      fail(ErrorCode::kStructure, "label '" + label + "' listed twice");
    seen[it->second] = 1;
    if (!std::isfinite(weight) || weight < 0.0)
      fail(ErrorCode::kStructure, "weight for '" + label + "' is not a " +
                                      "finite nonnegative number");
    mu.w[it->second] = weight;
  }
  const double total = mu.total();
  if (renormalize) {
    if (!(total > 0.0))
      fail(ErrorCode::kStructure, "cannot renormalize a zero measure");
    for (double& x : mu.w) x /= total;
  } else if (std::abs(total - 1.0) > sum_tol) {
    fail(ErrorCode::kStructure,
         "weights sum to " + fmt_double(total) + ", not 1");
  }
  return mu;
}

Measure uniform_measure(const Srt& s) {
  Measure mu;
  mu.w.assign(s.num_leaves(), 1.0 / s.num_leaves());
  return mu;
}

Measure dirac_measure(const Srt& s, const std::string& label) {
  auto it = s.leaf_by_label.find(label);
  if (it == s.leaf_by_label.end())
    fail(ErrorCode::kSupportMismatch,
         "label '" + label + "' is not a point of the space");
  Measure mu;
  mu.w.assign(s.num_leaves(), 0.0);
  mu.w[it->second] = 1.0;
  return mu;
}

Measure mix_measures(const Measure& a, const Measure& b, double t) {
  if (a.size() != b.size())
    fail(ErrorCode::kSupportMismatch, "measures live on different spaces");
  if (!(t >= 0.0 && t <= 1.0))
    fail(ErrorCode::kInvalidArgument, "mixing weight must lie in [0, 1]");
  Measure out;
  out.w.resize(a.w.size());
  for (std::size_t i = 0; i < a.w.size(); ++i)
    out.w[i] = t * a.w[i] + (1.0 - t) * b.w[i];
  return out;
}

std::vector<double> ball_masses(const Srt& s, const Measure& mu) {
  check_same_tree(s, mu);
  std::vector<double> mass(s.num_vertices(), 0.0);
  for (int a = 0; a < s.num_leaves(); ++a) mass[s.leaf_vertex[a]] = mu.w[a];
  for (int v : by_depth_desc(s))
    if (v != s.root) mass[s.parent[v]] += mass[v];
  return mass;
}

double wasserstein_pp(const Srt& s, const Measure& mu, const Measure& nu,
                      double p) {
  check_p(p);
  check_same_tree(s, mu);
  check_same_tree(s, nu);
  const std::vector<double> ma = ball_masses(s, mu);
  const std::vector<double> mb = ball_masses(s, nu);
  Kahan acc;
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (v == s.root) continue;
    const double dh = pow_p(s.height[s.parent[v]], p) - pow_p(s.height[v], p);
    acc.add(dh * std::abs(ma[v] - mb[v]));
  }
  return pow_p(2.0, p - 1.0) * acc.value();
}

double wasserstein(const Srt& s, const Measure& mu, const Measure& nu,
                   double p) {
  const double wpp = wasserstein_pp(s, mu, nu, p);
  if (p == 1.0) return wpp;
  return std::pow(wpp, 1.0 / p);
}

L1Embedding embed_l1(const Srt& s, const Measure& mu, double p) {
  check_p(p);
  check_same_tree(s, mu);
  const std::vector<double> mass = ball_masses(s, mu);
  const double lead = pow_p(2.0, p - 1.0);
  L1Embedding e;
  e.vertex.reserve(s.num_vertices() - 1);
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (v == s.root) continue;
    const double w =
        lead * (pow_p(s.height[s.parent[v]], p) - pow_p(s.height[v], p));
    e.vertex.push_back(v);
    e.weight.push_back(w);
    e.coord.push_back(w * mass[v]);
  }
  return e;
}

double l1_distance(const L1Embedding& a, const L1Embedding& b) {
  if (a.vertex != b.vertex)
    fail(ErrorCode::kInvalidArgument,
         "embeddings do not share a coordinate system");
  Kahan acc;
  for (std::size_t i = 0; i < a.coord.size(); ++i)
    acc.add(std::abs(a.coord[i] - b.coord[i]));
  return acc.value();
}

TransportPlan tree_optimal_plan(const Srt& s, const Measure& mu,
                                const Measure& nu, double p) {
  check_p(p);
  check_same_tree(s, mu);
  check_same_tree(s, nu);

  // Rank leaves lexicographically so export ties resolve by label.
  const int n = s.num_leaves();
  std::vector<int> by_label(n);
  for (int a = 0; a < n; ++a) by_label[a] = a;
  std::sort(by_label.begin(), by_label.end(), [&](int a, int b) {
    return s.labels[s.leaf_vertex[a]] < s.labels[s.leaf_vertex[b]];
  });
  std::vector<int> rank(n);
  for (int r = 0; r < n; ++r) rank[by_label[r]] = r;

  struct Item {
    int rank;
    int leaf;
    double mass;
  };
  const auto by_rank = [](const Item& a, const Item& b) {
    return a.rank < b.rank;
  };

  TransportPlan plan;
  Kahan cost;
  std::vector<std::vector<Item>> supply(s.num_vertices());
  std::vector<std::vector<Item>> demand(s.num_vertices());
  for (int v : by_depth_desc(s)) {
    std::vector<Item>& sup = supply[v];
    std::vector<Item>& dem = demand[v];
    if (s.is_leaf(v)) {
      const int a = s.leaf_ix[v];
      const double stay = std::min(mu.w[a], nu.w[a]);
      if (stay > 0.0) plan.entries.push_back({a, a, stay});
      if (mu.w[a] > nu.w[a]) sup.push_back({rank[a], a, mu.w[a] - nu.w[a]});
      if (nu.w[a] > mu.w[a]) dem.push_back({rank[a], a, nu.w[a] - mu.w[a]});
    } else {
      for (int c = s.child_off[v]; c < s.child_off[v + 1]; ++c) {
        auto& cs = supply[s.child[c]];
        auto& cd = demand[s.child[c]];
        sup.insert(sup.end(), cs.begin(), cs.end());
        dem.insert(dem.end(), cd.begin(), cd.end());
        cs.clear();
        cs.shrink_to_fit();
        cd.clear();
        cd.shrink_to_fit();
      }
      std::sort(sup.begin(), sup.end(), by_rank);
      std::sort(dem.begin(), dem.end(), by_rank);
      const double dp = pow_p(2.0 * s.height[v], p);
      std::size_t a = 0, b = 0;
      while (a < sup.size() && b < dem.size()) {
        Item& x = sup[a];
        Item& y = dem[b];
        const double m = std::min(x.mass, y.mass);
        if (m > 0.0) {
          plan.entries.push_back({x.leaf, y.leaf, m});
          cost.add(m * dp);
        }
        x.mass -= m;
        y.mass -= m;
        if (x.mass == 0.0) ++a;
        if (y.mass == 0.0) ++b;
      }
      sup.erase(sup.begin(), sup.begin() + a);
      dem.erase(dem.begin(), dem.begin() + b);
    }
  }

  // Totals differ at most by rounding; anything left at the root is
  // that residue and carries no destination.
  double residue = 0.0;
  for (const Item& x : supply[s.root]) residue += x.mass;
  for (const Item& y : demand[s.root]) residue += y.mass;
  if (residue > 1e-9)
    fail(ErrorCode::kStructure,
         "measure totals differ by " + fmt_double(residue));

  std::sort(plan.entries.begin(), plan.entries.end(),
            [](const PlanEntry& a, const PlanEntry& b) {
              if (a.src != b.src) return a.src < b.src;
              return a.dst < b.dst;
            });
  plan.cost_pp = cost.value();
  return plan;
}

std::pair<std::vector<double>, std::vector<double>> plan_marginals(
    const TransportPlan& plan, int n) {
  std::vector<double> row(n, 0.0), col(n, 0.0);
  for (const auto& e : plan.entries) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      fail(ErrorCode::kInvalidArgument, "plan entry outside the point set");
    row[e.src] += e.mass;
    col[e.dst] += e.mass;
  }
  return {std::move(row), std::move(col)};
}

}  // namespace uot
