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

#ifndef ULTRAOT_TRANSPORT_HPP
#define ULTRAOT_TRANSPORT_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ultra_core.hpp"

namespace uot {

// Probability measure on the leaves of a tree, stored by leaf ordinal.
struct Measure {
  std::vector<double> w;

  int size() const { return static_cast<int>(w.size()); }
  double total() const;
};

// Builds a measure from sparse label/weight pairs; absent leaves get
// weight zero.  The total must land within sum_tol of one unless
// renormalize is set, in which case any positive total is rescaled.
Measure make_measure(const Srt& s,
                     const std::vector<std::pair<std::string, double>>& entries,
                     double sum_tol = 1e-12, bool renormalize = false);

Measure uniform_measure(const Srt& s);
Measure dirac_measure(const Srt& s, const std::string& label);

// t * a + (1 - t) * b with t in [0, 1].
Measure mix_measures(const Measure& a, const Measure& b, double t);

// Mass each vertex ball receives from the measure, accumulated child
// masses first so the sums follow the tree.
std::vector<double> ball_masses(const Srt& s, const Measure& mu);

// p-th power of the order-p Wasserstein distance via the ball-mass
// formula: 2^(p-1) times the sum over non-root vertices of
// (h(parent)^p - h(v)^p) |mu(ball) - nu(ball)|.
double wasserstein_pp(const Srt& s, const Measure& mu, const Measure& nu,
                      double p);
double wasserstein(const Srt& s, const Measure& mu, const Measure& nu,
                   double p);

// Coordinates of a measure under the affine embedding that turns the
// order-p transport cost into a plain l1 distance.  One coordinate per
// non-root vertex: coord = weight * ball mass.
struct L1Embedding {
  std::vector<int> vertex;
  std::vector<double> weight;
  std::vector<double> coord;

  int size() const { return static_cast<int>(vertex.size()); }
};

L1Embedding embed_l1(const Srt& s, const Measure& mu, double p);

// l1 distance between two embeddings of measures on the same tree.
double l1_distance(const L1Embedding& a, const L1Embedding& b);

// Sparse coupling between two point sets with its transport cost.
struct PlanEntry {
  int src = 0;
  int dst = 0;
  double mass = 0;
};

struct TransportPlan {
  std::vector<PlanEntry> entries;  // sorted by source then target
  double cost_pp = 0;              // integral of distance^p against the plan
};

// Optimal coupling on a tree: mass settles inside each ball before the
// signed surplus moves up, so the flow across the edge above v is
// exactly |mu(ball v) - nu(ball v)|.  Ties in who exports first go to
// the lexicographically smallest label.
TransportPlan tree_optimal_plan(const Srt& s, const Measure& mu,
                                const Measure& nu, double p);

// Row and column sums of a plan over n points.
std::pair<std::vector<double>, std::vector<double>> plan_marginals(
    const TransportPlan& plan, int n);

inline double pow_p(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  return std::pow(x, p);
}

}  // namespace uot

#endif  // ULTRAOT_TRANSPORT_HPP
