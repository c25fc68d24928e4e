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

#ifndef ULTRAOT_GENERATORS_HPP
#define ULTRAOT_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "transport.hpp"
#include "ultra_core.hpp"

namespace uot {

// Complete k-ary word space: a vertex at depth n sits at height q^-n / 2,
// leaves sit at height zero and are labeled by their digit words, so two
// words first differing at zero-based position i are at distance q^-i.
// k is capped at 36 (digits 0-9a-z) and the leaf count at leaf_cap.
Srt regular_space(int k, double q, int depth, long long leaf_cap = 1 << 22);

// Tree with breadth-first vertex numbers 1, 2, ...; vertex n has a_n
// children, where a_1 = 2 and a_{n+1} = 2^n + 1, and parents sit at
// height 2^(1-n). Vertices whose full child list would push the vertex
// count past max_vertices are demoted to leaves at height zero, labeled
// by their decimal number. Covering counts at radius eps match the
// unbounded tree for eps at or above the height of the first demoted
// vertex (2^-16 at the default budget).
Srt smallparts_space(int max_vertices = 70000);

struct CountableExample {
  DistanceMatrix matrix;
  Srt tree;
};

// Comb space on points w1..wn with d(wi, wj) = (1 + ln min(i, j))^-1 for
// i < j. The last point stands in for the accumulation point of the
// infinite comb, so it hangs off the deepest spine vertex.
CountableExample countable_example(int n);

// Random tree with dyadic heights on the 2^-20 grid, root height in
// [1/4, 1/2], and 2..4 children per vertex (wider only where the height
// grid bottoms out). Leaves are labeled x000, x001, ... in construction
// order.
Srt random_ultrametric(uint64_t seed, int leaves);

// Random measure with weights on the 2^-30 grid summing to one exactly
// (stick breaking at sorted uniform cuts; zero weights may occur).
Measure random_measure(const Srt& s, uint64_t seed);

// Coordinate slots of the spread-measure construction on a k-regular
// tree: every child of an internal vertex except the last, walked in
// vertex index order, paired with its depth.
struct CubeLayout {
  int k = 0;
  std::vector<int> vertex;
  std::vector<int> depth;
};
CubeLayout cube_vprime(const Srt& s);

// Measure on a k-regular tree from an assignment a in [0,1]^V': the
// first k-1 children of each internal vertex take a share of the parent
// mass of (1 + eps a_v) / k each and the last child the remainder.
// Requires eps (k-1) < 1, which keeps every share positive and every
// depth-n ball mass at least ((1 - (k-1) eps) / k)^n.
Measure cube_to_measure(const Srt& s, double eps, const std::vector<double>& a);

// Weights b_i = 0.9 i^-(1+eps) / zeta(1+eps), summing below 0.9 at any
// truncation length.
std::vector<double> comb_weights(int count, double eps);

// Measure sum_i b_i x_i delta(points[i+1]) with the unassigned remainder
// 1 - sum_i b_i x_i placed at points[0]. Points are leaf ordinals, x has
// at most points.size() - 1 entries in [0, 1], and the weighted sum must
// not exceed one.
Measure dirac_comb_measure(const Srt& s, const std::vector<int>& points,
                           const std::vector<double>& b,
                           const std::vector<double>& x);

// Greedy separated sequence: q_1 is the smallest-labeled leaf and each
// q_j the smallest-labeled leaf outside the closed balls B(q_i, r_i) for
// i < j, with r_i = (a_i / c1)^(1/d2) and a_i = i^-(1+eps) / zeta(1+eps).
// d(q_i, q_j) > r_i for i < j holds by construction. Requires
// mu(ball) <= c1 diam^d2 at every internal vertex. Stops when no leaf
// remains, or earlier at target_len if positive.
struct FrostmanSeq {
  std::vector<int> points;    // leaf ordinals in selection order
  std::vector<double> radii;  // r_i for each selected point
  double c2 = 0;              // 1 / zeta(1 + eps)
  double c = 0;               // (c2 / c1)^(1/d2), so r_i = c i^(-1/dp)
  double dp = 0;              // d2 / (1 + eps)
};
FrostmanSeq greedy_frostman_sequence(const Srt& s, const Measure& mu,
                                     double c1, double d2, double eps,
                                     int target_len = 0);

struct RegroupLevel {
  int n = 0;
  double lo = 0;
  double hi = 0;
  long long groups = 0;
  double min_mass = 0;
  double max_mass = 0;
  bool window_ok = true;
  long long min_children = -1;  // filled for every level above the last
};

struct RegroupResult {
  Srt tree;
  Measure mu;
  std::vector<RegroupLevel> levels;
  int first_failure_level = 0;  // 0 when every mass window held
  long long child_bound = 0;    // ceil(q^sp / 3)
  long long min_children = -1;  // across levels 1..depth-1
  bool child_bound_ok = true;
  bool precondition_ok = true;  // q^sp > 2c
};

// Level-by-level branch regrouping. Internal heights must lie on the
// grid q^-n / 2 with the root at exactly 1/2 (vertices below the depth
// of the last level pass through untouched), and mu must obey
// mu(ball) <= c diam^sp down to atoms at the last-level scale. Stage n
// wraps every child of a height q^-(n-1)/2 vertex that is not already at
// height q^-n / 2 in a one-child stub at that height, orders the
// children by smallest contained leaf label, and closes consecutive
// groups once their mass reaches c q^-n sp / 2; an undersized tail is
// merged into its neighbor when the sum stays within 3/2 c q^-n sp.
// Windows that cannot be met are reported, never repaired. The output
// tree is canonical with stubs left unary by grouping contracted away,
// and the identity on labels never increases leaf distances.
RegroupResult regroup(const Srt& s, const Measure& mu, double q, double c,
                      double sp, int depth);

// Largest increase of a leaf distance under the identity map between two
// trees on the same label set (at most zero means the map is
// 1-Lipschitz). Exact: for each input vertex the fold of its leaf set
// through lowest common ancestors in the output tree realizes the
// maximal output distance within that ball.
double regroup_expansion(const Srt& in, const Srt& out);

struct FrostmanInstance {
  Srt tree;
  Measure mu;
};

// Random tree plus measure honoring mass(ball) <= c diam^sp on the
// q-grid at every level, with child masses kept at or below half the
// level cap so that regrouping to the same depth meets every window.
// Masses live on the 2^-40 grid and sum to one exactly.
FrostmanInstance random_frostman_instance(uint64_t seed, double q, double c,
                                          double sp, int depth);

}  // namespace uot

#endif  // ULTRAOT_GENERATORS_HPP
