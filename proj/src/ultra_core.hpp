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

#ifndef ULTRAOT_ULTRA_CORE_HPP
#define ULTRAOT_ULTRA_CORE_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace uot {

// Finite metric space as a symmetric matrix with zero diagonal and
// positive off-diagonal entries.  Row order is the point order used by
// measures and covering routines.
struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<double> dist;  // row-major, size() * size() entries

  int size() const { return static_cast<int>(labels.size()); }
  double at(int i, int j) const {
    return dist[static_cast<std::size_t>(i) * labels.size() + j];
  }
  double& at(int i, int j) {
    return dist[static_cast<std::size_t>(i) * labels.size() + j];
  }
};

// Validates shape, symmetry, zero diagonal, positivity, finiteness and
// label well-formedness.  Does not check the ultrametric inequality.
DistanceMatrix make_matrix(std::vector<std::string> labels,
                           std::vector<double> dist);

double matrix_diameter(const DistanceMatrix& m);

// Witness of a failed strong triangle inequality: d(i,j) exceeds
// max(d(i,k), d(j,k)) by more than the allowed slack.
struct UltrametricViolation {
  int i = 0;
  int j = 0;
  int k = 0;
  double dij = 0;
  double dik = 0;
  double djk = 0;
  double excess = 0;
};

// Slack is tau * diameter; tau = 0 demands exact ultrametricity.
std::optional<UltrametricViolation> check_ultrametric(const DistanceMatrix& m,
                                                      double tau);

// Rooted tree with heights strictly decreasing away from the root and
// every leaf at height zero.  Leaves carry the point labels.  The ball
// of a vertex is its set of descendant leaves; pairwise distance is
// twice the height of the lowest common ancestor, so a ball at height h
// has diameter 2h.
struct Srt {
  std::vector<int> parent;          // -1 for the root
  std::vector<double> height;
  std::vector<std::string> labels;  // nonempty exactly on leaves

  // Derived by make_srt.
  int root = 0;
  std::vector<int> child_off;    // CSR offsets into child, per vertex
  std::vector<int> child;
  std::vector<int> depth;
  std::vector<int> leaf_ix;      // depth-first leaf ordinal, -1 on internal
  std::vector<int> leaf_vertex;  // vertex of each leaf ordinal
  std::vector<int> range_lo;     // leaf ordinals under each vertex,
  std::vector<int> range_hi;     // as a half-open range
  std::unordered_map<std::string, int> leaf_by_label;

  int num_vertices() const { return static_cast<int>(parent.size()); }
  int num_leaves() const { return static_cast<int>(leaf_vertex.size()); }
  bool is_leaf(int v) const { return child_off[v] == child_off[v + 1]; }
  int degree(int v) const { return child_off[v + 1] - child_off[v]; }
  double diameter() const { return 2.0 * height[root]; }
};

// Validates the arrays and fills in the derived fields.  With
// allow_unary set, internal vertices may have a single child.
Srt make_srt(std::vector<int> parent, std::vector<double> height,
             std::vector<std::string> labels, bool allow_unary = false);

// Rebuilds with vertices renumbered in depth-first preorder and the
// children of every vertex ordered by the leftmost leaf beneath them.
Srt canonical_srt(const Srt& s);

// Exact inverse pair on ultrametric inputs.  srt_from_matrix rejects a
// matrix whose distances no tree reproduces; matrix_from_srt lists the
// points in leaf-ordinal order.
Srt srt_from_matrix(const DistanceMatrix& m);
DistanceMatrix matrix_from_srt(const Srt& s);

// Distance between two points given as leaf ordinals.
double leaf_distance(const Srt& s, int a, int b);

// Snaps every internal height up to the nearest q^-n / 2 from above and
// contracts edges whose endpoints collide.  Requires diameter <= 1 and
// q > 1; distances satisfy d <= d' < q * d.  Idempotent for fixed q.
Srt quantize_heights(const Srt& s, double q);

// One block of the canonical partition into balls of diameter <= 2 eps.
struct CoverBlock {
  int vertex = -1;          // maximal tree vertex with height <= eps
  std::vector<int> leaves;  // leaf ordinals, ascending
};

std::vector<CoverBlock> covering_partition(const Srt& s, double eps);

// Greedy cover by closed balls of radius 2 eps in point order.  Equals
// the partition count on ultrametric inputs and is an upper bound on
// the covering number otherwise.
long long covering_count_matrix(const DistanceMatrix& m, double eps);

// Removes the ball rooted at v (not the root) and contracts the unary
// vertex this can leave behind.
Srt prune_ball(const Srt& s, int v);

}  // namespace uot

#endif  // ULTRAOT_ULTRA_CORE_HPP
