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

#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "ultra_core.hpp"

using namespace uot;

namespace {

template <typename F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Root at 1/2 over leaf a and an inner pair {b, c} at 1/4.
Srt three_leaf_tree() {
  return make_srt({-1, 0, 0, 2, 2}, {0.5, 0.0, 0.25, 0.0, 0.0},
                  {"", "a", "", "b", "c"});
}

DistanceMatrix three_leaf_matrix() {
  return make_matrix({"a", "b", "c"},
                     {0.0, 1.0, 1.0, 1.0, 0.0, 0.5, 1.0, 0.5, 0.0});
}

}  // namespace

TEST_CASE("make_matrix validates shape and entries") {
  CHECK(code_of([] { make_matrix({"a", "b"}, {0, 1, 1}); }) ==
        ErrorCode::kStructure);
  CHECK(code_of([] { make_matrix({"a", "b"}, {0, 1, 2, 0}); }) ==
        ErrorCode::kStructure);
  CHECK(code_of([] { make_matrix({"a", "b"}, {0.5, 1, 1, 0}); }) ==
        ErrorCode::kStructure);
  CHECK(code_of([] { make_matrix({"a", "b"}, {0, -1, -1, 0}); }) ==
        ErrorCode::kStructure);
  CHECK(code_of([] { make_matrix({"a", "a"}, {0, 1, 1, 0}); }) ==
        ErrorCode::kStructure);
  CHECK(code_of([] { make_matrix({"a", ""}, {0, 1, 1, 0}); }) ==
        ErrorCode::kStructure);
  DistanceMatrix m = three_leaf_matrix();
  CHECK(m.size() == 3);
  CHECK(m.at(1, 2) == 0.5);
  CHECK(matrix_diameter(m) == 1.0);
}

TEST_CASE("check_ultrametric reports a violating triple") {
  CHECK(!check_ultrametric(three_leaf_matrix(), 0.0));

  DistanceMatrix bad = make_matrix(
      {"a", "b", "c"}, {0.0, 1.0, 0.3, 1.0, 0.0, 0.5, 0.3, 0.5, 0.0});
  auto w = check_ultrametric(bad, 0.0);
  REQUIRE(w.has_value());
  CHECK(w->dij == 1.0);
  CHECK(w->excess == doctest::Approx(0.5).epsilon(1e-12));

  // Slack is relative to the diameter.
  CHECK(!check_ultrametric(bad, 0.5));
  CHECK(code_of([&] { check_ultrametric(bad, -1.0); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("make_srt validates structure") {
  // Two roots.
  CHECK(code_of([] {
          make_srt({-1, -1}, {0.5, 0.0}, {"", "a"});
        }) == ErrorCode::kStructure);
  // Height must strictly decrease along edges.
  CHECK(code_of([] {
          make_srt({-1, 0, 1, 1, 0}, {0.5, 0.5, 0.0, 0.0, 0.0},
                   {"", "", "a", "b", "c"});
        }) == ErrorCode::kStructure);
  // Leaves sit at height zero.
  CHECK(code_of([] {
          make_srt({-1, 0, 0}, {0.5, 0.1, 0.0}, {"", "a", "b"});
        }) == ErrorCode::kStructure);
  // Labels on leaves only.
  CHECK(code_of([] {
          make_srt({-1, 0, 0, 2, 2}, {0.5, 0.0, 0.25, 0.0, 0.0},
                   {"x", "a", "", "b", "c"});
        }) == ErrorCode::kStructure);
  CHECK(code_of([] {
          make_srt({-1, 0, 0, 2, 2}, {0.5, 0.0, 0.25, 0.0, 0.0},
                   {"", "a", "", "", "c"});
        }) == ErrorCode::kStructure);
  // Duplicate leaf labels.
  CHECK(code_of([] {
          make_srt({-1, 0, 0, 2, 2}, {0.5, 0.0, 0.25, 0.0, 0.0},
                   {"", "a", "", "a", "c"});
        }) == ErrorCode::kStructure);
  // Unary internal vertices need the explicit flag.
  CHECK(code_of([] {
          make_srt({-1, 0, 1}, {0.5, 0.25, 0.0}, {"", "", "a"});
        }) == ErrorCode::kStructure);
  CHECK(!code_of([] {
    make_srt({-1, 0, 1}, {0.5, 0.25, 0.0}, {"", "", "a"}, true);
  }));

  Srt s = three_leaf_tree();
  CHECK(s.num_vertices() == 5);
  CHECK(s.num_leaves() == 3);
  CHECK(s.diameter() == 1.0);
  CHECK(s.is_leaf(1));
  CHECK(!s.is_leaf(2));
}

TEST_CASE("leaf_distance matches the matrix") {
  Srt s = three_leaf_tree();
  DistanceMatrix m = matrix_from_srt(s);
  REQUIRE(m.size() == 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(leaf_distance(s, a, b) == m.at(a, b));
  CHECK(leaf_distance(s, 0, 0) == 0.0);
}

TEST_CASE("matrix and tree conversions invert each other") {
  DistanceMatrix m = three_leaf_matrix();
  Srt s = srt_from_matrix(m);
  CHECK(s.num_leaves() == 3);
  DistanceMatrix back = matrix_from_srt(s);
  CHECK(back.labels == m.labels);
  CHECK(back.dist == m.dist);

  // Non-ultrametric input is rejected with a witness in the message.
  DistanceMatrix bad = make_matrix(
      {"a", "b", "c"}, {0.0, 1.0, 0.3, 1.0, 0.0, 0.5, 0.3, 0.5, 0.0});
  CHECK(code_of([&] { srt_from_matrix(bad); }) == ErrorCode::kUltrametric);
}

TEST_CASE("canonical_srt orders children by smallest leaf and keeps order") {
  // Same tree written with scrambled vertex numbers.
  Srt s = make_srt({2, 2, -1, 0, 0}, {0.25, 0.0, 0.5, 0.0, 0.0},
                   {"", "a", "", "b", "c"});
  Srt c = canonical_srt(s);
  CHECK(c.parent == std::vector<int>{-1, 0, 1, 1, 0});
  CHECK(c.labels[2] == "b");
  CHECK(c.labels[3] == "c");
  CHECK(c.labels[4] == "a");

  Srt twice = canonical_srt(c);
  CHECK(twice.parent == c.parent);
  CHECK(twice.height == c.height);
  CHECK(twice.labels == c.labels);
}

TEST_CASE("quantize_heights snaps up to the grid") {
  Srt s = make_srt({-1, 0, 0, 2, 2}, {0.4, 0.0, 0.2, 0.0, 0.0},
                   {"", "a", "", "b", "c"});
  Srt snapped = quantize_heights(s, 2.0);
  CHECK(snapped.height[snapped.root] == 0.5);
  for (int v = 0; v < snapped.num_vertices(); ++v) {
    if (snapped.is_leaf(v)) continue;
    double h = snapped.height[v];
    CHECK((h == 0.5 || h == 0.25 || h == 0.125));
  }
  // d <= d' < q d on every pair, and a second pass changes nothing.
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      double d = leaf_distance(s, a, b);
      double dq = leaf_distance(snapped, a, b);
      CHECK(d <= dq);
      CHECK(dq < 2.0 * d);
    }
  Srt again = quantize_heights(snapped, 2.0);
  CHECK(again.height == snapped.height);
  CHECK(again.parent == snapped.parent);

  CHECK(code_of([&] { quantize_heights(s, 1.0); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("quantize_heights contracts colliding levels") {
  // Heights 0.4 and 0.3 both snap to 0.5, so the chain collapses.
  Srt s = make_srt({-1, 0, 1, 1, 0}, {0.4, 0.3, 0.0, 0.0, 0.0},
                   {"", "", "a", "b", "c"});
  Srt snapped = quantize_heights(s, 2.0);
  CHECK(snapped.num_vertices() == 4);
  CHECK(snapped.degree(snapped.root) == 3);
}

TEST_CASE("covering_partition lists maximal balls") {
  Srt s = three_leaf_tree();
  auto blocks = covering_partition(s, 0.5);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].vertex == s.root);
  CHECK(blocks[0].leaves == std::vector<int>{0, 1, 2});

  blocks = covering_partition(s, 0.25);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].leaves == std::vector<int>{0});
  CHECK(blocks[1].leaves == std::vector<int>{1, 2});

  blocks = covering_partition(s, 0.1);
  CHECK(blocks.size() == 3);
  CHECK(covering_partition(s, 0.0).size() == 3);

  CHECK(code_of([&] { covering_partition(s, -0.1); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("covering_count_matrix agrees on ultrametric input") {
  DistanceMatrix m = three_leaf_matrix();
  Srt s = srt_from_matrix(m);
  for (double eps : {0.5, 0.25, 0.1}) {
    CHECK(covering_count_matrix(m, eps) ==
          static_cast<long long>(covering_partition(s, eps).size()));
  }
}

TEST_CASE("prune_ball removes a subtree and keeps other distances") {
  Srt s = three_leaf_tree();
  // Vertex 2 is the inner pair {b, c}.
  Srt rem = prune_ball(s, 2);
  CHECK(rem.num_leaves() == 1);
  CHECK(rem.labels[rem.leaf_vertex[0]] == "a");

  // Removing leaf b keeps d(a, c) intact and contracts the unary stub.
  int leaf_b = s.leaf_vertex[s.leaf_by_label.at("b")];
  Srt rem2 = prune_ball(s, leaf_b);
  CHECK(rem2.num_leaves() == 2);
  int a = rem2.leaf_by_label.at("a");
  int c = rem2.leaf_by_label.at("c");
  CHECK(leaf_distance(rem2, a, c) == 1.0);

  CHECK(code_of([&] { prune_ball(s, s.root); }) ==
        ErrorCode::kInvalidArgument);
}
