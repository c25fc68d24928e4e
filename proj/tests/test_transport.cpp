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

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "transport.hpp"
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

// Leaves a, b under an inner vertex at 1/4, leaf c beside it; all
// distances dyadic so the costs below are exact.
Srt pair_plus_one() {
  return make_srt({-1, 0, 1, 1, 0}, {0.5, 0.25, 0.0, 0.0, 0.0},
                  {"", "", "a", "b", "c"});
}

Srt star4() {
  return make_srt({-1, 0, 0, 0, 0}, {0.5, 0.0, 0.0, 0.0, 0.0},
                  {"", "a", "b", "c", "d"});
}

}  // namespace

TEST_CASE("make_measure fills by label and validates") {
  Srt s = pair_plus_one();
  Measure mu = make_measure(s, {{"a", 0.25}, {"c", 0.75}});
  CHECK(mu.w == std::vector<double>{0.25, 0.0, 0.75});
  CHECK(mu.total() == 1.0);

  CHECK(code_of([&] { make_measure(s, {{"z", 1.0}}); }) ==
        ErrorCode::kSupportMismatch);
  CHECK(code_of([&] {
          make_measure(s, {{"a", 0.5}, {"a", 0.5}});
        }) == ErrorCode::kStructure);
  CHECK(code_of([&] { make_measure(s, {{"a", 0.5}}); }) ==
        ErrorCode::kStructure);
  CHECK(code_of([&] { make_measure(s, {{"a", -1.0}, {"b", 2.0}}); }) ==
        ErrorCode::kStructure);

  Measure re = make_measure(s, {{"a", 1.0}, {"b", 3.0}}, 1e-12, true);
  CHECK(re.w == std::vector<double>{0.25, 0.75, 0.0});
  CHECK(code_of([&] { make_measure(s, {{"a", 0.0}}, 1e-12, true); }) ==
        ErrorCode::kStructure);
}

TEST_CASE("uniform, dirac and mix") {
  Srt s = star4();
  Measure u = uniform_measure(s);
  CHECK(u.total() == 1.0);
  CHECK(u.w[0] == 0.25);

  Measure d = dirac_measure(s, "c");
  CHECK(d.w == std::vector<double>{0.0, 0.0, 1.0, 0.0});
  CHECK(code_of([&] { dirac_measure(s, "z"); }) ==
        ErrorCode::kSupportMismatch);

  Measure m = mix_measures(d, u, 0.5);
  CHECK(m.w == std::vector<double>{0.125, 0.125, 0.625, 0.125});
  CHECK(code_of([&] { mix_measures(d, u, 1.5); }) ==
        ErrorCode::kInvalidArgument);
  Measure other;
  other.w = {1.0};
  CHECK(code_of([&] { mix_measures(d, other, 0.5); }) ==
        ErrorCode::kSupportMismatch);
}

TEST_CASE("closed form cost on a dyadic example") {
  Srt s = pair_plus_one();
  Measure mu = dirac_measure(s, "a");
  Measure nu = make_measure(s, {{"b", 0.5}, {"c", 0.5}});

  CHECK(wasserstein_pp(s, mu, nu, 1.0) == 0.75);
  CHECK(wasserstein_pp(s, mu, nu, 2.0) == 0.625);
  CHECK(wasserstein(s, mu, nu, 1.0) == 0.75);
  CHECK(wasserstein(s, mu, nu, 2.0) ==
        doctest::Approx(std::sqrt(0.625)).epsilon(1e-15));

  CHECK(wasserstein_pp(s, mu, mu, 2.0) == 0.0);
  CHECK(wasserstein_pp(s, nu, mu, 2.0) == wasserstein_pp(s, mu, nu, 2.0));

  Measure other;
  other.w = {0.5, 0.5};
  CHECK(code_of([&] { wasserstein_pp(s, mu, other, 1.0); }) ==
        ErrorCode::kSupportMismatch);
  CHECK(code_of([&] { wasserstein_pp(s, mu, nu, 0.5); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("tree plan settles locally and ties break by label") {
  Srt s = pair_plus_one();
  Measure mu = dirac_measure(s, "a");
  Measure nu = make_measure(s, {{"b", 0.5}, {"c", 0.5}});

  TransportPlan plan = tree_optimal_plan(s, mu, nu, 1.0);
  REQUIRE(plan.entries.size() == 2);
  CHECK(plan.entries[0].src == 0);
  CHECK(plan.entries[0].dst == 1);
  CHECK(plan.entries[0].mass == 0.5);
  CHECK(plan.entries[1].src == 0);
  CHECK(plan.entries[1].dst == 2);
  CHECK(plan.entries[1].mass == 0.5);
  CHECK(plan.cost_pp == 0.75);
  CHECK(tree_optimal_plan(s, mu, nu, 2.0).cost_pp == 0.625);

  auto [row, col] = plan_marginals(plan, s.num_leaves());
  CHECK(row == mu.w);
  CHECK(col == nu.w);

  // Two equal exporters and two equal importers on a star pair up in
  // label order.
  Srt st = star4();
  Measure m1 = make_measure(st, {{"a", 0.5}, {"b", 0.5}});
  Measure m2 = make_measure(st, {{"c", 0.5}, {"d", 0.5}});
  TransportPlan tie = tree_optimal_plan(st, m1, m2, 1.0);
  REQUIRE(tie.entries.size() == 2);
  CHECK(tie.entries[0].src == 0);
  CHECK(tie.entries[0].dst == 2);
  CHECK(tie.entries[0].mass == 0.5);
  CHECK(tie.entries[1].src == 1);
  CHECK(tie.entries[1].dst == 3);
  CHECK(tie.entries[1].mass == 0.5);
  CHECK(tie.cost_pp == 1.0);
}

TEST_CASE("plan keeps shared mass in place") {
  Srt st = star4();
  Measure m1 = make_measure(st, {{"a", 0.5}, {"b", 0.25}, {"c", 0.25}});
  Measure m2 = make_measure(st, {{"a", 0.25}, {"b", 0.25}, {"d", 0.5}});
  TransportPlan plan = tree_optimal_plan(st, m1, m2, 2.0);
  auto [row, col] = plan_marginals(plan, 4);
  CHECK(row == m1.w);
  CHECK(col == m2.w);
  // Only the a and c surplus moves, both to d at distance one.
  CHECK(plan.cost_pp == 0.5);
  CHECK(plan.cost_pp == wasserstein_pp(st, m1, m2, 2.0));

  Measure short_one;
  short_one.w = {0.25, 0.25, 0.0, 0.0};
  CHECK(code_of([&] { tree_optimal_plan(st, m1, short_one, 1.0); }) ==
        ErrorCode::kStructure);

  TransportPlan stray;
  stray.entries.push_back({5, 0, 1.0});
  CHECK(code_of([&] { plan_marginals(stray, 4); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("embedding turns transport cost into l1 distance") {
  Srt s = pair_plus_one();
  Measure mu = dirac_measure(s, "a");
  Measure nu = make_measure(s, {{"b", 0.5}, {"c", 0.5}});

  L1Embedding ea = embed_l1(s, mu, 1.0);
  CHECK(ea.size() == s.num_vertices() - 1);
  CHECK(ea.vertex == std::vector<int>{1, 2, 3, 4});
  CHECK(ea.weight == std::vector<double>{0.25, 0.25, 0.25, 0.5});
  CHECK(ea.coord == std::vector<double>{0.25, 0.25, 0.0, 0.0});

  L1Embedding eb = embed_l1(s, nu, 1.0);
  CHECK(l1_distance(ea, eb) == 0.75);
  for (double p : {1.0, 2.0, 3.0}) {
    CHECK(std::abs(l1_distance(embed_l1(s, mu, p), embed_l1(s, nu, p)) -
                   wasserstein_pp(s, mu, nu, p)) <= 1e-12);
  }

  // The embedding is affine in the measure.
  for (double t : {0.25, 0.5}) {
    L1Embedding em = embed_l1(s, mix_measures(mu, nu, t), 2.0);
    L1Embedding e1 = embed_l1(s, mu, 2.0);
    L1Embedding e2 = embed_l1(s, nu, 2.0);
    for (int i = 0; i < em.size(); ++i) {
      CHECK(std::abs(em.coord[i] -
                     (t * e1.coord[i] + (1.0 - t) * e2.coord[i])) <= 1e-12);
    }
  }

  Srt tiny = make_srt({-1, 0, 0}, {0.5, 0.0, 0.0}, {"", "a", "b"});
  L1Embedding et = embed_l1(tiny, uniform_measure(tiny), 1.0);
  CHECK(code_of([&] { l1_distance(ea, et); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("ball_masses accumulates up the tree") {
  Srt s = pair_plus_one();
  Measure nu = make_measure(s, {{"b", 0.5}, {"c", 0.5}});
  std::vector<double> mass = ball_masses(s, nu);
  CHECK(mass == std::vector<double>{1.0, 0.5, 0.0, 0.5, 0.5});
}
