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
#include <limits>
#include <optional>
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "generators.hpp"
#include "oracle.hpp"
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

// Exact optimum for a 3 by 3 transportation problem by enumerating the
// basic solutions: every vertex of the feasible polytope is the flow on
// some spanning tree of the bipartite supply/demand graph, so the best
// nonnegative tree solution is the minimum.  Flows come from peeling
// degree-one nodes, which only subtracts, so dyadic inputs stay exact.
double brute3(const DistanceMatrix& m, const std::vector<double>& mu,
              const std::vector<double>& nu, double p) {
  double best = std::numeric_limits<double>::infinity();
  for (int pick = 0; pick < (1 << 9); ++pick) {
    if (__builtin_popcount(pick) != 5) continue;

    int dsu[6] = {0, 1, 2, 3, 4, 5};
    auto find = [&](int x) {
      while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
      return x;
    };
    bool tree = true;
    for (int e = 0; e < 9 && tree; ++e) {
      if (!(pick >> e & 1)) continue;
      int a = find(e / 3), b = find(3 + e % 3);
      if (a == b)
        tree = false;
      else
        dsu[a] = b;
    }
    if (!tree) continue;

    double need[6] = {mu[0], mu[1], mu[2], nu[0], nu[1], nu[2]};
    int deg[6] = {0};
    int open = pick;
    for (int e = 0; e < 9; ++e) {
      if (!(pick >> e & 1)) continue;
      ++deg[e / 3];
      ++deg[3 + e % 3];
    }
    double flow[9] = {0};
    for (int step = 0; step < 5; ++step) {
      int leaf = -1;
      for (int x = 0; x < 6 && leaf == -1; ++x)
        if (deg[x] == 1) leaf = x;
      int edge = -1;
      for (int e = 0; e < 9 && edge == -1; ++e)
        if ((open >> e & 1) && (e / 3 == leaf || 3 + e % 3 == leaf)) edge = e;
      flow[edge] = need[leaf];
      const int other = (edge / 3 == leaf) ? 3 + edge % 3 : edge / 3;
      need[other] -= need[leaf];
      need[leaf] = 0.0;
      open &= ~(1 << edge);
      --deg[leaf];
      --deg[other];
    }

    bool feasible = true;
    double cost = 0.0;
    for (int e = 0; e < 9; ++e) {
      if (flow[e] < 0.0) feasible = false;
      cost += flow[e] * pow_p(m.at(e / 3, e % 3), p);
    }
    if (feasible) best = std::min(best, cost);
  }
  return best;
}

}  // namespace

TEST_CASE("solver matches basic-solution enumeration on random triples") {
  for (int t = 0; t < 30; ++t) {
    Srt s = random_ultrametric(0xACE0 + t, 3);
    DistanceMatrix m = matrix_from_srt(s);
    Measure mu = random_measure(s, 7000 + t);
    Measure nu = random_measure(s, 9000 + t);
    for (double p : {1.0, 2.0, 3.0}) {
      OracleResult got = oracle_cost(m, mu.w, nu.w, p);
      double want = brute3(m, mu.w, nu.w, p);
      CHECK(std::abs(got.cost_pp - want) <= 1e-12 * std::max(1.0, want));
      CHECK(std::abs(got.cost_pp - wasserstein_pp(s, mu, nu, p)) <=
            1e-8 * std::max(1.0, got.cost_pp));
    }
  }
}

TEST_CASE("solver needs no triangle inequality") {
  DistanceMatrix m = make_matrix(
      {"a", "b", "c"}, {0.0, 2.0, 0.125, 2.0, 0.0, 0.875, 0.125, 0.875, 0.0});
  std::vector<double> mu = {1.0, 0.0, 0.0};
  std::vector<double> nu = {0.0, 0.5, 0.5};
  for (double p : {1.0, 2.0, 3.0}) {
    OracleResult got = oracle_cost(m, mu, nu, p);
    double want = brute3(m, mu, nu, p);
    CHECK(std::abs(got.cost_pp - want) <= 1e-12 * std::max(1.0, want));
  }
  CHECK(oracle_cost(m, mu, nu, 1.0).cost_pp == doctest::Approx(1.0625));

  DistanceMatrix skew = make_matrix(
      {"a", "b", "c"}, {0.0, 0.25, 3.0, 0.25, 0.0, 0.75, 3.0, 0.75, 0.0});
  std::vector<double> m1 = {0.5, 0.25, 0.25};
  std::vector<double> m2 = {0.25, 0.5, 0.25};
  for (double p : {1.0, 2.0}) {
    CHECK(std::abs(oracle_cost(skew, m1, m2, p).cost_pp -
                   brute3(skew, m1, m2, p)) <= 1e-12);
  }
}

TEST_CASE("cost falls as p grows when no distance exceeds one") {
  for (int t = 0; t < 10; ++t) {
    Srt s = random_ultrametric(0xBEE0 + t, 6);
    DistanceMatrix m = matrix_from_srt(s);
    REQUIRE(matrix_diameter(m) <= 1.0);
    Measure mu = random_measure(s, 100 + t);
    Measure nu = random_measure(s, 200 + t);
    double c1 = oracle_cost(m, mu.w, nu.w, 1.0).cost_pp;
    double c2 = oracle_cost(m, mu.w, nu.w, 2.0).cost_pp;
    double c3 = oracle_cost(m, mu.w, nu.w, 3.0).cost_pp;
    CHECK(c1 >= c2 - 1e-12);
    CHECK(c2 >= c3 - 1e-12);
  }
}

TEST_CASE("solver plan is a coupling with the reported cost") {
  Srt s = random_ultrametric(0xFEED, 8);
  DistanceMatrix m = matrix_from_srt(s);
  Measure mu = random_measure(s, 31);
  Measure nu = random_measure(s, 32);
  OracleResult got = oracle_cost(m, mu.w, nu.w, 2.0);
  auto [row, col] = plan_marginals(got.plan, m.size());
  for (int i = 0; i < m.size(); ++i) {
    CHECK(std::abs(row[i] - mu.w[i]) <= 1e-12);
    CHECK(std::abs(col[i] - nu.w[i]) <= 1e-12);
  }
  double cost = 0.0;
  for (const auto& e : got.plan.entries) {
    CHECK(e.mass > 0.0);
    cost += e.mass * pow_p(m.at(e.src, e.dst), 2.0);
  }
  CHECK(std::abs(cost - got.cost_pp) <= 1e-12 * std::max(1.0, cost));
}

TEST_CASE("solver rejects bad input") {
  Srt s = random_ultrametric(5, 5);
  DistanceMatrix m = matrix_from_srt(s);
  std::vector<double> u(5, 0.2);
  std::vector<double> zero(5, 0.0);

  CHECK(code_of([&] { oracle_cost(m, u, u, 1.0, 4); }) ==
        ErrorCode::kCapExceeded);
  CHECK(!code_of([&] { oracle_cost(m, u, u, 1.0, 5); }));
  CHECK(oracle_cost(m, u, u, 1.0).cost_pp == 0.0);

  CHECK(code_of([&] { oracle_cost(m, zero, u, 1.0); }) ==
        ErrorCode::kStructure);
  CHECK(oracle_cost(m, zero, zero, 1.0).cost_pp == 0.0);

  std::vector<double> neg = {-0.2, 0.4, 0.2, 0.2, 0.4};
  CHECK(code_of([&] { oracle_cost(m, neg, u, 1.0); }) ==
        ErrorCode::kStructure);

  std::vector<double> half(5, 0.1);
  CHECK(code_of([&] { oracle_cost(m, u, half, 1.0); }) ==
        ErrorCode::kStructure);

  std::vector<double> four(4, 0.25);
  CHECK(code_of([&] { oracle_cost(m, four, u, 1.0); }) ==
        ErrorCode::kSupportMismatch);
  CHECK(code_of([&] { oracle_cost(m, u, u, 0.5); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { oracle_cost(m, u, u, 1.0, 0); }) ==
        ErrorCode::kInvalidArgument);
}
