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

// Release gate: eleven end-to-end criteria, one pass/fail line each. The
// exit code is the number of failed criteria. Seeds, tolerances and
// instance counts are pinned so every run checks the same statements.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "dimension.hpp"
#include "experiments.hpp"
#include "generators.hpp"
#include "numeric.hpp"
#include "transport.hpp"
#include "ultra_core.hpp"

namespace {

using Result = std::pair<bool, std::string>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

std::string num(double x) { return uot::fmt_double(x); }

// Criteria 2 and 3 read different gates off the same suite run.
const uot::Report& isometry_report() {
  static uot::Report rep = uot::experiment_embedding_isometry(200, 7);
  return rep;
}

Result c1_oracle_equivalence() {
  Clock::time_point t0 = Clock::now();
  uot::Report rep = uot::experiment_lemma_eq2(200, 7);
  double elapsed = seconds_since(t0);
  bool ok = !rep.failed && elapsed < 30.0;
  return {ok, "closed form vs oracle on 200 spaces, p in {1,2,3}: "
              "mismatches=" + num(rep.number("mismatches")) +
              ", max_abs_err=" + num(rep.number("max_abs_err")) + ", " +
              secs(elapsed)};
}

Result c2_isometry_affinity() {
  const uot::Report& rep = isometry_report();
  double iso = rep.number("isometry_max_err");
  double aff = rep.number("affinity_max_err");
  double dirac = rep.number("dirac_max_err");
  bool ok = !rep.failed && iso <= 1e-10 && aff <= 1e-12 && dirac <= 1e-10;
  return {ok, "l1 embedding on 200 spaces: isometry_err=" + num(iso) +
              ", affinity_err=" + num(aff) + ", dirac_err=" + num(dirac)};
}

Result c3_triangle() {
  const uot::Report& rep = isometry_report();
  double checks = rep.number("triangle_checks");
  double bad = rep.number("triangle_violations");
  return {bad == 0.0, "p-power triangle inequality: " + num(checks) +
                      " triples, violations=" + num(bad)};
}

Result c4_edge_flows() {
  double max_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    uot::RandomInstance inst = uot::random_instance(7, i);
    const uot::Srt& s = inst.tree;
    std::vector<double> bm = uot::ball_masses(s, inst.mu);
    std::vector<double> bn = uot::ball_masses(s, inst.nu);
    for (double p : {1.0, 2.0}) {
      uot::TransportPlan plan = uot::tree_optimal_plan(s, inst.mu, inst.nu, p);
      double gap =
          std::fabs(plan.cost_pp - uot::wasserstein_pp(s, inst.mu, inst.nu, p));
      max_gap = std::max(max_gap, gap);
      if (gap > 1e-10)
        return {false, "cost gap " + num(gap) + " on instance " +
                       std::to_string(i)};
      for (int v = 0; v < s.num_vertices(); ++v) {
        if (v == s.root) continue;
        double flow = 0.0;
        for (const uot::PlanEntry& e : plan.entries) {
          bool src_in = s.range_lo[v] <= e.src && e.src < s.range_hi[v];
          bool dst_in = s.range_lo[v] <= e.dst && e.dst < s.range_hi[v];
          if (src_in != dst_in) flow += e.mass;
        }
        // Everything lives on the 2^-30 grid, so compare in grid units.
        long long want = std::llabs(std::llround(bm[v] * 1073741824.0) -
                                    std::llround(bn[v] * 1073741824.0));
        if (std::llround(flow * 1073741824.0) != want)
          return {false, "edge flow off at vertex " + std::to_string(v) +
                         " of instance " + std::to_string(i)};
      }
    }
  }
  return {true, "100 instances, p in {1,2}: per-edge flows exact, "
                "max cost gap=" + num(max_gap)};
}

Result c5_quantization() {
  long long pairs = 0;
  for (int i = 0; i < 50; ++i) {
    uot::Srt s = uot::random_ultrametric(1000 + static_cast<uint64_t>(i),
                                         4 + i % 9);
    int n = s.num_leaves();
    for (double q : {1.5, 2.0, 3.0}) {
      uot::Srt t = uot::quantize_heights(s, q);
      std::vector<int> to_t(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) {
        const std::string& label =
            s.labels[static_cast<std::size_t>(
                s.leaf_vertex[static_cast<std::size_t>(a)])];
        to_t[static_cast<std::size_t>(a)] = t.leaf_by_label.at(label);
      }
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          double d = uot::leaf_distance(s, a, b);
          double dq = uot::leaf_distance(t, to_t[static_cast<std::size_t>(a)],
                                         to_t[static_cast<std::size_t>(b)]);
          ++pairs;
          if (!(d <= dq && dq < q * d))
            return {false, "pair outside [d, q d) at tree " +
                           std::to_string(i) + ", q=" + num(q)};
        }
      }
    }
  }
  return {true, "50 trees, q in {1.5,2,3}: d <= d' < q d on " +
                std::to_string(pairs) + " leaf pairs"};
}

Result c6_regrouping() {
  double worst_expansion = -1.0;
  for (int i = 0; i < 20; ++i) {
    uot::FrostmanInstance inst = uot::random_frostman_instance(
        100 + static_cast<uint64_t>(i), 4.0, 1.5, 1.0, 5);
    uot::RegroupResult res = uot::regroup(inst.tree, inst.mu, 4.0, 1.5, 1.0, 5);
    if (res.first_failure_level != 0)
      return {false, "mass window broken at level " +
                     std::to_string(res.first_failure_level) +
                     " of instance " + std::to_string(i)};
    if (!res.child_bound_ok)
      return {false, "children below ceil(q^sp / 3) on instance " +
                     std::to_string(i)};
    if (!res.precondition_ok)
      return {false, "q^sp > 2c precondition broken on instance " +
                     std::to_string(i)};
    double expansion = uot::regroup_expansion(inst.tree, res.tree);
    worst_expansion = std::max(worst_expansion, expansion);
    if (expansion > 0.0)
      return {false, "identity map expands a distance on instance " +
                     std::to_string(i)};
  }
  return {true, "20 instances regrouped to depth 5: windows and child "
                "bounds hold, max expansion=" + num(worst_expansion)};
}

Result c7_fast_branching() {
  uot::Report rep = uot::experiment_sec61();
  return {!rep.failed, "N(2^-n)=2^n with slope " +
                       num(rep.number("slope_full")) +
                       "; deleted-ball remainder slope " +
                       num(rep.number("slope_remainder_32"))};
}

Result c8_comb_space() {
  uot::Report rep = uot::experiment_sec62(100, 7);
  return {!rep.failed, num(rep.number("points")) +
                       " points exactly ultrametric; per-tooth bound "
                       "violations=" + num(rep.number("violations")) +
                       ", equality gap=" +
                       num(rep.number("equality_gap_max"))};
}

Result c9_banach_slope() {
  Clock::time_point t0 = Clock::now();
  std::vector<double> scales;
  for (int n = 4; n <= 14; ++n) scales.push_back(std::ldexp(1.0, -n));
  std::string detail;
  bool ok = true;
  for (double alpha : {2.0, 3.0}) {
    uot::CoveringCurve curve = uot::banach_cube_curve(alpha, 4.3, scales);
    double slope = uot::crit_slope(curve, 0, curve.size() - 1);
    double want = 1.0 / (alpha - 1.0);
    ok = ok && std::fabs(slope - want) <= 0.1;
    detail += "alpha=" + num(alpha) + ": slope=" + num(slope) + " vs " +
              num(want) + ", ";
  }
  double elapsed = seconds_since(t0);
  ok = ok && elapsed < 10.0;
  return {ok, detail + secs(elapsed)};
}

Result c10_greedy_sequence() {
  uot::Srt s = uot::regular_space(2, 2.0, 12);
  uot::Measure mu = uot::uniform_measure(s);
  uot::FrostmanSeq seq = uot::greedy_frostman_sequence(s, mu, 1.0, 0.9, 0.1);
  int len = static_cast<int>(seq.points.size());
  if (len < 100)
    return {false, "sequence stopped at " + std::to_string(len) + " points"};
  double margin = s.diameter();
  for (int i = 0; i < len; ++i) {
    for (int j = i + 1; j < len; ++j) {
      double d = uot::leaf_distance(s, seq.points[static_cast<std::size_t>(i)],
                                    seq.points[static_cast<std::size_t>(j)]);
      double r = seq.radii[static_cast<std::size_t>(i)];
      margin = std::min(margin, d - r);
      if (d < r)
        return {false, "separation broken at pair (" + std::to_string(i) +
                       ", " + std::to_string(j) + ")"};
    }
  }
  return {true, std::to_string(len) +
                " points with d(q_i, q_j) >= r_i, min margin=" + num(margin)};
}

Result c11_lower_bounds() {
  uot::Report spread = uot::experiment_sec51(100, 7);
  uot::Report comb = uot::experiment_sec5alt(100, 7);
  bool ok = !spread.failed && !comb.failed;
  return {ok, "spread bound: violations=" + num(spread.number("violations")) +
              " at C*=" + num(spread.number("c_star")) +
              "; comb bound: violations=" +
              num(comb.number("surplus_violations")) + "+" +
              num(comb.number("half_violations"))};
}

int run(int n, Result (*fn)()) {
  Result r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  std::printf("criterion %d: %s (%s)\n", n, r.first ? "PASS" : "FAIL",
              r.second.c_str());
  std::fflush(stdout);
  return r.first ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  failures += run(1, c1_oracle_equivalence);
  failures += run(2, c2_isometry_affinity);
  failures += run(3, c3_triangle);
  failures += run(4, c4_edge_flows);
  failures += run(5, c5_quantization);
  failures += run(6, c6_regrouping);
  failures += run(7, c7_fast_branching);
  failures += run(8, c8_comb_space);
  failures += run(9, c9_banach_slope);
  failures += run(10, c10_greedy_sequence);
  failures += run(11, c11_lower_bounds);
  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures;
}
