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

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dimension.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace uot {

RandomInstance random_instance(uint64_t seed, int index) {
  Rng master(seed, 0x1157);
  uint64_t base = 4ULL * static_cast<uint64_t>(index);
  int leaves = 4 + static_cast<int>(master.at(base) % 9);
  RandomInstance out;
  out.tree = random_ultrametric(master.at(base + 1), leaves);
  out.mu = random_measure(out.tree, master.at(base + 2));
  out.nu = random_measure(out.tree, master.at(base + 3));
  return out;
}

Report experiment_lemma_eq2(int instances, uint64_t seed) {
  if (instances < 1) fail(ErrorCode::kInvalidArgument, "need at least one instance");
  Report rep;
  rep.put("suite", "lemma-eq2");
  rep.put("instances", instances);
  rep.put("seed", static_cast<long long>(seed));
  int checks = 0;
  int mismatches = 0;
  double max_err = 0.0;
  for (int i = 0; i < instances; ++i) {
    RandomInstance inst = random_instance(seed, i);
    DistanceMatrix m = matrix_from_srt(inst.tree);
    for (double p : {1.0, 2.0, 3.0}) {
      double w = wasserstein_pp(inst.tree, inst.mu, inst.nu, p);
      double o = oracle_cost(m, inst.mu.w, inst.nu.w, p).cost_pp;
      double err = std::abs(w - o);
      max_err = std::max(max_err, err);
      if (err > 1e-8 * std::max(1.0, o)) ++mismatches;
      ++checks;
    }
  }
  rep.put("checks", checks);
  rep.put("mismatches", mismatches);
  rep.put("max_abs_err", max_err);
  rep.failed = mismatches > 0;
  return rep;
}

Report experiment_embedding_isometry(int instances, uint64_t seed) {
  if (instances < 1) fail(ErrorCode::kInvalidArgument, "need at least one instance");
  Report rep;
  rep.put("suite", "embedding-isometry");
  rep.put("instances", instances);
  rep.put("seed", static_cast<long long>(seed));

  std::vector<RandomInstance> cache;
  cache.reserve(static_cast<std::size_t>(instances));
  for (int i = 0; i < instances; ++i) cache.push_back(random_instance(seed, i));

  double iso_err = 0.0;
  double aff_err = 0.0;
  double dirac_err = 0.0;
  Rng picks(seed, 0xD14C);
  for (int i = 0; i < instances; ++i) {
    const RandomInstance& inst = cache[static_cast<std::size_t>(i)];
    int n = inst.tree.num_leaves();
    int a = static_cast<int>(picks.below(static_cast<uint64_t>(n)));
    int b = static_cast<int>(picks.below(static_cast<uint64_t>(n)));
    for (double p : {1.0, 2.0, 3.0}) {
      L1Embedding fu = embed_l1(inst.tree, inst.mu, p);
      L1Embedding fv = embed_l1(inst.tree, inst.nu, p);
      double w = wasserstein_pp(inst.tree, inst.mu, inst.nu, p);
      iso_err = std::max(iso_err, std::abs(l1_distance(fu, fv) - w));
      for (double t : {0.25, 0.5}) {
        Measure mix = mix_measures(inst.mu, inst.nu, t);
        L1Embedding fm = embed_l1(inst.tree, mix, p);
        for (std::size_t j = 0; j < fm.coord.size(); ++j)
          aff_err = std::max(
              aff_err, std::abs(fm.coord[j] -
                                (t * fu.coord[j] + (1.0 - t) * fv.coord[j])));
      }
      const std::string& la =
          inst.tree.labels[static_cast<std::size_t>(
              inst.tree.leaf_vertex[static_cast<std::size_t>(a)])];
      const std::string& lb =
          inst.tree.labels[static_cast<std::size_t>(
              inst.tree.leaf_vertex[static_cast<std::size_t>(b)])];
      double wd = wasserstein(inst.tree, dirac_measure(inst.tree, la),
                              dirac_measure(inst.tree, lb), p);
      dirac_err = std::max(dirac_err, std::abs(wd - leaf_distance(inst.tree, a, b)));
    }
  }

  long long tri_checks = 0;
  long long tri_violations = 0;
  Rng tri(seed, 0x731);
  uint64_t counter = 0;
  for (double p : {1.0, 2.0, 3.0}) {
    for (int t = 0; t < 500; ++t) {
      const RandomInstance& inst = cache[static_cast<std::size_t>(t % instances)];
      Measure x = random_measure(inst.tree, tri.at(counter++));
      Measure y = random_measure(inst.tree, tri.at(counter++));
      Measure z = random_measure(inst.tree, tri.at(counter++));
      double xz = wasserstein_pp(inst.tree, x, z, p);
      double xy = wasserstein_pp(inst.tree, x, y, p);
      double yz = wasserstein_pp(inst.tree, y, z, p);
      ++tri_checks;
      if (xz > xy + yz + 1e-10) ++tri_violations;
    }
  }

  rep.put("isometry_max_err", iso_err);
  rep.put("affinity_max_err", aff_err);
  rep.put("dirac_max_err", dirac_err);
  rep.put("triangle_checks", tri_checks);
  rep.put("triangle_violations", tri_violations);
  rep.failed = iso_err > 1e-10 || aff_err > 1e-12 || dirac_err > 1e-10 ||
               tri_violations > 0;
  return rep;
}

Report experiment_sec51(int pairs, uint64_t seed) {
  if (pairs < 1) fail(ErrorCode::kInvalidArgument, "need at least one pair");
  const double eps = 0.3;
  const double p = 2.0;
  const int calib_pairs = 10000;
  Srt s = regular_space(2, 2.0, 8);
  CubeLayout layout = cube_vprime(s);
  std::size_t m = layout.vertex.size();
  // per-coordinate floor q^-pn ((1 - (k-1) eps) / k)^n of the transport
  // cost a unit swing at depth n must incur
  std::vector<double> factor(m);
  for (std::size_t i = 0; i < m; ++i) {
    int n = layout.depth[i];
    factor[i] = std::pow(std::pow(2.0, -p), n) *
                std::pow((1.0 - eps) / 2.0, n);
  }

  Rng rng(seed, 0x51);
  auto draw = [&](uint64_t pair_ix, int side) {
    std::vector<double> a(m);
    uint64_t base = (2ULL * pair_ix + static_cast<uint64_t>(side)) * m;
    for (std::size_t j = 0; j < m; ++j)
      a[j] = rng.uniform_at(base + static_cast<uint64_t>(j));
    return a;
  };
  auto rhs = [&](const std::vector<double>& a, const std::vector<double>& b) {
    Kahan sum;
    for (std::size_t j = 0; j < m; ++j) sum.add(factor[j] * std::abs(a[j] - b[j]));
    return sum.value();
  };

  double min_ratio = std::numeric_limits<double>::infinity();
  for (int t = 0; t < calib_pairs; ++t) {
    std::vector<double> a = draw(static_cast<uint64_t>(t), 0);
    std::vector<double> b = draw(static_cast<uint64_t>(t), 1);
    double r = rhs(a, b);
    if (r < 1e-15) continue;
    double w = wasserstein_pp(s, cube_to_measure(s, eps, a),
                              cube_to_measure(s, eps, b), p);
    min_ratio = std::min(min_ratio, w / r);
  }
  double c_star = 0.98 * min_ratio;

  DistanceMatrix dm = matrix_from_srt(s);
  int violations = 0;
  double valid_min_ratio = std::numeric_limits<double>::infinity();
  double oracle_max_rel = 0.0;
  for (int t = 0; t < pairs; ++t) {
    uint64_t ix = static_cast<uint64_t>(calib_pairs + t);
    std::vector<double> a = draw(ix, 0);
    std::vector<double> b = draw(ix, 1);
    Measure ma = cube_to_measure(s, eps, a);
    Measure mb = cube_to_measure(s, eps, b);
    double r = rhs(a, b);
    double oc = oracle_cost(dm, ma.w, mb.w, p, 256).cost_pp;
    double w = wasserstein_pp(s, ma, mb, p);
    oracle_max_rel = std::max(oracle_max_rel,
                              std::abs(oc - w) / std::max(1.0, oc));
    if (r < 1e-15) continue;
    valid_min_ratio = std::min(valid_min_ratio, oc / r);
    if (oc < c_star * r) ++violations;
  }

  Report rep;
  rep.put("suite", "sec51");
  rep.put("seed", static_cast<long long>(seed));
  rep.put("coords", static_cast<long long>(m));
  rep.put("p", p);
  rep.put("eps", eps);
  rep.put("calib_pairs", calib_pairs);
  rep.put("calib_min_ratio", min_ratio);
  rep.put("c_star", c_star);
  rep.put("valid_pairs", pairs);
  rep.put("valid_min_ratio", valid_min_ratio);
  rep.put("violations", violations);
  rep.put("oracle_max_rel_diff", oracle_max_rel);
  rep.failed = violations > 0 || oracle_max_rel > 1e-8;
  return rep;
}

Report experiment_sec5alt(int pairs, uint64_t seed) {
  if (pairs < 1) fail(ErrorCode::kInvalidArgument, "need at least one pair");
  const double p = 2.0;
  const int teeth = 48;
  Srt s = regular_space(2, 2.0, 12);
  Measure base = uniform_measure(s);
  FrostmanSeq seq = greedy_frostman_sequence(s, base, 1.0, 0.9, 0.1, teeth + 1);
  if (static_cast<int>(seq.points.size()) != teeth + 1)
    fail(ErrorCode::kInternal, "greedy sequence ended prematurely");
  std::vector<double> b = comb_weights(teeth, 0.1);

  int np = teeth + 1;
  std::vector<std::string> labels(static_cast<std::size_t>(np));
  for (int i = 0; i < np; ++i)
    labels[static_cast<std::size_t>(i)] =
        s.labels[static_cast<std::size_t>(
            s.leaf_vertex[static_cast<std::size_t>(seq.points[static_cast<std::size_t>(i)])])];
  std::vector<double> dist(static_cast<std::size_t>(np) * np, 0.0);
  for (int i = 0; i < np; ++i)
    for (int j = i + 1; j < np; ++j) {
      double d = leaf_distance(s, seq.points[static_cast<std::size_t>(i)],
                               seq.points[static_cast<std::size_t>(j)]);
      dist[static_cast<std::size_t>(i) * np + j] = d;
      dist[static_cast<std::size_t>(j) * np + i] = d;
    }
  DistanceMatrix dm = make_matrix(labels, dist);

  std::vector<double> tooth_pow(static_cast<std::size_t>(teeth));
  for (int i = 0; i < teeth; ++i)
    tooth_pow[static_cast<std::size_t>(i)] =
        std::pow(seq.radii[static_cast<std::size_t>(i + 1)], p);

  auto measure_of = [&](const std::vector<double>& x) {
    std::vector<double> w(static_cast<std::size_t>(np), 0.0);
    Kahan used;
    for (int i = 0; i < teeth; ++i) {
      double mass = b[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      w[static_cast<std::size_t>(i + 1)] = mass;
      used.add(mass);
    }
    w[0] = 1.0 - used.value();
    return w;
  };

  Rng rng(seed, 0x5A);
  uint64_t counter = 0;
  int same_violations = 0;
  int half_violations = 0;
  double same_min_margin = std::numeric_limits<double>::infinity();
  double half_min_margin = std::numeric_limits<double>::infinity();
  double tree_max_rel = 0.0;
  for (int t = 0; t < pairs; ++t) {
    std::vector<double> x(static_cast<std::size_t>(teeth));
    std::vector<double> y(static_cast<std::size_t>(teeth));
    std::vector<double> z(static_cast<std::size_t>(teeth));
    for (int i = 0; i < teeth; ++i) {
      x[static_cast<std::size_t>(i)] = rng.uniform_at(counter++);
      y[static_cast<std::size_t>(i)] =
          x[static_cast<std::size_t>(i)] * rng.uniform_at(counter++);
      z[static_cast<std::size_t>(i)] = rng.uniform_at(counter++);
    }
    // surplus-shift pair: every tooth of y lost mass, so the bound is full
    Kahan rs;
    for (int i = 0; i < teeth; ++i)
      rs.add(b[static_cast<std::size_t>(i)] *
             (x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)]) *
             tooth_pow[static_cast<std::size_t>(i)]);
    std::vector<double> wx = measure_of(x);
    std::vector<double> wy = measure_of(y);
    double oc = oracle_cost(dm, wx, wy, p).cost_pp;
    if (rs.value() > 1e-15) {
      same_min_margin = std::min(same_min_margin, oc / rs.value());
      if (oc < rs.value() * (1.0 - 1e-9)) ++same_violations;
    }
    // cross-check the support-space oracle against the full-tree formula
    Measure fx, fy;
    fx.w.assign(static_cast<std::size_t>(s.num_leaves()), 0.0);
    fy.w.assign(static_cast<std::size_t>(s.num_leaves()), 0.0);
    for (int i = 0; i < np; ++i) {
      fx.w[static_cast<std::size_t>(seq.points[static_cast<std::size_t>(i)])] =
          wx[static_cast<std::size_t>(i)];
      fy.w[static_cast<std::size_t>(seq.points[static_cast<std::size_t>(i)])] =
          wy[static_cast<std::size_t>(i)];
    }
    double w = wasserstein_pp(s, fx, fy, p);
    tree_max_rel = std::max(tree_max_rel, std::abs(oc - w) / std::max(1.0, oc));
    // independent pair: teeth can both gain and lose, half the bound holds
    Kahan rh;
    for (int i = 0; i < teeth; ++i)
      rh.add(b[static_cast<std::size_t>(i)] *
             std::abs(x[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(i)]) *
             tooth_pow[static_cast<std::size_t>(i)]);
    std::vector<double> wz = measure_of(z);
    double oc2 = oracle_cost(dm, wx, wz, p).cost_pp;
    if (rh.value() > 1e-15) {
      half_min_margin = std::min(half_min_margin, oc2 / (0.5 * rh.value()));
      if (oc2 < 0.5 * rh.value() * (1.0 - 1e-9)) ++half_violations;
    }
  }

  Report rep;
  rep.put("suite", "sec5alt");
  rep.put("seed", static_cast<long long>(seed));
  rep.put("teeth", teeth);
  rep.put("p", p);
  rep.put("pairs", pairs);
  rep.put("surplus_violations", same_violations);
  rep.put("surplus_min_margin", same_min_margin);
  rep.put("half_violations", half_violations);
  rep.put("half_min_margin", half_min_margin);
  rep.put("tree_vs_oracle_max_rel", tree_max_rel);
  rep.failed = same_violations > 0 || half_violations > 0 || tree_max_rel > 1e-8;
  return rep;
}

Report experiment_sec61() {
  Srt s = smallparts_space();
  std::vector<double> eps16;
  for (int n = 1; n <= 16; ++n) eps16.push_back(std::ldexp(1.0, -n));
  CoveringCurve full = covering_curve(s, eps16);
  bool counts_ok = true;
  for (int n = 1; n <= 16; ++n)
    if (full.count[static_cast<std::size_t>(n - 1)] != (1LL << n)) counts_ok = false;
  double slope_full = minkowski_slope(full, 0, 15);

  int target = -1;
  for (int e = s.child_off[s.root]; e < s.child_off[s.root + 1]; ++e) {
    int c = s.child[static_cast<std::size_t>(e)];
    if (s.height[static_cast<std::size_t>(c)] == 0.5) target = c;
  }
  if (target < 0) fail(ErrorCode::kInternal, "no height-1/2 child under the root");
  Srt rem = prune_ball(s, target);

  std::vector<double> eps32;
  for (int n = 1; n <= 32; ++n) eps32.push_back(std::ldexp(1.0, -n));
  CoveringCurve remc = covering_curve(rem, eps32);
  const long long expect[11] = {1, 1, 5, 5, 5, 5, 69, 197, 453, 965, 1989};
  bool rem_counts_ok = true;
  for (int n = 1; n <= 11; ++n)
    if (remc.count[static_cast<std::size_t>(n - 1)] != expect[n - 1])
      rem_counts_ok = false;
  double slope_rem_16 = minkowski_slope(remc, 0, 15);
  double slope_rem_32 = minkowski_slope(remc, 0, 31);

  Report rep;
  rep.put("suite", "sec61");
  rep.put("vertices", static_cast<long long>(s.num_vertices()));
  rep.put("leaves", static_cast<long long>(s.num_leaves()));
  rep.put("counts_pow2_ok", counts_ok);
  rep.put("slope_full", slope_full);
  rep.put("remainder_leaves", static_cast<long long>(rem.num_leaves()));
  rep.put("remainder_counts_ok", rem_counts_ok);
  rep.put("slope_remainder_16", slope_rem_16);
  rep.put("slope_remainder_32", slope_rem_32);
  rep.failed = !counts_ok || !rem_counts_ok ||
               std::abs(slope_full - 1.0) > 0.05 || !(slope_rem_32 < 0.6);
  return rep;
}

Report experiment_sec62(int pairs, uint64_t seed) {
  if (pairs < 1) fail(ErrorCode::kInvalidArgument, "need at least one pair");
  const int n = 2000;
  CountableExample ce = countable_example(n);
  bool exact_ok = !check_ultrametric(ce.matrix, 0.0).has_value();
  DistanceMatrix mm = matrix_from_srt(ce.tree);
  bool tree_match = mm.labels == ce.matrix.labels && mm.dist == ce.matrix.dist;

  // leaf ordinal of each tooth w1..wn
  std::vector<int> ord(static_cast<std::size_t>(n) + 1, -1);
  for (int i = 1; i <= n; ++i) {
    auto it = ce.tree.leaf_by_label.find("w" + std::to_string(i));
    if (it == ce.tree.leaf_by_label.end())
      fail(ErrorCode::kInternal, "missing tooth label");
    ord[static_cast<std::size_t>(i)] = it->second;
  }
  std::vector<double> tooth(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i)
    tooth[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::log(static_cast<double>(i)));

  Rng rng(seed, 0x62);
  uint64_t counter = 0;
  int violations = 0;
  int half_violations = 0;
  double equality_gap = 0.0;
  double single_gap = 0.0;
  for (double p : {1.0, 2.0}) {
    for (int t = 0; t < pairs; ++t) {
      Measure mu = random_measure(ce.tree, rng.at(counter++));
      Measure nu = mu;
      // shift a random share of every tooth onto the accumulation stand-in
      Kahan moved;
      for (int i = 1; i <= n - 1; ++i) {
        std::size_t o = static_cast<std::size_t>(ord[static_cast<std::size_t>(i)]);
        double delta = mu.w[o] * rng.uniform_at(counter++);
        nu.w[o] -= delta;
        moved.add(delta);
      }
      nu.w[static_cast<std::size_t>(ord[static_cast<std::size_t>(n)])] += moved.value();
      Kahan rs;
      for (int i = 1; i <= n - 1; ++i) {
        std::size_t o = static_cast<std::size_t>(ord[static_cast<std::size_t>(i)]);
        rs.add(std::pow(tooth[static_cast<std::size_t>(i)], p) *
               std::abs(mu.w[o] - nu.w[o]));
      }
      double lhs = wasserstein_pp(ce.tree, mu, nu, p);
      if (lhs < rs.value() - 1e-10) ++violations;
      equality_gap = std::max(equality_gap, std::abs(lhs - rs.value()));

      // independent pair, half bound
      Measure xi = random_measure(ce.tree, rng.at(counter++));
      Kahan rh;
      for (int i = 1; i <= n - 1; ++i) {
        std::size_t o = static_cast<std::size_t>(ord[static_cast<std::size_t>(i)]);
        rh.add(std::pow(tooth[static_cast<std::size_t>(i)], p) *
               std::abs(mu.w[o] - xi.w[o]));
      }
      if (wasserstein_pp(ce.tree, mu, xi, p) < 0.5 * rh.value() - 1e-10)
        ++half_violations;
    }
    for (int i : {1, 2, 77, n - 1}) {
      Measure mu = uniform_measure(ce.tree);
      Measure nu = mu;
      std::size_t o = static_cast<std::size_t>(ord[static_cast<std::size_t>(i)]);
      double delta = mu.w[o] / 2.0;
      nu.w[o] -= delta;
      nu.w[static_cast<std::size_t>(ord[static_cast<std::size_t>(n)])] += delta;
      double lhs = wasserstein_pp(ce.tree, mu, nu, p);
      double rhs = std::pow(tooth[static_cast<std::size_t>(i)], p) * delta;
      single_gap = std::max(single_gap, std::abs(lhs - rhs));
    }
  }

  Report rep;
  rep.put("suite", "sec62");
  rep.put("seed", static_cast<long long>(seed));
  rep.put("points", n);
  rep.put("exact_ultrametric", exact_ok);
  rep.put("tree_matrix_match", tree_match);
  rep.put("pairs", pairs);
  rep.put("violations", violations);
  rep.put("equality_gap_max", equality_gap);
  rep.put("single_tooth_gap_max", single_gap);
  rep.put("half_violations", half_violations);
  rep.failed = !exact_ok || !tree_match || violations > 0 ||
               half_violations > 0 || single_gap > 1e-10;
  return rep;
}

}  // namespace uot
