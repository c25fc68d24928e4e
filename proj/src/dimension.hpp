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

#ifndef ULTRAOT_DIMENSION_HPP
#define ULTRAOT_DIMENSION_HPP

#include <cstdint>
#include <vector>

#include "ultra_core.hpp"

namespace uot {

// Covering numbers N(eps) over a descending scale list. Counts live in
// log space so product-form covers far past long long still fit; count
// is -1 where the exact integer overflows. exact marks counts that are
// the true block numbers rather than a greedy upper estimate.
struct CoveringCurve {
  std::vector<double> eps;
  std::vector<long long> count;
  std::vector<double> log_count;
  bool exact = true;

  int size() const { return static_cast<int>(eps.size()); }
};

CoveringCurve covering_curve(const Srt& s, const std::vector<double>& eps);
CoveringCurve covering_curve_matrix(const DistanceMatrix& m,
                                    const std::vector<double>& eps);

// Least-squares slope of log N against log(1/eps) over the inclusive
// sample window [lo, hi]. Estimates the box dimension.
double minkowski_slope(const CoveringCurve& curve, int lo, int hi,
                       double* r2 = nullptr);

// Least-squares slope of log log N against log(1/eps), the growth
// exponent of covers whose size is exponential in a power of 1/eps.
// degenerate is set when log N itself is already essentially linear in
// log(1/eps) (polynomial growth), where this exponent carries no signal.
double crit_slope(const CoveringCurve& curve, int lo, int hi,
                  bool* degenerate = nullptr, double* r2 = nullptr);

// Box cover of the product of intervals [0, n^-alpha]: the sequence is
// truncated at the first l whose tail sum drops to eps/2, and axis n is
// split into ceil(n^-alpha chat n (1 + ln n)^2 / eps + 1) cells. chat
// must be large enough that the per-axis accuracies sum to at most
// eps/2, which is checked numerically.
struct BanachCover {
  int l = 0;
  double log_count = 0;
  long long count = -1;  // exact product when it fits
};

BanachCover banach_cube_cover_count(double alpha, double chat, double eps);

CoveringCurve banach_cube_curve(double alpha, double chat,
                                const std::vector<double>& eps);

// Monte-Carlo mass of the ball of radius r around x under the uniform
// product measure on the first l axes of the cube (x empty means the
// corner at zero). Sample i, axis n draws counter i * l + n, so shard
// boundaries cannot change the estimate. Errors out when no sample hits.
struct MassEstimate {
  double p = 0;
  double log_mass = 0;
  double ci_log = 0;  // 1.96 sigma via the delta method
  long long hits = 0;
  long long samples = 0;
};

MassEstimate banach_cube_ball_mass(double alpha, int l,
                                   const std::vector<double>& x, double r,
                                   long long samples, uint64_t seed);

}  // namespace uot

#endif  // ULTRAOT_DIMENSION_HPP
