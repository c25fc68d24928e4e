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

#include "dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"
#include "rng.hpp"

namespace uot {

namespace {

void check_scales(const std::vector<double>& eps) {
  if (eps.empty()) fail(ErrorCode::kInvalidArgument, "empty scale list");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0))
      fail(ErrorCode::kInvalidArgument, "scales must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1]))
      fail(ErrorCode::kInvalidArgument, "scales must be strictly descending");
  }
}

void check_window(const CoveringCurve& curve, int lo, int hi) {
  if (lo < 0 || hi >= curve.size() || hi - lo < 1)
    fail(ErrorCode::kInvalidArgument, "slope window needs at least two samples");
}

}  // namespace

CoveringCurve covering_curve(const Srt& s, const std::vector<double>& eps) {
  check_scales(eps);
  CoveringCurve out;
  out.eps = eps;
  out.exact = true;
  for (double e : eps) {
    long long blocks = 0;
    for (int v = 0; v < s.num_vertices(); ++v)
      if (s.height[static_cast<std::size_t>(v)] <= e &&
          (v == s.root ||
           s.height[static_cast<std::size_t>(s.parent[static_cast<std::size_t>(v)])] > e))
        ++blocks;
    out.count.push_back(blocks);
    out.log_count.push_back(std::log(static_cast<double>(blocks)));
  }
  return out;
}

CoveringCurve covering_curve_matrix(const DistanceMatrix& m,
                                    const std::vector<double>& eps) {
  check_scales(eps);
  CoveringCurve out;
  out.eps = eps;
  out.exact = false;
  for (double e : eps) {
    long long blocks = covering_count_matrix(m, e);
    out.count.push_back(blocks);
    out.log_count.push_back(std::log(static_cast<double>(blocks)));
  }
  return out;
}

double minkowski_slope(const CoveringCurve& curve, int lo, int hi, double* r2) {
  check_window(curve, lo, hi);
  std::vector<double> x, y;
  for (int i = lo; i <= hi; ++i) {
    x.push_back(-std::log(curve.eps[static_cast<std::size_t>(i)]));
    y.push_back(curve.log_count[static_cast<std::size_t>(i)]);
  }
  return lsq_slope(x, y, r2);
}

double crit_slope(const CoveringCurve& curve, int lo, int hi, bool* degenerate,
                  double* r2) {
  check_window(curve, lo, hi);
  std::vector<double> x, y;
  for (int i = lo; i <= hi; ++i) {
    double ln = curve.log_count[static_cast<std::size_t>(i)];
    if (!(ln > 0.0))
      fail(ErrorCode::kInvalidArgument,
           "window contains a one-block cover; log log N is undefined");
    x.push_back(-std::log(curve.eps[static_cast<std::size_t>(i)]));
    y.push_back(std::log(ln));
  }
  if (degenerate) {
    // polynomial growth makes log N itself fit a line in log(1/eps)
    double lin_r2 = 0.0;
    minkowski_slope(curve, lo, hi, &lin_r2);
    *degenerate = lin_r2 >= 0.999;
  }
  return lsq_slope(x, y, r2);
}

namespace {

// sum of 1 / (n (1 + ln n)^2), used to check that chat leaves the
// per-axis accuracies summable to 1/2
double axis_norm_sum() {
  static const double s = [] {
    Kahan sum;
    for (int n = 1; n <= 1000000; ++n) {
      double l = 1.0 + std::log(static_cast<double>(n));
      sum.add(1.0 / (n * l * l));
    }
    // integral tail bound from 10^6
    sum.add(1.0 / (1.0 + std::log(1e6)));
    return sum.value();
  }();
  return s;
}

}  // namespace

BanachCover banach_cube_cover_count(double alpha, double chat, double eps) {
  if (!(alpha > 1.0))
    fail(ErrorCode::kInvalidArgument, "alpha must exceed 1 for a summable cube");
  if (!(eps > 0.0)) fail(ErrorCode::kInvalidArgument, "eps must be positive");
  if (!(chat > 0.0) || axis_norm_sum() / chat > 0.5)
    fail(ErrorCode::kInvalidArgument,
         "chat too small: axis accuracies would overrun eps/2");

  double z = zeta(alpha);
  BanachCover out;
  Kahan partial;
  long long l = 0;
  while (z - partial.value() > eps / 2.0) {
    ++l;
    if (l > (1LL << 26))
      fail(ErrorCode::kCapExceeded,
           "truncation length is impractical at this alpha and eps");
    partial.add(std::pow(static_cast<double>(l), -alpha));
  }
  out.l = static_cast<int>(l);

  Kahan logsum;
  long long prod = 1;
  bool overflow = false;
  for (long long n = 1; n <= l; ++n) {
    double len = std::pow(static_cast<double>(n), -alpha);
    double lg = 1.0 + std::log(static_cast<double>(n));
    double cells = std::ceil(len * chat * static_cast<double>(n) * lg * lg / eps + 1.0);
    logsum.add(std::log(cells));
    if (!overflow) {
      auto c = static_cast<long long>(cells);
      if (prod > std::numeric_limits<long long>::max() / c)
        overflow = true;
      else
        prod *= c;
    }
  }
  out.log_count = logsum.value();
  out.count = overflow ? -1 : prod;
  return out;
}

CoveringCurve banach_cube_curve(double alpha, double chat,
                                const std::vector<double>& eps) {
  check_scales(eps);
  CoveringCurve out;
  out.eps = eps;
  out.exact = true;
  for (double e : eps) {
    BanachCover c = banach_cube_cover_count(alpha, chat, e);
    out.count.push_back(c.count);
    out.log_count.push_back(c.log_count);
  }
  return out;
}

MassEstimate banach_cube_ball_mass(double alpha, int l,
                                   const std::vector<double>& x, double r,
                                   long long samples, uint64_t seed) {
  if (!(alpha > 1.0)) fail(ErrorCode::kInvalidArgument, "alpha must exceed 1");
  if (l < 1) fail(ErrorCode::kInvalidArgument, "need at least one axis");
  if (!(r > 0.0)) fail(ErrorCode::kInvalidArgument, "radius must be positive");
  if (samples < 1) fail(ErrorCode::kInvalidArgument, "need at least one sample");
  std::vector<double> len(static_cast<std::size_t>(l));
  for (int n = 1; n <= l; ++n)
    len[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), -alpha);
  std::vector<double> cx(static_cast<std::size_t>(l), 0.0);
  if (!x.empty()) {
    if (static_cast<int>(x.size()) != l)
      fail(ErrorCode::kInvalidArgument, "center has the wrong axis count");
    for (int n = 0; n < l; ++n) {
      if (!(x[static_cast<std::size_t>(n)] >= 0.0 &&
            x[static_cast<std::size_t>(n)] <= len[static_cast<std::size_t>(n)]))
        fail(ErrorCode::kInvalidArgument, "center leaves the cube on axis " +
                                              std::to_string(n + 1));
      cx[static_cast<std::size_t>(n)] = x[static_cast<std::size_t>(n)];
    }
  }

  Rng rng(seed, 4);
  long long hits = 0;
  for (long long i = 0; i < samples; ++i) {
    double sum = 0.0;
    uint64_t base = static_cast<uint64_t>(i) * static_cast<uint64_t>(l);
    for (int n = 0; n < l; ++n) {
      double u = rng.uniform_at(base + static_cast<uint64_t>(n)) *
                 len[static_cast<std::size_t>(n)];
      sum += std::abs(u - cx[static_cast<std::size_t>(n)]);
      if (sum > r) break;
    }
    if (sum <= r) ++hits;
  }
  if (hits == 0)
    fail(ErrorCode::kInvalidArgument,
         "no sample landed in the ball; enlarge r or the sample budget");
  MassEstimate out;
  out.hits = hits;
  out.samples = samples;
  out.p = static_cast<double>(hits) / static_cast<double>(samples);
  out.log_mass = std::log(out.p);
  out.ci_log = 1.96 * std::sqrt((1.0 - out.p) / (out.p * static_cast<double>(samples)));
  return out;
}

}  // namespace uot
