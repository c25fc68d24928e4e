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

#ifndef ULTRAOT_NUMERIC_HPP
#define ULTRAOT_NUMERIC_HPP

#include <charconv>
#include <string>

#include <cmath>
#include <cstddef>
#include <vector>

namespace uot {

// Neumaier variant of compensated summation. Used wherever a cost or a
// mass total is accumulated, so results do not drift with term count.
class Kahan {
 public:
  void add(double x) {
    double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double compensated_sum(const std::vector<double>& xs) {
  Kahan k;
  for (double x : xs) k.add(x);
  return k.value();
}

// Least-squares slope of y against x. Returns the slope and, optionally,
// the coefficient of determination of the linear fit.
inline double lsq_slope(const std::vector<double>& x, const std::vector<double>& y,
                        double* r2 = nullptr) {
  const size_t n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  double slope = sxy / sxx;
  if (r2) {
    // Residual sum of squares of the best linear fit.
    double ss_res = syy - sxy * sxy / sxx;
    *r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  }
  return slope;
}

// Shortest decimal form that parses back to the same double. All file
// output goes through this so reruns are byte-identical.
inline std::string fmt_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// Riemann zeta for s > 1 by Euler-Maclaurin with three Bernoulli
// correction terms; good to ~1e-14 down to s = 1.05.
inline double zeta(double s) {
  const int n = 64;
  Kahan sum;
  for (int i = 1; i <= n; ++i) sum.add(std::pow(i, -s));
  double tail = std::pow(n, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(n, -s);
  tail += s * std::pow(n, -s - 1.0) / 12.0;
  tail -= s * (s + 1.0) * (s + 2.0) * std::pow(n, -s - 3.0) / 720.0;
  tail += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * std::pow(n, -s - 5.0) / 30240.0;
  return sum.value() + tail;
}

}  // namespace uot

#endif  // ULTRAOT_NUMERIC_HPP
