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

#ifndef ULTRAOT_ORACLE_HPP
#define ULTRAOT_ORACLE_HPP

#include <vector>

#include "transport.hpp"
#include "ultra_core.hpp"

namespace uot {

// Exact minimum-cost coupling on an arbitrary finite metric, solved by
// the transportation simplex on the measure supports.  Costs nothing on
// tree structure, so it serves as the independent check for the
// closed-form distance.  Instances with a support side larger than cap
// are refused; the cap exists because this is quadratic in memory and
// much slower than the tree formula.
struct OracleResult {
  double cost_pp = 0;
  TransportPlan plan;  // indices refer to matrix rows
};

OracleResult oracle_cost(const DistanceMatrix& m, const std::vector<double>& mu,
                         const std::vector<double>& nu, double p,
                         int cap = 64);

}  // namespace uot

#endif  // ULTRAOT_ORACLE_HPP
