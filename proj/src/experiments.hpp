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

#ifndef ULTRAOT_EXPERIMENTS_HPP
#define ULTRAOT_EXPERIMENTS_HPP

#include <cstdint>

#include "io.hpp"
#include "transport.hpp"
#include "ultra_core.hpp"

namespace uot {

// Shared schedule of seeded random spaces with two random measures; the
// suites below agree on instances whenever they agree on (seed, index).
struct RandomInstance {
  Srt tree;
  Measure mu;
  Measure nu;
};
RandomInstance random_instance(uint64_t seed, int index);

// Closed-form distance against the simplex oracle for p in {1, 2, 3}.
Report experiment_lemma_eq2(int instances, uint64_t seed);

// l1 embedding isometry, mixture affinity, Dirac compatibility and the
// p-power triangle inequality on the same instance schedule.
Report experiment_embedding_isometry(int instances, uint64_t seed);

// Spread-measure lower bound on the depth-8 binary word space: fits the
// constant on a calibration set, then validates fresh pairs against the
// oracle with zero violations allowed.
Report experiment_sec51(int pairs, uint64_t seed);

// Weighted-comb lower bound on the greedy sequence of the depth-12
// binary word space, validated against the oracle; surplus-shift pairs
// face the full per-tooth bound and independent pairs its half.
Report experiment_sec5alt(int pairs, uint64_t seed);

// Covering counts and window slopes of the fast-branching tree, before
// and after deleting the ball at the root's height-1/2 child.
Report experiment_sec61();

// Comb space validation plus its per-tooth lower bound: exact
// ultrametricity at 2000 points, surplus-shift and single-tooth
// equality pairs, and the half bound on independent pairs.
Report experiment_sec62(int pairs, uint64_t seed);

}  // namespace uot

#endif  // ULTRAOT_EXPERIMENTS_HPP
