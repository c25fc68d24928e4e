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

#ifndef ULTRAOT_RNG_HPP
#define ULTRAOT_RNG_HPP

#include <cstdint>

namespace uot {

// Counter-based generator: the value at (seed, stream, counter) is a pure
// function of its arguments, so any sample index can be drawn out of order
// and work can be sharded without changing results.
//
// The mixer is the splitmix64 finalizer, applied to a Weyl sequence keyed
// by seed and stream. Not cryptographic; statistical quality is plenty for
// Monte-Carlo estimates and instance generation.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : base_(mix(seed ^ 0x5851f42d4c957f2dULL) ^ mix(stream * 0xd1342543de82ef95ULL + 0x9e3779b97f4a7c15ULL)) {}

  // Value at an explicit counter position.
  uint64_t at(uint64_t counter) const {
    return mix(base_ + counter * 0x9e3779b97f4a7c15ULL);
  }

  double uniform_at(uint64_t counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }

  // Sequential convenience interface over the same schedule.
  uint64_t next() { return at(counter_++); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n > 0. Modulo bias is below 2^-32 for the
  // range sizes used here (at most 2^31).
  uint64_t below(uint64_t n) { return next() % n; }

  Rng substream(uint64_t stream) const {
    Rng r(0);
    r.base_ = mix(base_ ^ (stream * 0xd1342543de82ef95ULL + 0x9e3779b97f4a7c15ULL));
    return r;
  }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  uint64_t base_;
  uint64_t counter_ = 0;
};

}  // namespace uot

#endif  // ULTRAOT_RNG_HPP
