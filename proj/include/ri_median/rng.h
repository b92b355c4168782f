//
// Copyright 2026 The ri-median Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef RI_MEDIAN_RNG_H_
#define RI_MEDIAN_RNG_H_

#include <cstdint>
#include <random>

namespace ri_median {

// One step of the SplitMix64 generator; a bijective 64-bit mixer.
uint64_t SplitMix64(uint64_t x);

// Deterministic pseudo-random source. The engine and every derived draw are
// defined bit-for-bit here (no std distributions), so a given seed yields the
// same sequence on every platform and standard library.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : seed_(seed), engine_(SplitMix64(seed)) {}

  // Independent substream for one trial of one sweep cell.
  static RngStream ForTrial(uint64_t master_seed, uint64_t cell_id,
                            uint64_t trial_id);

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double UniformUnit();

  // Uniform on (0, 1); never returns 0.
  double UniformOpenUnit();

  // Uniform integer on [lo, hi], unbiased. Requires lo <= hi.
  int64_t UniformInt(int64_t lo, int64_t hi);

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ri_median

#endif  // RI_MEDIAN_RNG_H_
