// Copyright 2026 The otoclab authors
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

#ifndef OTOCLAB_RNG_HPP
#define OTOCLAB_RNG_HPP

#include <cstdint>

namespace otoclab {

// xoshiro256++ seeded through splitmix64. Implemented here (rather than via
// <random> distributions) so that sampled ensembles are bit-identical across
// platforms and standard libraries. Seeds are 64-bit and recorded in every
// experiment record.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 bits of mantissa.
  double uniform();

  // Unbiased uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n);

  // Standard normal via Box-Muller (fixed algorithm, no stdlib distribution).
  double gaussian();

  // Independent stream derived from the base seed; used for per-point seeding
  // of grids and ensembles so parallel execution order cannot matter.
  Rng split(std::uint64_t stream) const;

  std::uint64_t base_seed() const { return base_seed_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t base_seed_;
  bool have_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace otoclab

#endif  // OTOCLAB_RNG_HPP
