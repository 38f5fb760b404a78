// Copyright 2026 The Guided MPPI Authors
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

#ifndef GUIDED_MPPI_CORE_RANDOM_HPP_
#define GUIDED_MPPI_CORE_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace guided_mppi {

// SplitMix64 finalizer applied to (master, index); used to derive
// independent child streams, e.g. one per optimizer iteration.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Seeded random stream. Normal draws use the Marsaglia polar method on top of
// mt19937_64 so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();

  // Stream derived from this stream's seed; independent of how many draws
  // have been taken from *this.
  Rng child(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_CORE_RANDOM_HPP_
