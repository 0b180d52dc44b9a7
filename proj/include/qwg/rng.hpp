// Copyright 2026 The qwg Authors
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

#ifndef QWG_RNG_HPP_
#define QWG_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qwg {

// Counter-based generator with a fixed, documented algorithm so sampled
// counts reproduce bit-exactly across platforms and compilers (the standard
// library's distributions are implementation-defined and cannot be used for
// golden files).
//
// Output i is mix64(seed + GAMMA * (i + 1)), where mix64 is the SplitMix64
// finalizer and GAMMA = 0x9e3779b97f4a7c15. Substreams for parallel or
// per-point sampling derive independent seeds via substream_seed.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + kGamma * (stream + 1)) ^ 0xd1b54a32d192ed03ULL;
  }

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(seed_ + kGamma * counter_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Poisson sample by Knuth's product-of-uniforms inversion. Means above 32
  // are split into independent chunks (a sum of independent Poissons is
  // Poisson in the summed mean), keeping the uniform products away from
  // underflow while staying exactly reproducible.
  std::uint64_t poisson(double mean) {
    if (!std::isfinite(mean) || mean < 0.0) {
      throw std::invalid_argument("poisson: mean must be finite and >= 0");
    }
    std::uint64_t total = 0;
    while (mean > 32.0) {
      total += poisson_knuth(32.0);
      mean -= 32.0;
    }
    return total + poisson_knuth(mean);
  }

 private:
  std::uint64_t poisson_knuth(double mean) {
    if (mean <= 0.0) return 0;
    const double threshold = std::exp(-mean);
    std::uint64_t count = 0;
    double product = next_uniform();
    while (product > threshold) {
      count += 1;
      product *= next_uniform();
    }
    return count;
  }

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace qwg

#endif  // QWG_RNG_HPP_
