// Copyright 2026 The povmsparse Authors
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

#ifndef POVMSPARSE_RNG_HPP
#define POVMSPARSE_RNG_HPP

#include <cstdint>
#include <limits>

namespace povmsparse {

/// Counter-based random stream.
///
/// The n-th output is a pure function of (key, n), so a stream can be
/// replayed from its key alone and split into statistically independent
/// substreams without sharing state. Output bits are identical on every
/// platform; the Gaussian sampler below uses only <cmath> primitives for
/// the same reason instead of std::normal_distribution.
class RngStream {
   public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) : key_(mix(seed ^ kSeedSalt)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix(key_ + kGolden * ++counter_); }

    /// Independent substream `index`. Does not advance this stream.
    [[nodiscard]] RngStream split(std::uint64_t index) const;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal variate (Box-Muller, both outputs used).
    double normal();

    [[nodiscard]] std::uint64_t key() const { return key_; }
    [[nodiscard]] std::uint64_t counter() const { return counter_; }

   private:
    struct FromKey {};
    RngStream(FromKey, std::uint64_t key) : key_(key) {}

    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kSeedSalt = 0x6a09e667f3bcc909ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace povmsparse

#endif  // POVMSPARSE_RNG_HPP
