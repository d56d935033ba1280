// Copyright 2026 The RaQM Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>

namespace raqm {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Child seed for a (stream, index, ...) path below `master`. Distinct paths give
/// statistically independent seeds; the same path always gives the same seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t part : path) {
        h = splitmix64(h ^ splitmix64(part + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

/**
 * xoshiro256** seeded through splitmix64.
 *
 * Output is identical on every platform; the std:: distributions are not, so bounded integers
 * are drawn here by rejection sampling. Seeding costs a few multiplies: every hidden
 * permutation gets its own generator.
 */
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) {
        for (auto &word : state_) {
            word = splitmix64(seed);
            seed += 0x9E3779B97F4A7C15ULL;
        }
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return ~result_type{0};
    }
    result_type operator()() {
        return next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            std::uint64_t x = next();
            if (x >= threshold) {
                return x % bound;
            }
        }
    }

    /// Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) {
            return static_cast<std::int64_t>(next());
        }
        return lo + static_cast<std::int64_t>(below(span));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

   private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace raqm
