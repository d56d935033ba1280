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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "raqm/angle.hpp"
#include "raqm/error.hpp"
#include "raqm/random.hpp"
#include "raqm/rational.hpp"

namespace raqm {

/// One entry of a state string: +1 or -1.
using Bit = std::int8_t;
using BitString = std::vector<Bit>;

inline constexpr std::size_t kDefaultL = 3600;

/// Number of bits per qubit string.
class DiscretisationLevel {
   public:
    explicit DiscretisationLevel(std::size_t L = kDefaultL) : L_(L) {
        if (L == 0) {
            throw Error(Errc::BadL, "L must be >= 1");
        }
    }

    std::size_t value() const {
        return L_;
    }
    operator std::size_t() const {
        return L_;
    }
    bool supports_quaternions() const {
        return L_ % 4 == 0;
    }

   private:
    std::size_t L_;
};

/**
 * The hidden permutation ξ applied to a state string.
 *
 * Stored as the post-permutation order: order()[p] is the pre-permutation index that ξ moves
 * to position p. The measured bit is the one landing in position 0, so M(ξ) = order()[0].
 *
 * Seeded permutations use a forward Fisher-Yates shuffle. Position 0 is fixed by the very first
 * draw and never revisited, which lets measured_index_for_seed() return M(ξ) without building
 * the whole permutation.
 */
class HiddenPermutation {
   public:
    static HiddenPermutation identity(std::size_t L) {
        std::vector<std::uint32_t> order(L);
        std::iota(order.begin(), order.end(), 0u);
        return HiddenPermutation(std::move(order), std::nullopt);
    }

    static HiddenPermutation from_seed(std::uint64_t seed, std::size_t L) {
        if (L == 0) {
            throw Error(Errc::BadL, "permutation of length 0");
        }
        std::vector<std::uint32_t> order(L);
        std::iota(order.begin(), order.end(), 0u);
        Rng rng(seed);
        for (std::size_t i = 0; i + 1 < L; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(L - i));
            std::swap(order[i], order[j]);
        }
        return HiddenPermutation(std::move(order), seed);
    }

    /// `order` must be a permutation of 0..L-1.
    static HiddenPermutation from_order(std::vector<std::uint32_t> order) {
        std::vector<bool> seen(order.size(), false);
        for (auto v : order) {
            if (v >= order.size() || seen[v]) {
                throw Error(Errc::OutOfRange, "order is not a permutation");
            }
            seen[v] = true;
        }
        return HiddenPermutation(std::move(order), std::nullopt);
    }

    /// M(ξ) for from_seed(seed, L), in O(1).
    static std::size_t measured_index_for_seed(std::uint64_t seed, std::size_t L) {
        if (L <= 1) {
            return 0;
        }
        Rng rng(seed);
        return static_cast<std::size_t>(rng.below(L));
    }

    std::size_t size() const {
        return order_.size();
    }
    const std::optional<std::uint64_t> &seed() const {
        return seed_;
    }
    const std::vector<std::uint32_t> &order() const {
        return order_;
    }

    std::size_t measured_index() const {
        return order_[0];
    }

    /// ξ(pre): the position a pre-permutation index ends up in.
    std::vector<std::uint32_t> images() const {
        std::vector<std::uint32_t> out(order_.size());
        for (std::size_t p = 0; p < order_.size(); ++p) {
            out[order_[p]] = static_cast<std::uint32_t>(p);
        }
        return out;
    }

    template <typename T>
    std::vector<T> apply(std::span<const T> pre) const {
        if (pre.size() != order_.size()) {
            throw Error(Errc::LengthMismatch, "permutation of length " + std::to_string(order_.size()) +
                                                  " applied to string of length " + std::to_string(pre.size()));
        }
        std::vector<T> out(pre.size());
        for (std::size_t p = 0; p < pre.size(); ++p) {
            out[p] = pre[order_[p]];
        }
        return out;
    }

    friend bool operator==(const HiddenPermutation &a, const HiddenPermutation &b) {
        return a.order_ == b.order_;
    }

   private:
    HiddenPermutation(std::vector<std::uint32_t> order, std::optional<std::uint64_t> seed)
        : order_(std::move(order)), seed_(seed) {
    }

    std::vector<std::uint32_t> order_;
    std::optional<std::uint64_t> seed_;
};

/// Cyclic rotation towards higher indices: out[k] = s[(k - steps) mod L].
inline BitString rotate(std::span<const Bit> s, std::size_t steps) {
    const std::size_t L = s.size();
    BitString out(L);
    if (L == 0) {
        return out;
    }
    steps %= L;
    for (std::size_t k = 0; k < L; ++k) {
        out[(k + steps) % L] = s[k];
    }
    return out;
}

/// m (+1)s followed by L - m (-1)s.
inline BitString block_string(std::size_t L, std::size_t m) {
    BitString out(L, Bit{-1});
    std::fill_n(out.begin(), std::min(m, L), Bit{1});
    return out;
}

inline std::size_t count_ones(std::span<const Bit> s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), Bit{1}));
}

/// -1 -> '0', +1 -> '1'.
inline std::string to_01_string(std::span<const Bit> s) {
    std::string out(s.size(), '0');
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 1) {
            out[i] = '1';
        }
    }
    return out;
}

inline BitString from_01_string(std::string_view text) {
    BitString out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            out[i] = 1;
        } else if (text[i] == '0') {
            out[i] = -1;
        } else {
            throw Error(Errc::ParseError, "bit string may only contain '0' and '1'");
        }
    }
    return out;
}

struct MeasurementRecord {
    Bit outcome = 1;
    /// Zero-based M(ξ).
    std::size_t position = 0;

    friend bool operator==(const MeasurementRecord &, const MeasurementRecord &) = default;
};

/**
 * A single qubit as a length-L string over {+1, -1} plus its hidden permutation.
 *
 * bits() is the representative ordering before ξ; permuted_bits() is what ξ produces. The
 * number of +1 entries is m, where cos^2(θ/2) = m/L.
 */
class BitStringState {
   public:
    BitStringState(BitString bits, HiddenPermutation xi, std::string basis_tag = "z", std::size_t phase_steps = 0)
        : bits_(std::move(bits)), xi_(std::move(xi)), basis_tag_(std::move(basis_tag)), phase_steps_(phase_steps) {
        if (bits_.empty()) {
            throw Error(Errc::BadL, "empty state string");
        }
        if (xi_.size() != bits_.size()) {
            throw Error(Errc::LengthMismatch, "ξ length differs from string length");
        }
        for (Bit b : bits_) {
            if (b != 1 && b != -1) {
                throw Error(Errc::DomainError, "state entries must be +1 or -1");
            }
        }
        ones_ = count_ones(bits_);
    }

    std::size_t size() const {
        return bits_.size();
    }
    /// Number of +1 entries (m).
    std::size_t ones() const {
        return ones_;
    }
    /// n, where φ = 2πn/L.
    std::size_t phase_steps() const {
        return phase_steps_;
    }
    const BitString &bits() const {
        return bits_;
    }
    const HiddenPermutation &xi() const {
        return xi_;
    }
    const std::string &basis_tag() const {
        return basis_tag_;
    }

    BitString permuted_bits() const {
        return xi_.apply<Bit>(bits_);
    }

    /// m/L.
    Rational up_probability() const {
        return Rational(static_cast<long long>(ones_), static_cast<long long>(bits_.size()));
    }

    friend bool operator==(const BitStringState &, const BitStringState &) = default;

   private:
    BitString bits_;
    HiddenPermutation xi_;
    std::string basis_tag_;
    std::size_t phase_steps_ = 0;
    std::size_t ones_ = 0;
};

/// ζ^n applied to m (+1)s then L - m (-1)s, carried with ξ.
inline BitStringState make_qubit(DiscretisationLevel L, std::size_t m, std::size_t n, HiddenPermutation xi,
                                 std::string basis_tag = "z") {
    if (m > L) {
        throw Error(Errc::OutOfRange, "m = " + std::to_string(m) + " exceeds L = " + std::to_string(L.value()));
    }
    if (n >= L) {
        throw Error(Errc::OutOfRange, "n = " + std::to_string(n) + " must be below L = " + std::to_string(L.value()));
    }
    return BitStringState(rotate(block_string(L, m), n), std::move(xi), std::move(basis_tag), n);
}

/**
 * Builds the state for cos^2(θ/2) = p and phase φ, which exists at this L only when p*L and
 * φ*L (in turns) are both integers.
 */
inline BitStringState qubit_from_amplitudes(DiscretisationLevel L, const Rational &cos2_half_theta,
                                            const RationalAngle &phi, HiddenPermutation xi) {
    if (cos2_half_theta.sign() < 0 || cos2_half_theta > Rational(1)) {
        throw Error(Errc::DomainError, "cos^2(θ/2) = " + cos2_half_theta.to_string() + " outside [0, 1]");
    }
    Rational m = cos2_half_theta * Rational(static_cast<long long>(L.value()));
    Rational n = phi.turns() * Rational(static_cast<long long>(L.value()));
    if (!m.is_integer() || !n.is_integer()) {
        throw Error(Errc::GridIncompatible, "state (" + cos2_half_theta.to_string() + ", " + phi.turns().to_string() +
                                                " turn) is not on the L = " + std::to_string(L.value()) + " grid");
    }
    return make_qubit(L, m.numerator().get_ui(), n.numerator().get_ui(), std::move(xi));
}

inline MeasurementRecord measure(const BitStringState &state) {
    std::size_t position = state.xi().measured_index();
    return {state.bits()[position], position};
}

struct BornFrequency {
    Rational exact;
    double empirical = 0;
    std::size_t samples = 0;
};

/**
 * Exact +1 frequency m/L (every measured position equally weighted) next to the empirical
 * frequency over `sample_count` independently seeded ξ.
 */
inline BornFrequency born_frequency(DiscretisationLevel L, std::size_t m, std::size_t n, std::size_t sample_count,
                                    std::uint64_t seed) {
    if (sample_count == 0) {
        throw Error(Errc::OutOfRange, "sample_count must be >= 1");
    }
    BitStringState state = make_qubit(L, m, n, HiddenPermutation::identity(L));
    std::size_t ups = 0;
    for (std::size_t i = 0; i < sample_count; ++i) {
        std::size_t position = HiddenPermutation::measured_index_for_seed(derive_seed(seed, {i}), L);
        if (state.bits()[position] == 1) {
            ++ups;
        }
    }
    return {state.up_probability(), static_cast<double>(ups) / static_cast<double>(sample_count), sample_count};
}

inline bool equivalent_under_permutation(const BitStringState &a, const BitStringState &b) {
    if (a.size() != b.size()) {
        throw Error(Errc::LengthMismatch,
                    "strings of length " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    return a.ones() == b.ones();
}

}  // namespace raqm
