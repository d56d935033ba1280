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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "raqm/bitstring.hpp"
#include "raqm/error.hpp"
#include "raqm/rational.hpp"

namespace raqm {

/// (m, n) with cos^2(θ/2) = m/L and φ = 2πn/L.
struct QubitParams {
    std::size_t m = 0;
    std::size_t n = 0;

    friend bool operator==(const QubitParams &, const QubitParams &) = default;
};

/**
 * Two correlated length-L strings sharing one hidden permutation.
 *
 * Alice's string is the single-qubit block form for (θ1, φ1). Bob's string is split into the
 * positions where Alice holds +1 and where she holds -1; within the first part a fraction
 * cos^2(θ2/2) is +1, within the second a fraction cos^2(θ3/2).
 */
class EntangledPair {
   public:
    EntangledPair(BitString alice, BitString bob, HiddenPermutation xi, std::array<QubitParams, 3> params)
        : alice_(std::move(alice)), bob_(std::move(bob)), xi_(std::move(xi)), params_(params) {
        if (alice_.size() != bob_.size() || xi_.size() != alice_.size()) {
            throw Error(Errc::LengthMismatch, "pair strings and ξ must share one length");
        }
    }

    std::size_t size() const {
        return alice_.size();
    }
    const BitString &alice_bits() const {
        return alice_;
    }
    const BitString &bob_bits() const {
        return bob_;
    }
    const HiddenPermutation &xi() const {
        return xi_;
    }
    const std::array<QubitParams, 3> &params() const {
        return params_;
    }

    friend bool operator==(const EntangledPair &, const EntangledPair &) = default;

   private:
    BitString alice_;
    BitString bob_;
    HiddenPermutation xi_;
    std::array<QubitParams, 3> params_;
};

namespace detail {

/// length * m / L, required to be an integer.
inline std::size_t scaled_count(std::size_t length, std::size_t m, std::size_t L, const char *what) {
    std::uint64_t num = static_cast<std::uint64_t>(length) * m;
    if (num % L != 0) {
        throw Error(Errc::GridIncompatible, std::string(what) + ": " + std::to_string(length) + "*" +
                                                std::to_string(m) + "/" + std::to_string(L) + " is not an integer");
    }
    return static_cast<std::size_t>(num / L);
}

}  // namespace detail

/**
 * General two-qubit state. φ1 rotates both strings together (Bob's sub-blocks follow Alice's
 * bits); φ2 and φ3 rotate within Bob's two sub-blocks by n·(block length)/L places.
 */
inline EntangledPair make_entangled(DiscretisationLevel L, QubitParams first, QubitParams second, QubitParams third,
                                    HiddenPermutation xi) {
    for (const QubitParams &p : {first, second, third}) {
        if (p.m > L || p.n >= L) {
            throw Error(Errc::OutOfRange, "(m, n) = (" + std::to_string(p.m) + ", " + std::to_string(p.n) +
                                              ") outside the L = " + std::to_string(L.value()) + " grid");
        }
    }
    const std::size_t len1 = first.m;
    const std::size_t len2 = L - first.m;
    std::size_t ones1 = detail::scaled_count(len1, second.m, L, "Bob +1 count over Alice's +1 block");
    std::size_t ones2 = detail::scaled_count(len2, third.m, L, "Bob +1 count over Alice's -1 block");
    std::size_t shift1 = detail::scaled_count(len1, second.n, L, "φ2 rotation");
    std::size_t shift2 = detail::scaled_count(len2, third.n, L, "φ3 rotation");

    BitString alice = block_string(L, first.m);
    BitString bob;
    bob.reserve(L);
    BitString part1 = rotate(block_string(len1, ones1), shift1);
    BitString part2 = rotate(block_string(len2, ones2), shift2);
    bob.insert(bob.end(), part1.begin(), part1.end());
    bob.insert(bob.end(), part2.begin(), part2.end());
    return EntangledPair(rotate(alice, first.n), rotate(bob, first.n), std::move(xi), {first, second, third});
}

/// Singlet pair at relative angle θ with cos θ = cos_theta.
struct SingletPair {
    EntangledPair base;
    Rational cos_theta;

    const BitString &alice_bits() const {
        return base.alice_bits();
    }
    const BitString &bob_bits() const {
        return base.bob_bits();
    }
    const HiddenPermutation &xi() const {
        return base.xi();
    }
    std::size_t size() const {
        return base.size();
    }
};

/**
 * Number of +1 entries Bob holds over Alice's +1 half: (L/2)(1 - cos θ)/2. The singlet exists at
 * this L only when that and (L/2)(1 + cos θ)/2 are integers.
 */
inline std::size_t singlet_block_count(std::size_t L, const Rational &cos_theta) {
    if (cos_theta.abs() > Rational(1)) {
        throw Error(Errc::DomainError, "cos θ = " + cos_theta.to_string() + " outside [-1, 1]");
    }
    if (L == 0 || L % 2 != 0) {
        throw Error(Errc::GridIncompatible, "singlet needs an even L, got " + std::to_string(L));
    }
    const Rational half(static_cast<long long>(L / 2));
    Rational low = half * (Rational(1) - cos_theta) / Rational(2);
    Rational high = half * (Rational(1) + cos_theta) / Rational(2);
    if (!low.is_integer() || !high.is_integer()) {
        throw Error(Errc::GridIncompatible,
                    "cos θ = " + cos_theta.to_string() + " is not representable at L = " + std::to_string(L));
    }
    return low.numerator().get_ui();
}

inline bool singlet_grid_compatible(std::size_t L, const Rational &cos_theta) {
    try {
        singlet_block_count(L, cos_theta);
        return true;
    } catch (const Error &) {
        return false;
    }
}

inline SingletPair make_singlet(std::size_t L, const Rational &cos_theta, HiddenPermutation xi) {
    std::size_t k = singlet_block_count(L, cos_theta);
    DiscretisationLevel level(L);
    EntangledPair base = make_entangled(level, {L / 2, 0}, {2 * k, 0}, {L - 2 * k, 0}, std::move(xi));
    return {std::move(base), cos_theta};
}

struct JointOutcome {
    Bit alice = 1;
    Bit bob = 1;
    std::size_t position = 0;

    friend bool operator==(const JointOutcome &, const JointOutcome &) = default;
};

inline JointOutcome joint_measure_at(const SingletPair &pair, std::size_t position) {
    if (position >= pair.size()) {
        throw Error(Errc::OutOfRange, "position " + std::to_string(position) + " outside the string");
    }
    return {pair.alice_bits()[position], pair.bob_bits()[position], position};
}

/// The M(ξ)-th pair of bits of the strings before ξ.
inline JointOutcome joint_measure(const SingletPair &pair) {
    return joint_measure_at(pair, pair.xi().measured_index());
}

/// (1/L) Σ alice[i]·bob[i]; equals -cos θ for a singlet.
inline Rational exact_correlation(const EntangledPair &pair) {
    long long sum = 0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        sum += pair.alice_bits()[i] * pair.bob_bits()[i];
    }
    return Rational(sum, static_cast<long long>(pair.size()));
}

inline Rational exact_correlation(const SingletPair &pair) {
    return exact_correlation(pair.base);
}

struct BobSwapReport {
    SingletPair swapped;
    bool alice_string_unchanged = false;
    bool alice_outcome_unchanged = false;
};

/// Bob re-orients so that cos θ becomes new_cos; Alice's string and outcome are compared.
inline BobSwapReport bob_counterfactual_swap(const SingletPair &pair, const Rational &new_cos) {
    SingletPair swapped = make_singlet(pair.size(), new_cos, pair.xi());
    bool string_same = swapped.alice_bits() == pair.alice_bits();
    bool outcome_same = joint_measure(swapped).alice == joint_measure(pair).alice;
    return {std::move(swapped), string_same, outcome_same};
}

/**
 * The same singlet written with the roles exchanged: Alice carries the sub-block string and
 * Bob the half/half string, under a different permutation ξ' chosen so that the permuted
 * strings coincide with the original representation.
 */
struct ExchangedForm {
    BitString alice;
    BitString bob;
    HiddenPermutation xi_prime;
    Rational cos_theta;
};

namespace detail {

/// Sub-block string for a singlet: k (+1)s then L/2 - k (-1)s, then L/2 - k (+1)s then k (-1)s.
inline BitString singlet_sub_blocks(std::size_t L, std::size_t k) {
    BitString out = block_string(L / 2, k);
    BitString second = block_string(L / 2, L / 2 - k);
    out.insert(out.end(), second.begin(), second.end());
    return out;
}

inline int pair_class(Bit a, Bit b) {
    return (a == 1 ? 2 : 0) + (b == 1 ? 1 : 0);
}

}  // namespace detail

/**
 * Builds the exchanged representation of `pair`. The position map matches the i-th original
 * index of each (alice, bob) value class with the i-th exchanged index of the same class; ξ'
 * sends exchanged index σ^-1(j) wherever ξ sends j.
 */
inline ExchangedForm exchanged_form(const SingletPair &pair) {
    const std::size_t L = pair.size();
    std::size_t k = singlet_block_count(L, pair.cos_theta);
    BitString alice = detail::singlet_sub_blocks(L, k);
    BitString bob = block_string(L, L / 2);

    std::array<std::vector<std::uint32_t>, 4> pool;
    for (std::size_t i = 0; i < L; ++i) {
        pool[detail::pair_class(alice[i], bob[i])].push_back(static_cast<std::uint32_t>(i));
    }
    std::array<std::size_t, 4> used{};
    std::vector<std::uint32_t> to_exchanged(L);
    for (std::size_t j = 0; j < L; ++j) {
        int c = detail::pair_class(pair.alice_bits()[j], pair.bob_bits()[j]);
        if (used[c] >= pool[c].size()) {
            throw Error(Errc::DomainError, "pair is not a canonical singlet");
        }
        to_exchanged[j] = pool[c][used[c]++];
    }
    std::vector<std::uint32_t> order(L);
    const auto &original = pair.xi().order();
    for (std::size_t p = 0; p < L; ++p) {
        order[p] = to_exchanged[original[p]];
    }
    return {std::move(alice), std::move(bob), HiddenPermutation::from_order(std::move(order)), pair.cos_theta};
}

struct AliceSwapReport {
    ExchangedForm swapped;
    bool bob_string_unchanged = false;
    bool bob_outcome_unchanged = false;
};

/// Alice re-orients (new_cos) using the exchanged form; Bob's string and outcome are compared.
inline AliceSwapReport alice_counterfactual_swap(const SingletPair &pair, const Rational &new_cos) {
    ExchangedForm before = exchanged_form(pair);
    const std::size_t L = pair.size();
    std::size_t k = singlet_block_count(L, new_cos);
    ExchangedForm after{detail::singlet_sub_blocks(L, k), before.bob, before.xi_prime, new_cos};
    bool string_same = after.bob == before.bob;
    Bit bob_before = pair.bob_bits()[pair.xi().measured_index()];
    Bit bob_after = after.bob[after.xi_prime.measured_index()];
    return {std::move(after), string_same, bob_before == bob_after};
}

}  // namespace raqm
