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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "raqm/bitstring.hpp"
#include "raqm/entanglement.hpp"
#include "raqm/error.hpp"
#include "raqm/rational.hpp"

namespace raqm {

/**
 * A finite digit word in base p, most significant digit first.
 *
 * The last digit is the least significant one: the shift map drops it first, and the metric
 * counts agreement from the front.
 */
class PadicWord {
   public:
    PadicWord(unsigned base, std::vector<std::uint8_t> digits) : base_(base), digits_(std::move(digits)) {
        if (base_ < 2 || base_ > 10) {
            throw Error(Errc::DomainError, "base must be in [2, 10], got " + std::to_string(base_));
        }
        for (auto d : digits_) {
            if (d >= base_) {
                throw Error(Errc::DomainError,
                            "digit " + std::to_string(d) + " not below base " + std::to_string(base_));
            }
        }
    }

    /// Digits as ASCII characters, e.g. "10011010".
    static PadicWord parse(std::string_view text, unsigned base = 2) {
        if (text.empty()) {
            throw Error(Errc::ParseError, "empty digit word");
        }
        std::vector<std::uint8_t> digits;
        digits.reserve(text.size());
        for (char c : text) {
            if (c < '0' || c > '9' || static_cast<unsigned>(c - '0') >= base) {
                throw Error(Errc::ParseError, "'" + std::string(text) + "' is not a base-" + std::to_string(base) +
                                                  " digit word");
            }
            digits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return PadicWord(base, std::move(digits));
    }

    unsigned base() const {
        return base_;
    }
    std::size_t size() const {
        return digits_.size();
    }
    const std::vector<std::uint8_t> &digits() const {
        return digits_;
    }

    std::string to_string() const {
        std::string out(digits_.size(), '0');
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            out[i] = static_cast<char>('0' + digits_[i]);
        }
        return out;
    }

    /// One shift-map step: integer division by the base, i.e. drop the last digit.
    PadicWord shifted() const {
        if (digits_.size() <= 1) {
            return *this;
        }
        return PadicWord(base_, std::vector<std::uint8_t>(digits_.begin(), digits_.end() - 1));
    }

    /// Permutes digit positions: out[p] = digits[xi.order()[p]].
    PadicWord permuted(const HiddenPermutation &xi) const {
        return PadicWord(base_, xi.apply<std::uint8_t>(digits_));
    }

    friend bool operator==(const PadicWord &, const PadicWord &) = default;

   private:
    unsigned base_;
    std::vector<std::uint8_t> digits_;
};

/// +1 -> 1, -1 -> 0.
inline PadicWord encode_2adic(std::span<const Bit> s) {
    std::vector<std::uint8_t> digits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        digits[i] = s[i] == 1 ? 1 : 0;
    }
    return PadicWord(2, std::move(digits));
}

inline BitString decode_2adic(const PadicWord &word) {
    if (word.base() != 2) {
        throw Error(Errc::BaseMismatch, "decode_2adic needs a base-2 word");
    }
    BitString out(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        out[i] = word.digits()[i] == 1 ? Bit{1} : Bit{-1};
    }
    return out;
}

/// digit = 2·alice + bob with -1 -> 0.
inline PadicWord encode_4adic(std::span<const Bit> alice, std::span<const Bit> bob) {
    if (alice.size() != bob.size()) {
        throw Error(Errc::LengthMismatch, "4-adic pairing needs equal lengths");
    }
    std::vector<std::uint8_t> digits(alice.size());
    for (std::size_t i = 0; i < alice.size(); ++i) {
        digits[i] = static_cast<std::uint8_t>((alice[i] == 1 ? 2 : 0) + (bob[i] == 1 ? 1 : 0));
    }
    return PadicWord(4, std::move(digits));
}

inline PadicWord encode_4adic(const EntangledPair &pair) {
    return encode_4adic(pair.alice_bits(), pair.bob_bits());
}

/// Inverse of encode_4adic: the (alice, bob) 2-adic pair.
inline std::pair<PadicWord, PadicWord> split_4adic(const PadicWord &word) {
    if (word.base() != 4) {
        throw Error(Errc::BaseMismatch, "split_4adic needs a base-4 word");
    }
    std::vector<std::uint8_t> hi(word.size());
    std::vector<std::uint8_t> lo(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        hi[i] = word.digits()[i] / 2;
        lo[i] = word.digits()[i] % 2;
    }
    return {PadicWord(2, std::move(hi)), PadicWord(2, std::move(lo))};
}

struct CollapseTrace {
    /// steps.front() is the initial word, steps.back() the single remaining digit.
    std::vector<PadicWord> steps;
    /// Elapsed shift steps (Planck times), initial length - 1.
    std::size_t step_count = 0;
};

inline CollapseTrace shift_collapse(const PadicWord &word) {
    if (word.size() == 0) {
        throw Error(Errc::DomainError, "cannot collapse an empty word");
    }
    CollapseTrace trace;
    trace.steps.reserve(word.size());
    trace.steps.push_back(word);
    while (trace.steps.back().size() > 1) {
        trace.steps.push_back(trace.steps.back().shifted());
    }
    trace.step_count = trace.steps.size() - 1;
    return trace;
}

/// p^-k with k the length of the common leading prefix; 0 for identical words.
inline Rational padic_distance(const PadicWord &x, const PadicWord &y) {
    if (x.base() != y.base()) {
        throw Error(Errc::BaseMismatch, "bases " + std::to_string(x.base()) + " and " + std::to_string(y.base()));
    }
    if (x.size() != y.size()) {
        throw Error(Errc::LengthMismatch, "words of length " + std::to_string(x.size()) + " and " +
                                              std::to_string(y.size()));
    }
    std::size_t k = 0;
    while (k < x.size() && x.digits()[k] == y.digits()[k]) {
        ++k;
    }
    if (k == x.size()) {
        return Rational(0);
    }
    Integer denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), x.base(), k);
    return Rational(Integer(1), denom);
}

}  // namespace raqm
