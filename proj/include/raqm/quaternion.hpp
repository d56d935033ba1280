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
#include <utility>
#include <vector>

#include "raqm/bitstring.hpp"
#include "raqm/error.hpp"

namespace raqm {

/**
 * A signed permutation acting on length-L strings:
 *     apply(op, s)[k] = sign[k] * s[source[k]]
 * i.e. row k of the matrix has a single ±1 entry, in column source[k].
 */
class SignedPermutationOp {
   public:
    SignedPermutationOp(std::vector<std::uint32_t> source, std::vector<Bit> sign)
        : source_(std::move(source)), sign_(std::move(sign)) {
        if (source_.size() != sign_.size()) {
            throw Error(Errc::LengthMismatch, "source and sign maps differ in length");
        }
        std::vector<bool> seen(source_.size(), false);
        for (auto v : source_) {
            if (v >= source_.size() || seen[v]) {
                throw Error(Errc::OutOfRange, "source map is not a bijection");
            }
            seen[v] = true;
        }
        for (Bit s : sign_) {
            if (s != 1 && s != -1) {
                throw Error(Errc::DomainError, "signs must be +1 or -1");
            }
        }
    }

    static SignedPermutationOp identity(std::size_t L) {
        return scalar(L, 1);
    }

    /// -1_L.
    static SignedPermutationOp negation(std::size_t L) {
        return scalar(L, -1);
    }

    std::size_t size() const {
        return source_.size();
    }
    const std::vector<std::uint32_t> &source() const {
        return source_;
    }
    const std::vector<Bit> &sign() const {
        return sign_;
    }

    SignedPermutationOp inverse() const {
        std::vector<std::uint32_t> src(size());
        std::vector<Bit> sgn(size());
        for (std::size_t k = 0; k < size(); ++k) {
            src[source_[k]] = static_cast<std::uint32_t>(k);
            sgn[source_[k]] = sign_[k];
        }
        return SignedPermutationOp(std::move(src), std::move(sgn));
    }

    friend bool operator==(const SignedPermutationOp &, const SignedPermutationOp &) = default;

   private:
    static SignedPermutationOp scalar(std::size_t L, Bit s) {
        std::vector<std::uint32_t> src(L);
        for (std::size_t k = 0; k < L; ++k) {
            src[k] = static_cast<std::uint32_t>(k);
        }
        return SignedPermutationOp(std::move(src), std::vector<Bit>(L, s));
    }

    std::vector<std::uint32_t> source_;
    std::vector<Bit> sign_;
};

template <typename T>
std::vector<T> apply(const SignedPermutationOp &op, std::span<const T> s) {
    if (s.size() != op.size()) {
        throw Error(Errc::LengthMismatch, "operator of size " + std::to_string(op.size()) + " on string of length " +
                                              std::to_string(s.size()));
    }
    std::vector<T> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        out[k] = static_cast<T>(op.sign()[k] * s[op.source()[k]]);
    }
    return out;
}

inline BitString apply(const SignedPermutationOp &op, const BitString &s) {
    return apply<Bit>(op, std::span<const Bit>(s));
}

/// p∘q: apply(compose(p, q), s) == apply(p, apply(q, s)).
inline SignedPermutationOp compose(const SignedPermutationOp &p, const SignedPermutationOp &q) {
    if (p.size() != q.size()) {
        throw Error(Errc::LengthMismatch, "composing operators of size " + std::to_string(p.size()) + " and " +
                                              std::to_string(q.size()));
    }
    std::vector<std::uint32_t> src(p.size());
    std::vector<Bit> sgn(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        std::uint32_t mid = p.source()[k];
        src[k] = q.source()[mid];
        sgn[k] = static_cast<Bit>(p.sign()[k] * q.sign()[mid]);
    }
    return SignedPermutationOp(std::move(src), std::move(sgn));
}

namespace detail {

/// Writes `sign * block(i)` into rows [row, row + width) from columns [col, col + width),
/// where block is the identity (unit = true) or the block-diagonal of 2x2 i's.
inline void place_block(std::vector<std::uint32_t> &src, std::vector<Bit> &sgn, std::size_t row, std::size_t col,
                        std::size_t width, bool unit, Bit sign) {
    for (std::size_t k = 0; k < width; ++k) {
        if (unit) {
            src[row + k] = static_cast<std::uint32_t>(col + k);
            sgn[row + k] = sign;
        } else if (k % 2 == 0) {
            // i {a1, a2} = {a2, -a1}
            src[row + k] = static_cast<std::uint32_t>(col + k + 1);
            sgn[row + k] = sign;
        } else {
            src[row + k] = static_cast<std::uint32_t>(col + k - 1);
            sgn[row + k] = static_cast<Bit>(-sign);
        }
    }
}

}  // namespace detail

/// The 2x2 discretised imaginary unit i{a1, a2} = {a2, -a1}, repeated along the diagonal.
inline SignedPermutationOp imaginary_unit(std::size_t L) {
    if (L == 0 || L % 2 != 0) {
        throw Error(Errc::BadL, "i needs an even length, got " + std::to_string(L));
    }
    std::vector<std::uint32_t> src(L);
    std::vector<Bit> sgn(L);
    detail::place_block(src, sgn, 0, 0, L, false, 1);
    return SignedPermutationOp(std::move(src), std::move(sgn));
}

/**
 * J1, J2, J3 on length-L strings, 4 | L.
 *
 * For 8 | L the operators are the 4x4 block matrices with L/4-wide blocks, I being the
 * block-diagonal of 2x2 i's:
 *     J1 = diag(I, I, -I, -I)
 *     J2 = [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]
 *     J3 = [[0, 0, I, 0], [0, 0, 0, -I], [I, 0, 0, 0], [0, -I, 0, 0]]
 * An L/4-wide I does not exist when L/4 is odd. Those lengths use 2x2 blocks of width L/2:
 *     J1 = diag(I, -I),  J2 = [[0, 1], [-1, 0]],  J3 = [[0, I], [I, 0]]
 * which is the same J1 and satisfies the same relations.
 */
inline SignedPermutationOp build_J(int k, std::size_t L) {
    if (k < 1 || k > 3) {
        throw Error(Errc::OutOfRange, "J index must be 1, 2 or 3");
    }
    if (L == 0 || L % 4 != 0) {
        throw Error(Errc::BadL, "J operators need 4 | L, got L = " + std::to_string(L));
    }
    std::vector<std::uint32_t> src(L);
    std::vector<Bit> sgn(L);
    if (L % 8 == 0) {
        const std::size_t w = L / 4;
        switch (k) {
            case 1:
                detail::place_block(src, sgn, 0, 0, w, false, 1);
                detail::place_block(src, sgn, w, w, w, false, 1);
                detail::place_block(src, sgn, 2 * w, 2 * w, w, false, -1);
                detail::place_block(src, sgn, 3 * w, 3 * w, w, false, -1);
                break;
            case 2:
                detail::place_block(src, sgn, 0, 2 * w, w, true, 1);
                detail::place_block(src, sgn, w, 3 * w, w, true, -1);
                detail::place_block(src, sgn, 2 * w, 0, w, true, -1);
                detail::place_block(src, sgn, 3 * w, w, w, true, 1);
                break;
            default:
                detail::place_block(src, sgn, 0, 2 * w, w, false, 1);
                detail::place_block(src, sgn, w, 3 * w, w, false, -1);
                detail::place_block(src, sgn, 2 * w, 0, w, false, 1);
                detail::place_block(src, sgn, 3 * w, w, w, false, -1);
                break;
        }
    } else {
        const std::size_t h = L / 2;
        switch (k) {
            case 1:
                detail::place_block(src, sgn, 0, 0, h, false, 1);
                detail::place_block(src, sgn, h, h, h, false, -1);
                break;
            case 2:
                detail::place_block(src, sgn, 0, h, h, true, 1);
                detail::place_block(src, sgn, h, 0, h, true, -1);
                break;
            default:
                detail::place_block(src, sgn, 0, h, h, false, 1);
                detail::place_block(src, sgn, h, 0, h, false, 1);
                break;
        }
    }
    return SignedPermutationOp(std::move(src), std::move(sgn));
}

/// ζ^n: cyclic rotation by n places, matching rotate() in bitstring.hpp.
inline SignedPermutationOp zeta_power(std::size_t n, std::size_t L) {
    if (L == 0) {
        throw Error(Errc::BadL, "L must be >= 1");
    }
    if (n >= L) {
        throw Error(Errc::OutOfRange, "ζ power " + std::to_string(n) + " must be below L = " + std::to_string(L));
    }
    std::vector<std::uint32_t> src(L);
    for (std::size_t k = 0; k < L; ++k) {
        src[k] = static_cast<std::uint32_t>((k + L - n) % L);
    }
    return SignedPermutationOp(std::move(src), std::vector<Bit>(L, Bit{1}));
}

/// Elementary ζ composed with itself `times` times (no reduction mod L).
inline SignedPermutationOp zeta_iterate(std::size_t times, std::size_t L) {
    SignedPermutationOp step = zeta_power(L > 1 ? 1 : 0, L);
    SignedPermutationOp out = SignedPermutationOp::identity(L);
    for (std::size_t t = 0; t < times; ++t) {
        out = compose(step, out);
    }
    return out;
}

}  // namespace raqm
