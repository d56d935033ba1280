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

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>

#include "raqm/rational.hpp"

namespace raqm {

inline constexpr std::uint64_t kDefaultTrialDivisionBound = 1000000;

/// n = square_part^2 * square_free, square_free having no repeated prime factor.
struct SquareFreeDecomposition {
    Integer square_part;
    Integer square_free;
};

/**
 * Trial division by every candidate up to `bound`. A cofactor left over after that is
 * square-free when it is below bound^2 (it must then be prime); anything larger might hide a
 * repeated large prime, so it is rejected rather than guessed at.
 */
inline SquareFreeDecomposition square_free_decompose(const Integer &n,
                                                     std::uint64_t bound = kDefaultTrialDivisionBound) {
    if (sgn(n) <= 0) {
        throw Error(Errc::NegativeInput, "square-free decomposition needs n >= 1, got " + n.get_str());
    }
    Integer rest = n;
    Integer square_part = 1;
    Integer square_free = 1;
    Integer p2;
    bool reached_sqrt = false;
    for (std::uint64_t p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
        p2 = p;
        p2 *= p;
        if (p2 > rest) {
            reached_sqrt = true;
            break;
        }
        unsigned exponent = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++exponent;
        }
        for (unsigned k = 0; k + 1 < exponent; k += 2) {
            square_part *= p;
        }
        if (exponent % 2 == 1) {
            square_free *= p;
        }
    }
    if (rest > 1) {
        Integer limit = bound;
        limit *= bound;
        if (!reached_sqrt && rest > limit) {
            throw Error(Errc::FactorizationBound,
                        "cofactor " + rest.get_str() + " exceeds trial-division bound " + std::to_string(bound));
        }
        // rest has no factor <= min(bound, sqrt(rest)), so it is 1 or prime.
        square_free *= rest;
    }
    return {square_part, square_free};
}

/// a + b*sqrt(d), d square-free. Rational values are stored with b = 0 and d = 1.
class QuadraticSurd {
   public:
    QuadraticSurd() = default;

    QuadraticSurd(const Rational &value) : a_(value) {
    }

    /// a + b*sqrt(radicand); the radicand is reduced to its square-free part.
    QuadraticSurd(const Rational &a, const Rational &b, const Integer &radicand) : a_(a), b_(b), d_(1) {
        if (sgn(radicand) < 0) {
            throw Error(Errc::NegativeInput, "negative radicand " + radicand.get_str());
        }
        if (b_.is_zero() || sgn(radicand) == 0) {
            b_ = 0;
            return;
        }
        auto dec = square_free_decompose(radicand);
        b_ *= Rational(dec.square_part);
        d_ = dec.square_free;
        normalize();
    }

    /// sqrt(r) for r >= 0: sqrt(p/q) = sqrt(p*q)/q.
    static QuadraticSurd sqrt_of(const Rational &r) {
        if (r.sign() < 0) {
            throw Error(Errc::NegativeInput, "sqrt of " + r.to_string());
        }
        return QuadraticSurd(0, Rational(Integer(1), r.denominator()), r.numerator() * r.denominator());
    }

    const Rational &rational_part() const {
        return a_;
    }
    const Rational &surd_coefficient() const {
        return b_;
    }
    const Integer &radicand() const {
        return d_;
    }

    bool is_rational() const {
        return b_.is_zero();
    }

    double to_double() const {
        return a_.to_double() + b_.to_double() * std::sqrt(d_.get_d());
    }

    /// Sign of the exact value: compares a^2 and b^2 d when a and b disagree in sign.
    int sign() const {
        int sa = a_.sign();
        int sb = b_.sign();
        if (sb == 0) {
            return sa;
        }
        if (sa == 0 || sa == sb) {
            return sb;
        }
        Rational lhs = a_ * a_;
        Rational rhs = b_ * b_ * Rational(d_);
        if (lhs == rhs) {
            return 0;
        }
        return lhs > rhs ? sa : sb;
    }

    QuadraticSurd operator-() const {
        QuadraticSurd out = *this;
        out.a_ = -a_;
        out.b_ = -b_;
        return out;
    }

    friend QuadraticSurd operator+(const QuadraticSurd &x, const QuadraticSurd &y) {
        Integer d = common_radicand(x, y);
        QuadraticSurd out;
        out.a_ = x.a_ + y.a_;
        out.b_ = x.b_ + y.b_;
        out.d_ = d;
        out.normalize();
        return out;
    }

    friend QuadraticSurd operator-(const QuadraticSurd &x, const QuadraticSurd &y) {
        return x + (-y);
    }

    /// (a + b√d)(a' + b'√d) = (aa' + bb'd) + (ab' + a'b)√d
    friend QuadraticSurd operator*(const QuadraticSurd &x, const QuadraticSurd &y) {
        Integer d = common_radicand(x, y);
        QuadraticSurd out;
        out.a_ = x.a_ * y.a_ + x.b_ * y.b_ * Rational(d);
        out.b_ = x.a_ * y.b_ + y.a_ * x.b_;
        out.d_ = d;
        out.normalize();
        return out;
    }

    friend bool operator==(const QuadraticSurd &x, const QuadraticSurd &y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }

    std::string to_string() const {
        if (is_rational()) {
            return a_.to_string();
        }
        return a_.to_string() + " + " + b_.to_string() + "*sqrt(" + d_.get_str() + ")";
    }

    friend std::ostream &operator<<(std::ostream &out, const QuadraticSurd &s) {
        return out << s.to_string();
    }

   private:
    static Integer common_radicand(const QuadraticSurd &x, const QuadraticSurd &y) {
        if (x.is_rational()) {
            return y.d_;
        }
        if (y.is_rational() || x.d_ == y.d_) {
            return x.d_;
        }
        throw Error(Errc::MixedRadicands, "sqrt(" + x.d_.get_str() + ") vs sqrt(" + y.d_.get_str() + ")");
    }

    void normalize() {
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
        }
        if (b_.is_zero()) {
            d_ = 1;
        }
    }

    Rational a_;
    Rational b_;
    Integer d_ = 1;
};

inline QuadraticSurd surd_mul(const QuadraticSurd &x, const QuadraticSurd &y) {
    return x * y;
}

}  // namespace raqm
