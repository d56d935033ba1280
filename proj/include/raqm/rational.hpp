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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "raqm/error.hpp"

namespace raqm {

using Integer = mpz_class;

inline Integer to_integer(long long value) {
    if constexpr (sizeof(long) == sizeof(long long)) {
        return Integer(static_cast<long>(value));
    } else {
        return Integer(std::to_string(value));
    }
}

/**
 * Exact rational number backed by GMP.
 *
 * The value is kept in lowest terms with a strictly positive denominator at all times, so
 * two Rationals are equal iff their numerators and denominators are equal.
 */
class Rational {
   public:
    Rational() = default;

    Rational(int value) : value_(value) {
    }
    Rational(long value) : value_(value) {
    }
    Rational(long long value) : value_(to_integer(value)) {
    }
    Rational(const Integer &value) : value_(value) {
    }

    Rational(const Integer &num, const Integer &den) {
        if (den == 0) {
            throw Error(Errc::DivisionByZero, "zero denominator");
        }
        value_.get_num() = num;
        value_.get_den() = den;
        value_.canonicalize();
    }

    Rational(long long num, long long den) : Rational(to_integer(num), to_integer(den)) {
    }

    explicit Rational(const mpq_class &value) : value_(value) {
        value_.canonicalize();
    }

    /// Accepts "p", "p/q" and "-p/q" (ASCII digits only, q != 0).
    static Rational parse(std::string_view text) {
        auto bad = [&]() { return Error(Errc::ParseError, "not a rational literal: '" + std::string(text) + "'"); };
        if (text.empty()) {
            throw bad();
        }
        auto slash = text.find('/');
        std::string_view num_text = text.substr(0, slash);
        std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        auto is_integer_literal = [](std::string_view s, bool allow_sign) {
            if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
                s.remove_prefix(1);
            }
            if (s.empty()) {
                return false;
            }
            for (char c : s) {
                if (c < '0' || c > '9') {
                    return false;
                }
            }
            return true;
        };
        if (!is_integer_literal(num_text, true) || !is_integer_literal(den_text, false)) {
            throw bad();
        }
        std::string num_str(num_text);
        if (num_str[0] == '+') {
            num_str.erase(0, 1);
        }
        Integer num(num_str, 10);
        Integer den(std::string(den_text), 10);
        if (den == 0) {
            throw Error(Errc::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
        }
        return Rational(num, den);
    }

    /// Always "p/q", including integers ("2/1").
    std::string to_string() const {
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    const Integer &numerator() const {
        return value_.get_num();
    }
    const Integer &denominator() const {
        return value_.get_den();
    }
    const mpq_class &gmp() const {
        return value_;
    }

    int sign() const {
        return sgn(value_);
    }
    bool is_zero() const {
        return sign() == 0;
    }
    bool is_integer() const {
        return value_.get_den() == 1;
    }
    double to_double() const {
        return value_.get_d();
    }

    /// Largest integer not exceeding the value.
    Integer floor() const {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
        return q;
    }

    Rational abs() const {
        return Rational(mpq_class(::abs(value_)));
    }

    Rational inverse() const {
        if (is_zero()) {
            throw Error(Errc::DivisionByZero, "inverse of zero");
        }
        return Rational(value_.get_den(), value_.get_num());
    }

    Rational operator-() const {
        return Rational(mpq_class(-value_));
    }

    Rational &operator+=(const Rational &o) {
        value_ += o.value_;
        return *this;
    }
    Rational &operator-=(const Rational &o) {
        value_ -= o.value_;
        return *this;
    }
    Rational &operator*=(const Rational &o) {
        value_ *= o.value_;
        return *this;
    }
    Rational &operator/=(const Rational &o) {
        if (o.is_zero()) {
            throw Error(Errc::DivisionByZero, "division by zero");
        }
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) {
        return a += b;
    }
    friend Rational operator-(Rational a, const Rational &b) {
        return a -= b;
    }
    friend Rational operator*(Rational a, const Rational &b) {
        return a *= b;
    }
    friend Rational operator/(Rational a, const Rational &b) {
        return a /= b;
    }

    friend bool operator==(const Rational &a, const Rational &b) {
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream &operator<<(std::ostream &out, const Rational &r) {
        return out << r.to_string();
    }

   private:
    mpq_class value_;
};

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer &n) {
    if (sgn(n) < 0) {
        throw Error(Errc::NegativeInput, "isqrt of negative integer");
    }
    Integer root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root;
}

inline bool is_perfect_square(const Integer &n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

/// Exact square root when both numerator and denominator (in lowest terms) are perfect squares.
inline std::optional<Rational> rational_sqrt(const Rational &r) {
    if (r.sign() < 0) {
        throw Error(Errc::NegativeInput, "rational_sqrt of " + r.to_string());
    }
    if (!is_perfect_square(r.numerator()) || !is_perfect_square(r.denominator())) {
        return std::nullopt;
    }
    return Rational(isqrt(r.numerator()), isqrt(r.denominator()));
}

}  // namespace raqm

template <>
struct std::hash<raqm::Rational> {
    size_t operator()(const raqm::Rational &r) const noexcept {
        size_t h = mpz_fdiv_ui(r.numerator().get_mpz_t(), 1000000007UL);
        size_t g = mpz_fdiv_ui(r.denominator().get_mpz_t(), 998244353UL);
        return h * 1315423911u ^ g;
    }
};
