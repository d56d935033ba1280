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
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "raqm/rational.hpp"

namespace raqm {

/// Fractional part r - floor(r), always in [0, 1).
inline Rational fractional_part(const Rational &r) {
    return r - Rational(r.floor());
}

/// An angle stored as a fraction of a full turn, normalized to [0, 1).
class RationalAngle {
   public:
    RationalAngle() = default;

    explicit RationalAngle(const Rational &turns) : turns_(fractional_part(turns)) {
    }

    static RationalAngle from_degrees(const Rational &degrees) {
        return RationalAngle(degrees / Rational(360));
    }

    static RationalAngle parse(std::string_view text) {
        return RationalAngle(Rational::parse(text));
    }

    const Rational &turns() const {
        return turns_;
    }
    Rational degrees() const {
        return turns_ * Rational(360);
    }
    double radians() const {
        return 2.0 * std::numbers::pi * turns_.to_double();
    }

    /// Distance to `other` around the circle, in turns, in [0, 1/2].
    Rational circular_distance(const RationalAngle &other) const {
        Rational d = fractional_part(turns_ - other.turns_);
        Rational alt = Rational(1) - d;
        return d < alt ? d : alt;
    }

    friend RationalAngle operator+(const RationalAngle &x, const RationalAngle &y) {
        return RationalAngle(x.turns_ + y.turns_);
    }
    friend RationalAngle operator-(const RationalAngle &x, const RationalAngle &y) {
        return RationalAngle(x.turns_ - y.turns_);
    }
    RationalAngle scaled(const Rational &factor) const {
        return RationalAngle(turns_ * factor);
    }

    friend bool operator==(const RationalAngle &, const RationalAngle &) = default;

    friend std::ostream &operator<<(std::ostream &out, const RationalAngle &a) {
        return out << a.turns_ << " turn";
    }

   private:
    Rational turns_;
};

inline RationalAngle normalize_angle(const Rational &turns) {
    return RationalAngle(turns);
}

struct NivenVerdict {
    bool is_rational_cosine = false;
    std::optional<Rational> cosine_value;
};

/// The eight angles (in turns) whose cosine is rational, paired with that cosine.
inline const std::array<std::pair<Rational, Rational>, 8> &niven_table() {
    static const std::array<std::pair<Rational, Rational>, 8> table = {{
        {Rational(0), Rational(1)},
        {Rational(1, 6), Rational(1, 2)},
        {Rational(1, 4), Rational(0)},
        {Rational(1, 3), Rational(-1, 2)},
        {Rational(1, 2), Rational(-1)},
        {Rational(2, 3), Rational(-1, 2)},
        {Rational(3, 4), Rational(0)},
        {Rational(5, 6), Rational(1, 2)},
    }};
    return table;
}

/// cos of a rational angle is rational only on the eight table entries.
inline NivenVerdict niven_classify(const RationalAngle &angle) {
    // Every table entry has denominator 1, 2, 3, 4 or 6; reject the rest without a scan.
    const Integer &den = angle.turns().denominator();
    if (den > 6 || den == 5) {
        return {};
    }
    for (const auto &[turns, cosine] : niven_table()) {
        if (turns == angle.turns()) {
            return {true, cosine};
        }
    }
    return {};
}

}  // namespace raqm
