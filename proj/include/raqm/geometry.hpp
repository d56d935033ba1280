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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "raqm/angle.hpp"
#include "raqm/error.hpp"
#include "raqm/rational.hpp"

namespace raqm {

/// Spherical triangle data at one vertex: cosines of the two adjacent sides and the angle
/// between them.
struct TriangleSpec {
    Rational cos_AB;
    Rational cos_BC;
    RationalAngle phi_B;
};

enum class Obstruction {
    /// 2φ is not one of the eight rational-cosine angles, so cos^2 φ is irrational.
    NonNivenAngle,
    /// cos^2 φ is rational but sin θ_AB sin θ_BC cos φ is not.
    NonSquareProduct,
    /// The settings are not representable on the bit-string grid at the requested L.
    OffGrid,
};

inline std::string_view obstruction_name(Obstruction o) {
    switch (o) {
        case Obstruction::NonNivenAngle: return "NonNivenAngle";
        case Obstruction::NonSquareProduct: return "NonSquareProduct";
        case Obstruction::OffGrid: return "OffGrid";
    }
    return "Unknown";
}

struct DefinednessVerdict {
    bool third_side_rational = false;
    std::optional<Rational> cos_AC;
    std::optional<Obstruction> obstruction;

    static DefinednessVerdict defined(Rational cosine) {
        return {true, std::move(cosine), std::nullopt};
    }
    static DefinednessVerdict undefined(Obstruction why) {
        return {false, std::nullopt, why};
    }
};

namespace detail {

inline void check_cosine(const Rational &c, std::string_view name) {
    if (c.abs() > Rational(1)) {
        throw Error(Errc::DomainError, std::string(name) + " = " + c.to_string() + " is outside [-1, 1]");
    }
}

/// cos^2 φ = (1 + cos 2φ)/2, which is rational iff 2φ is a Niven angle.
inline std::optional<Rational> rational_cos_squared(const RationalAngle &phi) {
    NivenVerdict doubled = niven_classify(phi.scaled(2));
    if (!doubled.is_rational_cosine) {
        return std::nullopt;
    }
    return (Rational(1) + *doubled.cosine_value) / Rational(2);
}

/// Sign of cos φ from the quadrant of φ in [0, 1) turn.
inline int cos_sign(const RationalAngle &phi) {
    const Rational &t = phi.turns();
    static const Rational quarter(1, 4);
    static const Rational three_quarters(3, 4);
    if (t == quarter || t == three_quarters) {
        return 0;
    }
    return (t < quarter || t > three_quarters) ? 1 : -1;
}

}  // namespace detail

/**
 * Decides whether the cosine rule
 *     cos θ_AC = cos θ_AB cos θ_BC + sin θ_AB sin θ_BC cos φ_B
 * yields a rational cos θ_AC, and returns it when it does.
 *
 * With r = (1 - cos^2 θ_AB)(1 - cos^2 θ_BC), the product term equals sign(cos φ)·sqrt(r cos^2 φ),
 * so the answer is rational iff cos^2 φ is rational and r cos^2 φ is a rational square.
 */
inline DefinednessVerdict third_side_cosine(const TriangleSpec &t) {
    detail::check_cosine(t.cos_AB, "cos_AB");
    detail::check_cosine(t.cos_BC, "cos_BC");
    const Rational one(1);
    Rational product = t.cos_AB * t.cos_BC;
    // A side of length 0 or π has sin θ = 0, leaving only the product term.
    if (t.cos_AB.abs() == one || t.cos_BC.abs() == one) {
        return DefinednessVerdict::defined(product);
    }
    auto cos2 = detail::rational_cos_squared(t.phi_B);
    if (!cos2) {
        return DefinednessVerdict::undefined(Obstruction::NonNivenAngle);
    }
    Rational r = (one - t.cos_AB * t.cos_AB) * (one - t.cos_BC * t.cos_BC);
    auto root = rational_sqrt(r * *cos2);
    if (!root) {
        return DefinednessVerdict::undefined(Obstruction::NonSquareProduct);
    }
    int s = detail::cos_sign(t.phi_B);
    if (s < 0) {
        return DefinednessVerdict::defined(product - *root);
    }
    return DefinednessVerdict::defined(product + *root);
}

/// Is the world with SG_B and SG_C swapped defined? Same decision, read as "cos θ_AC ∈ ℚ".
inline DefinednessVerdict swap_counterfactual_defined(const Rational &cos_AB, const Rational &cos_BC,
                                                      const RationalAngle &phi_B) {
    return third_side_cosine({cos_AB, cos_BC, phi_B});
}

/**
 * Second Bell counterfactual: given rational cos θ_AB, cos θ_AC and the exact dihedral φ_A at
 * vertex A, can cos θ_BC be rational? On success cos_AC of the verdict carries cos θ_BC.
 */
inline DefinednessVerdict bell_counterfactuals_defined(const Rational &cos_AB, const Rational &cos_AC,
                                                       const RationalAngle &phi_A) {
    return third_side_cosine({cos_AB, cos_AC, phi_A});
}

struct CensusPhase {
    RationalAngle phase;
    Rational cosine;
};

struct CensusReport {
    std::size_t L = 0;
    RationalAngle nominal;
    Rational window;
    std::size_t total = 0;
    /// Grid phases where cos φ and φ/π are both rational.
    std::vector<CensusPhase> doubly_rational;
};

/**
 * Enumerates the grid phases k/L (in turns) within `window` of `nominal` (circular distance)
 * and lists those that are Niven angles.
 */
inline CensusReport complementarity_census(std::size_t L, const RationalAngle &nominal, const Rational &window) {
    if (L == 0) {
        throw Error(Errc::BadL, "L must be >= 1");
    }
    if (window.sign() <= 0) {
        throw Error(Errc::DomainError, "census window must be positive, got " + window.to_string());
    }
    CensusReport report{L, nominal, window, 0, {}};
    const Rational big_l(static_cast<long long>(L));
    // Candidate k lie in [ceil((nominal - window) L), floor((nominal + window) L)], taken mod L.
    Rational lo = (nominal.turns() - window) * big_l;
    Rational hi = (nominal.turns() + window) * big_l;
    Integer k_lo = -((-lo).floor());
    Integer k_hi = hi.floor();
    Integer span = k_hi - k_lo + 1;
    Integer big_l_int(static_cast<unsigned long>(L));
    if (span > big_l_int) {
        k_hi = k_lo + big_l_int - 1;
    }
    for (Integer k = k_lo; k <= k_hi; ++k) {
        RationalAngle phase(Rational(k, big_l_int));
        if (phase.circular_distance(nominal) > window) {
            continue;
        }
        ++report.total;
        NivenVerdict v = niven_classify(phase);
        if (v.is_rational_cosine) {
            report.doubly_rational.push_back({phase, *v.cosine_value});
        }
    }
    return report;
}

}  // namespace raqm
