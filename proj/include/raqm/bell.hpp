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

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raqm/angle.hpp"
#include "raqm/entanglement.hpp"
#include "raqm/error.hpp"
#include "raqm/geometry.hpp"
#include "raqm/random.hpp"
#include "raqm/rational.hpp"

namespace raqm {

/// Jitter offsets and sampled dihedral angles are multiples of 1/kJitterDenominator turn.
inline constexpr long long kJitterDenominator = 1000000;

/// A direction in the common measurement plane, chosen to within ±tolerance turns.
struct NominalSetting {
    RationalAngle direction;
    Rational tolerance;

    NominalSetting(RationalAngle dir, Rational tol) : direction(std::move(dir)), tolerance(std::move(tol)) {
        if (tolerance.sign() <= 0) {
            throw Error(Errc::DomainError, "nominal tolerance must be positive, got " + tolerance.to_string());
        }
    }
};

struct BellSettings {
    NominalSetting a;
    NominalSetting b;
    NominalSetting c;

    /// 0°, 60°, 120° with tolerance 1/360 turn.
    static BellSettings defaults() {
        Rational tol(1, 360);
        return {{RationalAngle(Rational(0)), tol}, {RationalAngle(Rational(1, 6)), tol},
                {RationalAngle(Rational(1, 3)), tol}};
    }
};

enum class Ensemble { AB = 0, AC = 1, BC = 2 };

inline constexpr std::array<Ensemble, 3> kEnsembles = {Ensemble::AB, Ensemble::AC, Ensemble::BC};

inline std::string_view ensemble_name(Ensemble e) {
    switch (e) {
        case Ensemble::AB: return "AB";
        case Ensemble::AC: return "AC";
        case Ensemble::BC: return "BC";
    }
    return "?";
}

/// Exact relative setting of one run. block_count k gives cos θ = 1 - 4k/L.
struct ExactSetting {
    Rational cos_between;
    long long grid_index = 0;
    std::size_t block_count = 0;
};

namespace detail {

/// Relative angle between two directions folded to [0, 1/2] turn.
inline double folded_turns(const Rational &turns) {
    double t = fractional_part(turns).to_double();
    return t <= 0.5 ? t : 1.0 - t;
}

/// Angle (turns) of the k-th singlet-compatible cosine 1 - 4k/L.
inline double grid_angle(std::size_t k, std::size_t L) {
    double c = 1.0 - 4.0 * static_cast<double>(k) / static_cast<double>(L);
    return std::acos(std::clamp(c, -1.0, 1.0)) / (2.0 * std::numbers::pi);
}

/// Index k in [0, L/2] whose grid angle is nearest to `turns` (ties to the smaller k).
inline std::size_t nearest_grid_index(double turns, std::size_t L) {
    const std::size_t k_max = L / 2;
    double guess = (1.0 - std::cos(2.0 * std::numbers::pi * turns)) * static_cast<double>(L) / 4.0;
    auto centre = static_cast<long long>(std::llround(guess));
    std::size_t best = 0;
    double best_gap = 2.0;
    for (long long k = centre - 2; k <= centre + 2; ++k) {
        if (k < 0 || k > static_cast<long long>(k_max)) {
            continue;
        }
        double gap = std::abs(grid_angle(static_cast<std::size_t>(k), L) - turns);
        if (gap < best_gap) {
            best_gap = gap;
            best = static_cast<std::size_t>(k);
        }
    }
    return best;
}

inline Rational draw_offset(Rng &rng, const Rational &tolerance) {
    Rational scaled = tolerance * Rational(kJitterDenominator);
    long long reach = static_cast<long long>(scaled.floor().get_si());
    return Rational(rng.between(-reach, reach), kJitterDenominator);
}

/// Nonzero offset j/10^6 with 1 <= |j| <= tolerance·10^6: exact settings are never exactly coplanar.
inline Rational draw_dihedral_offset(Rng &rng, const Rational &tolerance) {
    Rational scaled = tolerance * Rational(kJitterDenominator);
    long long reach = std::max<long long>(1, scaled.floor().get_si());
    long long j = rng.between(1, reach);
    return Rational(rng.below(2) == 0 ? -j : j, kJitterDenominator);
}

}  // namespace detail

/**
 * Draws a uniform jitter inside both nominal neighbourhoods, then snaps the resulting relative
 * angle to the nearest one whose cosine 1 - 4k/L admits a singlet at this L and which lies in
 * the joint window |θ - θ_nom| <= tol_nominal + tol_partner. Fails when the window holds none.
 */
inline ExactSetting snap_to_grid(const NominalSetting &nominal, const NominalSetting &partner, std::size_t L,
                                 std::uint64_t jitter_seed) {
    if (L == 0 || L % 2 != 0) {
        throw Error(Errc::BadL, "singlet grid needs an even L, got " + std::to_string(L));
    }
    Rng rng(jitter_seed);
    Rational jitter_nominal = detail::draw_offset(rng, nominal.tolerance);
    Rational jitter_partner = detail::draw_offset(rng, partner.tolerance);
    Rational nominal_relative = nominal.direction.turns() - partner.direction.turns();
    double theta_nominal = detail::folded_turns(nominal_relative);
    double theta_exact = detail::folded_turns(nominal_relative + jitter_nominal - jitter_partner);

    // Nearest grid angle to the jittered one, among those inside the joint window.
    double window = (nominal.tolerance + partner.tolerance).to_double() * (1.0 + 1e-12);
    const auto centre = static_cast<long long>(detail::nearest_grid_index(theta_exact, L));
    std::optional<std::size_t> chosen;
    double best_gap = 2.0;
    for (long long c = centre - 3; c <= centre + 3; ++c) {
        if (c < 0 || c > static_cast<long long>(L / 2)) {
            continue;
        }
        auto cand = static_cast<std::size_t>(c);
        double angle = detail::grid_angle(cand, L);
        if (std::abs(angle - theta_nominal) > window) {
            continue;
        }
        double gap = std::abs(angle - theta_exact);
        if (gap < best_gap) {
            best_gap = gap;
            chosen = cand;
        }
    }
    if (!chosen) {
        throw Error(Errc::NoCompatibleSetting, "no singlet-compatible angle within " + std::to_string(window) +
                                                   " turn of " + std::to_string(theta_nominal) + " at L = " +
                                                   std::to_string(L));
    }
    const std::size_t k = *chosen;
    std::size_t k_nominal = detail::nearest_grid_index(theta_nominal, L);
    Rational cosine = Rational(1) - Rational(static_cast<long long>(4 * k), static_cast<long long>(L));
    return {cosine, static_cast<long long>(k) - static_cast<long long>(k_nominal), k};
}

struct BellRunLog {
    std::size_t run_id = 0;
    Ensemble ensemble = Ensemble::AB;
    std::uint64_t xi_seed = 0;
    std::uint64_t jitter_seed = 0;
    Rational exact_cos;
    long long grid_index = 0;
    Bit alice = 1;
    Bit bob = 1;
};

struct EnsembleSummary {
    Ensemble ensemble = Ensemble::AB;
    std::size_t runs = 0;
    /// cos of the nominal relative angle, when rational.
    std::optional<Rational> nominal_cos;
    /// -nominal_cos: the correlation predicted for the nominal settings.
    std::optional<Rational> exact_co;
    /// Mean of -cos θ over the snapped exact settings.
    Rational exact_mean_co;
    double empirical_co = 0;
    double standard_error = 0;
};

struct BellReport {
    std::size_t L = 0;
    std::size_t runs_per_ensemble = 0;
    std::uint64_t master_seed = 0;
    std::array<EnsembleSummary, 3> ensembles;
    /// |Co_AB - Co_AC| - Co_BC from exact_co; absent if a nominal cosine is irrational.
    std::optional<Rational> statistic;
    Rational exact_mean_statistic;
    double empirical_statistic = 0;
    double empirical_sigma = 0;

    const EnsembleSummary &summary(Ensemble e) const {
        return ensembles[static_cast<std::size_t>(e)];
    }
};

struct BellExperiment {
    BellReport report;
    std::vector<BellRunLog> logs;
};

inline std::pair<const NominalSetting &, const NominalSetting &> ensemble_settings(const BellSettings &s,
                                                                                  Ensemble e) {
    switch (e) {
        case Ensemble::AB: return {s.a, s.b};
        case Ensemble::AC: return {s.a, s.c};
        default: return {s.b, s.c};
    }
}

inline std::uint64_t run_jitter_seed(std::uint64_t master, Ensemble e, std::size_t run) {
    return derive_seed(master, {static_cast<std::uint64_t>(e), run, 0});
}
inline std::uint64_t run_xi_seed(std::uint64_t master, Ensemble e, std::size_t run) {
    return derive_seed(master, {static_cast<std::uint64_t>(e), run, 1});
}

/// |a - b| - c, the left side of the three-setting Bell inequality.
inline Rational bell_statistic(const Rational &co_ab, const Rational &co_ac, const Rational &co_bc) {
    return (co_ab - co_ac).abs() - co_bc;
}

inline double bell_statistic(double co_ab, double co_ac, double co_bc) {
    return std::abs(co_ab - co_ac) - co_bc;
}

/**
 * Runs the three sub-ensembles. Every run gets its own jitter and ξ seed derived from
 * master_seed, snaps to an exact setting and measures the singlet at M(ξ).
 *
 * The canonical singlet for each exact cosine is built once; the outcome at M(ξ) is then read
 * from it, which is what make_singlet(L, cos, from_seed(xi_seed, L)) followed by joint_measure
 * would return.
 */
inline BellExperiment run_bell_experiment(const BellSettings &settings, std::size_t L, std::size_t runs_per_ensemble,
                                          std::uint64_t master_seed) {
    if (runs_per_ensemble == 0) {
        throw Error(Errc::OutOfRange, "runs_per_ensemble must be >= 1");
    }
    BellExperiment out;
    out.logs.reserve(3 * runs_per_ensemble);
    BellReport &report = out.report;
    report.L = L;
    report.runs_per_ensemble = runs_per_ensemble;
    report.master_seed = master_seed;

    std::map<Rational, SingletPair> singlets;
    const HiddenPermutation identity = HiddenPermutation::identity(L);
    for (Ensemble e : kEnsembles) {
        auto [first, second] = ensemble_settings(settings, e);
        EnsembleSummary &summary = report.ensembles[static_cast<std::size_t>(e)];
        summary.ensemble = e;
        summary.runs = runs_per_ensemble;
        NivenVerdict nominal = niven_classify(first.direction - second.direction);
        if (nominal.is_rational_cosine) {
            summary.nominal_cos = nominal.cosine_value;
            summary.exact_co = -*nominal.cosine_value;
        }

        Rational cos_sum(0);
        long long product_sum = 0;
        for (std::size_t run = 0; run < runs_per_ensemble; ++run) {
            BellRunLog log;
            log.run_id = run;
            log.ensemble = e;
            log.jitter_seed = run_jitter_seed(master_seed, e, run);
            log.xi_seed = run_xi_seed(master_seed, e, run);
            ExactSetting exact;
            try {
                exact = snap_to_grid(first, second, L, log.jitter_seed);
            } catch (const Error &err) {
                throw Error(err.code(), "run " + std::to_string(run) + " (" + std::string(ensemble_name(e)) +
                                            "): " + err.what());
            }
            log.exact_cos = exact.cos_between;
            log.grid_index = exact.grid_index;
            auto it = singlets.find(exact.cos_between);
            if (it == singlets.end()) {
                it = singlets.emplace(exact.cos_between, make_singlet(L, exact.cos_between, identity)).first;
            }
            JointOutcome o =
                joint_measure_at(it->second, HiddenPermutation::measured_index_for_seed(log.xi_seed, L));
            log.alice = o.alice;
            log.bob = o.bob;
            cos_sum += exact.cos_between;
            product_sum += o.alice * o.bob;
            out.logs.push_back(std::move(log));
        }
        const double n = static_cast<double>(runs_per_ensemble);
        summary.exact_mean_co = -cos_sum / Rational(static_cast<long long>(runs_per_ensemble));
        summary.empirical_co = static_cast<double>(product_sum) / n;
        summary.standard_error = std::sqrt(std::max(0.0, 1.0 - summary.empirical_co * summary.empirical_co) / n);
    }

    const auto &ab = report.summary(Ensemble::AB);
    const auto &ac = report.summary(Ensemble::AC);
    const auto &bc = report.summary(Ensemble::BC);
    if (ab.exact_co && ac.exact_co && bc.exact_co) {
        report.statistic = bell_statistic(*ab.exact_co, *ac.exact_co, *bc.exact_co);
    }
    report.exact_mean_statistic = bell_statistic(ab.exact_mean_co, ac.exact_mean_co, bc.exact_mean_co);
    report.empirical_statistic = bell_statistic(ab.empirical_co, ac.empirical_co, bc.empirical_co);
    report.empirical_sigma = std::sqrt(ab.standard_error * ab.standard_error + ac.standard_error * ac.standard_error +
                                       bc.standard_error * bc.standard_error);
    return out;
}

struct CorrelationRow {
    Ensemble ensemble = Ensemble::AB;
    Rational exact_cos;
    std::size_t runs = 0;
    double empirical_co = 0;
    Rational exact_co;
};

/// Groups run logs by (ensemble, exact cosine): the correlation-vs-angle table.
inline std::vector<CorrelationRow> correlation_table(std::span<const BellRunLog> logs) {
    std::map<std::pair<int, Rational>, std::pair<std::size_t, long long>> groups;
    for (const auto &log : logs) {
        auto &g = groups[{static_cast<int>(log.ensemble), log.exact_cos}];
        g.first += 1;
        g.second += log.alice * log.bob;
    }
    std::vector<CorrelationRow> rows;
    rows.reserve(groups.size());
    for (const auto &[key, value] : groups) {
        rows.push_back({static_cast<Ensemble>(key.first), key.second, value.first,
                        static_cast<double>(value.second) / static_cast<double>(value.first), -key.second});
    }
    return rows;
}

/// One run's exact settings as a spherical triangle at vertex A.
struct ExactTriple {
    Rational cos_AB;
    Rational cos_AC;
    RationalAngle phi_A;
};

/// 0 when B and C lie on the same side of A in the nominal plane, 1/2 turn otherwise.
inline RationalAngle nominal_dihedral(const BellSettings &s) {
    auto signed_offset = [](const RationalAngle &from, const RationalAngle &to) {
        Rational t = (to - from).turns();
        return t > Rational(1, 2) ? t - Rational(1) : t;
    };
    Rational ob = signed_offset(s.a.direction, s.b.direction);
    Rational oc = signed_offset(s.a.direction, s.c.direction);
    if (ob.sign() * oc.sign() < 0) {
        return RationalAngle(Rational(1, 2));
    }
    return RationalAngle(Rational(0));
}

/**
 * Exact triple for run `run`: the snapped AB and AC cosines of that run index together with a
 * dihedral φ_A = nominal dihedral + j/10^6, j nonzero and uniform within A's tolerance.
 */
inline ExactTriple exact_triple_for_run(const BellSettings &settings, std::size_t L, std::uint64_t master_seed,
                                        std::size_t run) {
    ExactSetting ab = snap_to_grid(settings.a, settings.b, L, run_jitter_seed(master_seed, Ensemble::AB, run));
    ExactSetting ac = snap_to_grid(settings.a, settings.c, L, run_jitter_seed(master_seed, Ensemble::AC, run));
    Rng rng(derive_seed(master_seed, {3, run, 2}));
    Rational offset = detail::draw_dihedral_offset(rng, settings.a.tolerance);
    return {ab.cos_between, ac.cos_between, nominal_dihedral(settings) + RationalAngle(offset)};
}

struct DefinedCount {
    std::size_t defined = 0;
    std::size_t total = 0;

    Rational fraction() const {
        if (total == 0) {
            return Rational(0);
        }
        return Rational(static_cast<long long>(defined), static_cast<long long>(total));
    }
};

inline DefinedCount count_defined(std::span<const ExactTriple> triples) {
    DefinedCount count;
    for (const auto &t : triples) {
        ++count.total;
        if (bell_counterfactuals_defined(t.cos_AB, t.cos_AC, t.phi_A).third_side_rational) {
            ++count.defined;
        }
    }
    return count;
}

struct ChiSquareResult {
    double statistic = 0;
    int degrees_of_freedom = 0;
    double p_value = 1;
};

/// Pearson test that the rows of a contingency table share one distribution.
inline ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<std::size_t>> &table) {
    const std::size_t rows = table.size();
    const std::size_t cols = rows == 0 ? 0 : table[0].size();
    std::vector<double> row_sum(rows, 0), col_sum(cols, 0);
    double total = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            row_sum[r] += static_cast<double>(table[r][c]);
            col_sum[c] += static_cast<double>(table[r][c]);
            total += static_cast<double>(table[r][c]);
        }
    }
    ChiSquareResult out;
    std::size_t live_cols = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (col_sum[c] == 0) {
            continue;
        }
        ++live_cols;
        for (std::size_t r = 0; r < rows; ++r) {
            double expected = row_sum[r] * col_sum[c] / total;
            double diff = static_cast<double>(table[r][c]) - expected;
            out.statistic += diff * diff / expected;
        }
    }
    out.degrees_of_freedom = static_cast<int>((rows - 1) * (live_cols - 1));
    if (out.degrees_of_freedom > 0) {
        out.p_value = boost::math::gamma_q(out.degrees_of_freedom / 2.0, out.statistic / 2.0);
    }
    return out;
}

struct MiReport {
    std::size_t L = 0;
    std::size_t runs = 0;
    std::uint64_t master_seed = 0;
    std::size_t bins = 0;
    /// Binned M(ξ) counts per ensemble (AB, AC, BC).
    std::vector<std::vector<std::size_t>> histogram;
    ChiSquareResult independence;
    DefinedCount counterfactual;
};

/**
 * (i) Measurement independence at the nominal level: is the binned distribution of M(ξ) the
 * same whichever nominal pair was chosen?  (ii) At the exact level: in how many runs are both
 * counterfactual worlds of the Bell sum defined?
 */
inline MiReport mi_diagnostic(const BellSettings &settings, std::size_t L, std::size_t runs,
                              std::uint64_t master_seed, std::size_t bins = 30) {
    if (runs < 1000) {
        throw Error(Errc::OutOfRange, "mi diagnostic needs at least 1000 runs, got " + std::to_string(runs));
    }
    if (bins < 2 || bins > L) {
        throw Error(Errc::OutOfRange, "bin count must be in [2, L]");
    }
    MiReport report;
    report.L = L;
    report.runs = runs;
    report.master_seed = master_seed;
    report.bins = bins;
    report.histogram.assign(3, std::vector<std::size_t>(bins, 0));
    for (Ensemble e : kEnsembles) {
        auto &row = report.histogram[static_cast<std::size_t>(e)];
        for (std::size_t run = 0; run < runs; ++run) {
            std::size_t m = HiddenPermutation::measured_index_for_seed(run_xi_seed(master_seed, e, run), L);
            row[m * bins / L] += 1;
        }
    }
    report.independence = chi_square_homogeneity(report.histogram);

    std::vector<ExactTriple> triples;
    triples.reserve(runs);
    for (std::size_t run = 0; run < runs; ++run) {
        triples.push_back(exact_triple_for_run(settings, L, master_seed, run));
    }
    report.counterfactual = count_defined(triples);
    return report;
}

/**
 * Per-λ value of the Bell combination for a local deterministic model with singlet
 * anticorrelation (Bob's spin function is minus Alice's): with Co = -S(X)S(Y),
 *     |Co(A,B) - Co(A,C)| - Co(B,C).
 */
inline int local_bell_combination(Bit s_a, Bit s_b, Bit s_c) {
    int co_ab = -s_a * s_b;
    int co_ac = -s_a * s_c;
    int co_bc = -s_b * s_c;
    return std::abs(co_ab - co_ac) - co_bc;
}

struct BellsumResult {
    bool defined = false;
    std::optional<int> value;
    std::optional<Rational> cos_BC;
    std::optional<Obstruction> obstruction;
};

/**
 * Evaluates the Bell sum term for one λ (the ξ seed) when the exact triple admits both
 * counterfactual worlds. S(λ, A) is Alice's bit at M(ξ); S(λ, B) and S(λ, C) are read off Bob's
 * bits in the AB and AC singlets, sign-flipped to Alice's convention.
 */
inline BellsumResult bellsum_evaluate(std::uint64_t lambda_seed, const ExactTriple &triple, std::size_t L) {
    DefinednessVerdict verdict = bell_counterfactuals_defined(triple.cos_AB, triple.cos_AC, triple.phi_A);
    if (!verdict.third_side_rational) {
        return {false, std::nullopt, std::nullopt, verdict.obstruction};
    }
    if (!singlet_grid_compatible(L, triple.cos_AB) || !singlet_grid_compatible(L, triple.cos_AC)) {
        return {false, std::nullopt, verdict.cos_AC, Obstruction::OffGrid};
    }
    const HiddenPermutation identity = HiddenPermutation::identity(L);
    std::size_t m = HiddenPermutation::measured_index_for_seed(lambda_seed, L);
    JointOutcome ab = joint_measure_at(make_singlet(L, triple.cos_AB, identity), m);
    JointOutcome ac = joint_measure_at(make_singlet(L, triple.cos_AC, identity), m);
    Bit s_a = ab.alice;
    Bit s_b = static_cast<Bit>(-ab.bob);
    Bit s_c = static_cast<Bit>(-ac.bob);
    return {true, local_bell_combination(s_a, s_b, s_c), verdict.cos_AC, std::nullopt};
}

}  // namespace raqm
