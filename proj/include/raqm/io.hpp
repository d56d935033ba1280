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

// JSON and CSV forms of the library types. Rationals are always written as "p/q" strings.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "raqm/angle.hpp"
#include "raqm/bell.hpp"
#include "raqm/bitstring.hpp"
#include "raqm/entanglement.hpp"
#include "raqm/geometry.hpp"
#include "raqm/padic.hpp"
#include "raqm/quaternion.hpp"
#include "raqm/rational.hpp"

namespace raqm::io {

using nlohmann::json;

inline constexpr const char *kSchemaVersion = "1";

inline json rational_json(const std::optional<Rational> &r) {
    return r ? json(r->to_string()) : json(nullptr);
}

inline json angle_json(const RationalAngle &a) {
    return {{"turns", a.turns().to_string()}};
}

inline RationalAngle angle_from_json(const json &j) {
    return RationalAngle(Rational::parse(j.at("turns").get<std::string>()));
}

inline json seed_json(const HiddenPermutation &xi) {
    return xi.seed() ? json(*xi.seed()) : json(nullptr);
}

inline json qubit_json(const BitStringState &s) {
    return {{"L", s.size()},
            {"m", s.ones()},
            {"n", s.phase_steps()},
            {"xi_seed", seed_json(s.xi())},
            {"bits", to_01_string(s.bits())}};
}

/// Rebuilds a state from {"L", "m", "n", "xi_seed"}; "bits", when present, must agree.
inline BitStringState qubit_from_json(const json &j) {
    std::size_t L = j.at("L").get<std::size_t>();
    HiddenPermutation xi = j.at("xi_seed").is_null() ? HiddenPermutation::identity(L)
                                                     : HiddenPermutation::from_seed(j.at("xi_seed").get<std::uint64_t>(), L);
    BitStringState s = make_qubit(DiscretisationLevel(L), j.at("m").get<std::size_t>(), j.at("n").get<std::size_t>(),
                                  std::move(xi));
    if (j.contains("bits") && from_01_string(j.at("bits").get<std::string>()) != s.bits()) {
        throw Error(Errc::ParseError, "bits field disagrees with (L, m, n)");
    }
    return s;
}

inline json singlet_json(const SingletPair &p) {
    return {{"L", p.size()},
            {"cos_theta", p.cos_theta.to_string()},
            {"xi_seed", seed_json(p.xi())},
            {"alice_bits", to_01_string(p.alice_bits())},
            {"bob_bits", to_01_string(p.bob_bits())}};
}

/// {"L", "perm", "sign"} with 1-based perm entries: row k reads column perm[k].
inline json operator_json(const SignedPermutationOp &op) {
    std::vector<std::uint32_t> perm(op.source());
    for (auto &v : perm) {
        v += 1;
    }
    std::vector<int> sign(op.sign().begin(), op.sign().end());
    return {{"L", op.size()}, {"perm", perm}, {"sign", sign}};
}

inline SignedPermutationOp operator_from_json(const json &j) {
    std::size_t L = j.at("L").get<std::size_t>();
    auto perm = j.at("perm").get<std::vector<long long>>();
    auto sign = j.at("sign").get<std::vector<int>>();
    if (perm.size() != L || sign.size() != L) {
        throw Error(Errc::LengthMismatch, "perm/sign length differs from L");
    }
    std::vector<std::uint32_t> src(L);
    std::vector<Bit> sgn(L);
    for (std::size_t k = 0; k < L; ++k) {
        if (perm[k] < 1 || perm[k] > static_cast<long long>(L)) {
            throw Error(Errc::OutOfRange, "perm entries are 1-based indices");
        }
        src[k] = static_cast<std::uint32_t>(perm[k] - 1);
        sgn[k] = static_cast<Bit>(sign[k]);
    }
    return SignedPermutationOp(std::move(src), std::move(sgn));
}

inline json census_summary_json(const CensusReport &c) {
    return {{"total", c.total}, {"doubly_rational", c.doubly_rational.size()}};
}

inline json verdict_json(const DefinednessVerdict &v, const std::optional<CensusReport> &census = std::nullopt) {
    json out = {{"schema", std::string("raqm.verdict/") + kSchemaVersion},
                {"defined", v.third_side_rational},
                {"cos_AC", rational_json(v.cos_AC)},
                {"obstruction", v.obstruction ? json(std::string(obstruction_name(*v.obstruction))) : json(nullptr)},
                {"census", census ? census_summary_json(*census) : json(nullptr)}};
    return out;
}

inline json census_json(const CensusReport &c) {
    json phases = json::array();
    for (const auto &p : c.doubly_rational) {
        phases.push_back({{"turns", p.phase.turns().to_string()}, {"cos", p.cosine.to_string()}});
    }
    return {{"schema", std::string("raqm.census/") + kSchemaVersion},
            {"L", c.L},
            {"nominal", angle_json(c.nominal)},
            {"window", c.window.to_string()},
            {"census", census_summary_json(c)},
            {"doubly_rational_phases", phases}};
}

inline json trace_json(const CollapseTrace &t) {
    json words = json::array();
    for (const auto &w : t.steps) {
        words.push_back(w.to_string());
    }
    return {{"schema", std::string("raqm.collapse/") + kSchemaVersion},
            {"base", t.steps.front().base()},
            {"step_count", t.step_count},
            {"steps", words}};
}

inline void write_trace_csv(std::ostream &out, const CollapseTrace &t) {
    out << "step,word,length\n";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        out << i << ',' << t.steps[i].to_string() << ',' << t.steps[i].size() << '\n';
    }
}

inline json setting_json(const NominalSetting &s) {
    return {{"direction", angle_json(s.direction)}, {"tolerance", s.tolerance.to_string()}};
}

inline json settings_json(const BellSettings &s) {
    return {{"A", setting_json(s.a)}, {"B", setting_json(s.b)}, {"C", setting_json(s.c)}};
}

inline json bell_report_json(const BellReport &r, const BellSettings &settings) {
    json ensembles = json::object();
    for (const auto &e : r.ensembles) {
        ensembles[std::string(ensemble_name(e.ensemble))] = {
            {"runs", e.runs},
            {"nominal_cos", rational_json(e.nominal_cos)},
            {"exact_Co", rational_json(e.exact_co)},
            {"exact_mean_Co", e.exact_mean_co.to_string()},
            {"empirical_Co", e.empirical_co},
            {"standard_error", e.standard_error},
        };
    }
    return {{"schema", std::string("raqm.bell_report/") + kSchemaVersion},
            {"L", r.L},
            {"runs_per_ensemble", r.runs_per_ensemble},
            {"seed", r.master_seed},
            {"settings", settings_json(settings)},
            {"ensembles", ensembles},
            {"statistic", rational_json(r.statistic)},
            {"exact_mean_statistic", r.exact_mean_statistic.to_string()},
            {"empirical_statistic", r.empirical_statistic},
            {"empirical_sigma", r.empirical_sigma}};
}

inline json run_log_json(const BellRunLog &log) {
    return {{"run_id", log.run_id},
            {"ensemble", std::string(ensemble_name(log.ensemble))},
            {"xi_seed", log.xi_seed},
            {"jitter_seed", log.jitter_seed},
            {"exact_cos", log.exact_cos.to_string()},
            {"grid_index", log.grid_index},
            {"outcomes", {static_cast<int>(log.alice), static_cast<int>(log.bob)}}};
}

inline void write_run_logs_jsonl(std::ostream &out, std::span<const BellRunLog> logs) {
    for (const auto &log : logs) {
        out << run_log_json(log).dump() << '\n';
    }
}

inline void write_run_logs_csv(std::ostream &out, std::span<const BellRunLog> logs) {
    out << "run_id,ensemble,xi_seed,jitter_seed,exact_cos,grid_index,alice,bob\n";
    for (const auto &log : logs) {
        out << log.run_id << ',' << ensemble_name(log.ensemble) << ',' << log.xi_seed << ',' << log.jitter_seed << ','
            << log.exact_cos << ',' << log.grid_index << ',' << static_cast<int>(log.alice) << ','
            << static_cast<int>(log.bob) << '\n';
    }
}

inline void write_correlation_csv(std::ostream &out, std::span<const CorrelationRow> rows) {
    out << "ensemble,exact_cos,runs,empirical_Co,exact_Co\n";
    for (const auto &row : rows) {
        out << ensemble_name(row.ensemble) << ',' << row.exact_cos << ',' << row.runs << ','
            << json(row.empirical_co).dump() << ',' << row.exact_co << '\n';
    }
}

inline json mi_report_json(const MiReport &r, const BellSettings &settings) {
    return {{"schema", std::string("raqm.mi_report/") + kSchemaVersion},
            {"L", r.L},
            {"runs", r.runs},
            {"seed", r.master_seed},
            {"settings", settings_json(settings)},
            {"bins", r.bins},
            {"histogram", r.histogram},
            {"chi_square", r.independence.statistic},
            {"degrees_of_freedom", r.independence.degrees_of_freedom},
            {"p_value", r.independence.p_value},
            {"counterfactual_defined", r.counterfactual.defined},
            {"counterfactual_total", r.counterfactual.total},
            {"defined_fraction", r.counterfactual.fraction().to_string()}};
}

}  // namespace raqm::io
