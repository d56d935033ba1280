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

// raqm: command-line front end for the RaQM experiments.
//
//   raqm bell [--runs N] [--L L] [--seed S] [--tolerance T] [--angles a,b,c] [--out DIR] [--format json|csv]
//   raqm mz [--nominal TURNS] [--window TURNS] [--L L]
//   raqm triangle COS_AB COS_BC PHI_B
//   raqm collapse [WORD] | --m M --n N
//   raqm mi-diagnostic [--runs N] [--bins B]
//   raqm quaternion-check [--L L]
//
// Exit status: 0 success / defined, 1 undefined verdict, 2 usage error, 3 infeasible setting.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "raqm/io.hpp"
#include "raqm/raqm.hpp"

namespace fs = std::filesystem;
using raqm::Rational;
using raqm::io::json;

namespace {

enum Exit : int { kOk = 0, kUndefined = 1, kUsage = 2, kInfeasible = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::size_t L = raqm::kDefaultL;
    std::uint64_t seed = 0;
    std::size_t runs = 10000;
    std::string tolerance = "1/360";
    std::string out;
    std::string format = "json";
    std::string angles = "0,60,120";
    std::string nominal = "0";
    std::string window = "1/100";
    std::size_t bins = 30;
    unsigned base = 2;
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<std::string> positional;
};

Rational parse_rational(const std::string &text, const char *what) {
    try {
        return Rational::parse(text);
    } catch (const raqm::Error &e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

std::vector<Rational> parse_list(const std::string &text, const char *what) {
    std::vector<Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(parse_rational(item, what));
    }
    return out;
}

class Artifacts {
   public:
    explicit Artifacts(const std::string &dir) : dir_(dir) {
        if (!dir_.empty()) {
            fs::create_directories(dir_);
        }
    }

    bool enabled() const {
        return !dir_.empty();
    }

    std::ofstream open(const std::string &name) const {
        std::ofstream f(fs::path(dir_) / name, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + (fs::path(dir_) / name).string());
        }
        return f;
    }

    void write_json(const std::string &name, const json &j) const {
        auto f = open(name);
        f << j.dump(2) << '\n';
    }

   private:
    std::string dir_;
};

raqm::BellSettings bell_settings(const RunConfig &cfg) {
    auto angles = parse_list(cfg.angles, "--angles");
    if (angles.size() != 3) {
        throw UsageError("--angles needs three comma-separated values in degrees");
    }
    Rational tol = parse_rational(cfg.tolerance, "--tolerance");
    if (tol.sign() <= 0) {
        throw UsageError("--tolerance must be positive");
    }
    auto at = [&](const Rational &deg) { return raqm::NominalSetting(raqm::RationalAngle::from_degrees(deg), tol); };
    return {at(angles[0]), at(angles[1]), at(angles[2])};
}

void require_L(const RunConfig &cfg) {
    if (cfg.L == 0) {
        throw UsageError("--L must be >= 1");
    }
}

int cmd_bell(const RunConfig &cfg) {
    require_L(cfg);
    if (cfg.runs == 0) {
        throw UsageError("--runs must be >= 1");
    }
    if (cfg.L % 2 != 0) {
        throw UsageError("--L must be even for singlet pairs");
    }
    auto settings = bell_settings(cfg);
    auto exp = raqm::run_bell_experiment(settings, cfg.L, cfg.runs, cfg.seed);
    const auto &r = exp.report;
    Artifacts art(cfg.out);
    if (art.enabled()) {
        art.write_json("bell_report.json", raqm::io::bell_report_json(r, settings));
        if (cfg.format == "csv") {
            auto f = art.open("bell_runs.csv");
            raqm::io::write_run_logs_csv(f, exp.logs);
        } else {
            auto f = art.open("bell_runs.jsonl");
            raqm::io::write_run_logs_jsonl(f, exp.logs);
        }
        auto f = art.open("correlation.csv");
        raqm::io::write_correlation_csv(f, raqm::correlation_table(exp.logs));
    }
    std::cout << "statistic " << (r.statistic ? r.statistic->to_string() : "undefined") << '\n';
    for (const auto &e : r.ensembles) {
        std::cout << "Co_" << raqm::ensemble_name(e.ensemble) << " exact "
                  << (e.exact_co ? e.exact_co->to_string() : "irrational") << " empirical "
                  << json(e.empirical_co).dump() << '\n';
    }
    std::cout << "empirical_statistic " << json(r.empirical_statistic).dump() << " sigma "
              << json(r.empirical_sigma).dump() << '\n';
    std::cout << "seed " << cfg.seed << '\n';
    return kOk;
}

int cmd_mz(const RunConfig &cfg) {
    require_L(cfg);
    Rational window = parse_rational(cfg.window, "--window");
    if (window.sign() <= 0) {
        throw UsageError("--window must be positive");
    }
    auto nominal = raqm::RationalAngle(parse_rational(cfg.nominal, "--nominal"));
    auto census = raqm::complementarity_census(cfg.L, nominal, window);
    json j = raqm::io::census_json(census);
    Artifacts art(cfg.out);
    if (art.enabled()) {
        art.write_json("mz_census.json", j);
        auto f = art.open("mz_phases.csv");
        f << "turns,cos\n";
        for (const auto &p : census.doubly_rational) {
            f << p.phase.turns() << ',' << p.cosine << '\n';
        }
    } else {
        std::cout << j.dump(2) << '\n';
    }
    std::cout << "total " << census.total << " doubly_rational " << census.doubly_rational.size() << '\n';
    return kOk;
}

int cmd_triangle(const RunConfig &cfg) {
    if (cfg.positional.size() != 3) {
        throw UsageError("triangle needs COS_AB COS_BC PHI_B");
    }
    Rational c1 = parse_rational(cfg.positional[0], "COS_AB");
    Rational c2 = parse_rational(cfg.positional[1], "COS_BC");
    auto phi = raqm::RationalAngle(parse_rational(cfg.positional[2], "PHI_B"));
    raqm::DefinednessVerdict verdict;
    try {
        verdict = raqm::third_side_cosine({c1, c2, phi});
    } catch (const raqm::Error &e) {
        throw UsageError(e.what());
    }
    Rational window = parse_rational(cfg.window, "--window");
    if (window.sign() <= 0) {
        throw UsageError("--window must be positive");
    }
    require_L(cfg);
    auto census = raqm::complementarity_census(cfg.L, phi, window);
    json j = raqm::io::verdict_json(verdict, census);
    Artifacts art(cfg.out);
    if (art.enabled()) {
        art.write_json("triangle_verdict.json", j);
    }
    std::cout << j.dump(2) << '\n';
    return verdict.third_side_rational ? kOk : kUndefined;
}

int cmd_collapse(const RunConfig &cfg) {
    std::optional<raqm::PadicWord> word;
    if (!cfg.positional.empty()) {
        if (cfg.positional.size() != 1) {
            throw UsageError("collapse takes a single WORD");
        }
        try {
            word = raqm::PadicWord::parse(cfg.positional[0], cfg.base);
        } catch (const raqm::Error &e) {
            throw UsageError(e.what());
        }
    } else {
        require_L(cfg);
        if (cfg.m > cfg.L || cfg.n >= cfg.L) {
            throw UsageError("collapse needs 0 <= m <= L and 0 <= n < L");
        }
        auto state = raqm::make_qubit(raqm::DiscretisationLevel(cfg.L), cfg.m, cfg.n,
                                      raqm::HiddenPermutation::from_seed(cfg.seed, cfg.L));
        word = raqm::encode_2adic(state.permuted_bits());
    }
    auto trace = raqm::shift_collapse(*word);
    Artifacts art(cfg.out);
    if (art.enabled()) {
        if (cfg.format == "csv") {
            auto f = art.open("collapse_trace.csv");
            raqm::io::write_trace_csv(f, trace);
        } else {
            art.write_json("collapse_trace.json", raqm::io::trace_json(trace));
        }
    } else if (cfg.format == "csv") {
        raqm::io::write_trace_csv(std::cout, trace);
    } else {
        std::cout << raqm::io::trace_json(trace).dump(2) << '\n';
    }
    std::cout << "steps " << trace.step_count << '\n';
    return kOk;
}

int cmd_mi(const RunConfig &cfg) {
    require_L(cfg);
    if (cfg.runs < 1000) {
        throw UsageError("mi-diagnostic needs --runs >= 1000");
    }
    if (cfg.bins < 2 || cfg.bins > cfg.L) {
        throw UsageError("--bins must be in [2, L]");
    }
    if (cfg.L % 2 != 0) {
        throw UsageError("--L must be even for singlet pairs");
    }
    auto settings = bell_settings(cfg);
    auto report = raqm::mi_diagnostic(settings, cfg.L, cfg.runs, cfg.seed, cfg.bins);
    json j = raqm::io::mi_report_json(report, settings);
    Artifacts art(cfg.out);
    if (art.enabled()) {
        art.write_json("mi_report.json", j);
    } else {
        std::cout << j.dump(2) << '\n';
    }
    std::cout << "p_value " << json(report.independence.p_value).dump() << " defined_fraction "
              << report.counterfactual.fraction() << '\n';
    return kOk;
}

int cmd_quaternion(const RunConfig &cfg) {
    if (cfg.L == 0 || cfg.L % 4 != 0) {
        throw UsageError("quaternion-check needs 4 | L");
    }
    const std::size_t L = cfg.L;
    auto j1 = raqm::build_J(1, L);
    auto j2 = raqm::build_J(2, L);
    auto j3 = raqm::build_J(3, L);
    auto minus = raqm::SignedPermutationOp::negation(L);
    struct Check {
        const char *name;
        bool holds;
    };
    const Check checks[] = {
        {"J1*J1 = -1", raqm::compose(j1, j1) == minus}, {"J2*J2 = -1", raqm::compose(j2, j2) == minus},
        {"J3*J3 = -1", raqm::compose(j3, j3) == minus}, {"J1*J2 = J3", raqm::compose(j1, j2) == j3},
        {"J2*J3 = J1", raqm::compose(j2, j3) == j1},    {"J3*J1 = J2", raqm::compose(j3, j1) == j2},
    };
    bool all = true;
    json relations = json::object();
    for (const auto &c : checks) {
        std::cout << c.name << ' ' << (c.holds ? "holds" : "FAILS") << '\n';
        relations[c.name] = c.holds;
        all = all && c.holds;
    }
    Artifacts art(cfg.out);
    if (art.enabled()) {
        art.write_json("quaternion_check.json", {{"schema", "raqm.quaternion_check/1"},
                                                 {"L", L},
                                                 {"relations", relations},
                                                 {"J1", raqm::io::operator_json(j1)},
                                                 {"J2", raqm::io::operator_json(j2)},
                                                 {"J3", raqm::io::operator_json(j3)}});
    }
    return all ? kOk : kUndefined;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Rational Quantum Mechanics experiments"};
    app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
    app.fallthrough();
    app.require_subcommand(1);
    RunConfig cfg;
    auto *seed_opt = app.add_option("--seed", cfg.seed, "Master seed (RAQM_SEED when absent)");
    app.add_option("--L", cfg.L, "Discretisation level");
    app.add_option("--runs", cfg.runs, "Runs per ensemble");
    app.add_option("--tolerance", cfg.tolerance, "Nominal tolerance in turns, p/q");
    app.add_option("--out", cfg.out, "Directory for artifacts");
    app.add_option("--format", cfg.format, "Artifact format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--angles", cfg.angles, "Nominal A,B,C directions in degrees");
    app.add_option("--nominal", cfg.nominal, "Nominal phase in turns");
    app.add_option("--window", cfg.window, "Census half-width in turns");
    app.add_option("--bins", cfg.bins, "Histogram bins for M(xi)");
    app.add_option("--base", cfg.base, "Digit base of a collapse WORD");
    app.add_option("--m", cfg.m, "Number of +1 bits (collapse from a state)");
    app.add_option("--n", cfg.n, "Phase steps (collapse from a state)");

    auto *bell = app.add_subcommand("bell", "Three-ensemble Bell experiment");
    auto *mz = app.add_subcommand("mz", "Complementarity census around a nominal phase");
    auto *triangle = app.add_subcommand("triangle", "Is the third side cosine rational?");
    triangle->add_option("args", cfg.positional, "COS_AB COS_BC PHI_B (turns)")->expected(3);
    auto *collapse = app.add_subcommand("collapse", "Shift-map collapse trace");
    collapse->add_option("word", cfg.positional, "Digit word, e.g. 10011010")->expected(0, 1);
    auto *mi = app.add_subcommand("mi-diagnostic", "Measurement-independence diagnostic");
    auto *quat = app.add_subcommand("quaternion-check", "Verify J1, J2, J3 relations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }
    if (seed_opt->count() == 0) {
        if (const char *env = std::getenv("RAQM_SEED")) {
            try {
                std::size_t used = 0;
                cfg.seed = std::stoull(env, &used, 0);
                if (env[used] != '\0') {
                    throw std::invalid_argument(env);
                }
            } catch (const std::exception &) {
                std::cerr << "RAQM_SEED is not an unsigned integer: " << env << '\n';
                return kUsage;
            }
        }
    }

    try {
        if (bell->parsed()) {
            return cmd_bell(cfg);
        }
        if (mz->parsed()) {
            return cmd_mz(cfg);
        }
        if (triangle->parsed()) {
            return cmd_triangle(cfg);
        }
        if (collapse->parsed()) {
            return cmd_collapse(cfg);
        }
        if (mi->parsed()) {
            return cmd_mi(cfg);
        }
        if (quat->parsed()) {
            return cmd_quaternion(cfg);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const raqm::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
            case raqm::Errc::NoCompatibleSetting:
            case raqm::Errc::GridIncompatible:
            case raqm::Errc::FactorizationBound: return kInfeasible;
            default: return kUsage;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInfeasible;
    }
    return kUsage;
}
