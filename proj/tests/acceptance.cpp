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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "raqm/raqm.hpp"

#ifndef RAQM_CLI_PATH
#define RAQM_CLI_PATH "raqm"
#endif

namespace {

using raqm::Bit;
using raqm::HiddenPermutation;
using raqm::Rational;
using raqm::RationalAngle;

using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<200>,
                                          boost::multiprecision::et_off>;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> body;
};

std::vector<Rational> cosines_up_to(long qmax) {
    std::vector<Rational> out;
    for (long q = 1; q <= qmax; ++q) {
        for (long p = -q; p <= q; ++p) {
            if (std::gcd(p, q) == 1) {
                out.emplace_back(p, q);
            }
        }
    }
    return out;
}

std::vector<Rational> reduced_angles_up_to(long qmax) {
    std::vector<Rational> out;
    for (long q = 1; q <= qmax; ++q) {
        for (long p = 0; p < q; ++p) {
            if (std::gcd(p, q) == 1) {
                out.emplace_back(p, q);
            }
        }
    }
    return out;
}

// 1. Singlet correlation law.
Outcome singlet_law() {
    const std::size_t L = 3600;
    const std::size_t runs = 100000;
    const std::uint64_t master = 20260101;
    std::size_t compatible = 0, incompatible = 0, exact_bad = 0, mc_bad = 0, reject_bad = 0;
    double worst = 0.0;
    std::uint64_t index = 0;
    for (const Rational &c : cosines_up_to(36)) {
        ++index;
        if (!raqm::singlet_grid_compatible(L, c)) {
            ++incompatible;
            try {
                raqm::make_singlet(L, c, HiddenPermutation::identity(L));
                ++reject_bad;
            } catch (const raqm::Error &) {
            }
            continue;
        }
        ++compatible;
        auto pair = raqm::make_singlet(L, c, HiddenPermutation::identity(L));
        if (raqm::exact_correlation(pair) != -c) {
            ++exact_bad;
        }
        long long sum = 0;
        for (std::size_t r = 0; r < runs; ++r) {
            std::size_t m = HiddenPermutation::measured_index_for_seed(raqm::derive_seed(master, {index, r}), L);
            auto j = raqm::joint_measure_at(pair, m);
            sum += j.alice * j.bob;
        }
        double mean = static_cast<double>(sum) / static_cast<double>(runs);
        double cd = c.to_double();
        double sigma = std::sqrt((1.0 - cd * cd) / static_cast<double>(runs));
        double dev = std::abs(mean + cd);
        if (sigma == 0.0) {
            if (dev != 0.0) {
                ++mc_bad;
            }
        } else {
            worst = std::max(worst, dev / sigma);
            if (dev > 4.0 * sigma) {
                ++mc_bad;
            }
        }
    }
    std::ostringstream s;
    s << compatible << " grid-compatible cosines (q<=36, L=3600), exact mismatches " << exact_bad
      << ", Monte Carlo >4 sigma " << mc_bad << " (worst " << worst << " sigma, 1e5 runs each), "
      << incompatible << " incompatible rejected, " << reject_bad << " accepted in error";
    return {exact_bad == 0 && mc_bad == 0 && reject_bad == 0 && compatible > 0, s.str()};
}

// 2. Bell violation and bellsum bound.
Outcome bell_violation() {
    const std::size_t L = 3600;
    const std::size_t runs = 10000;
    const std::uint64_t seed = 1;
    auto settings = raqm::BellSettings::defaults();
    auto experiment = raqm::run_bell_experiment(settings, L, runs, seed);
    bool statistic_ok = experiment.report.statistic && *experiment.report.statistic == Rational(3, 2);

    std::size_t undefined = 0, defined = 0, above = 0;
    for (std::size_t run = 0; run < runs; ++run) {
        auto triple = raqm::exact_triple_for_run(settings, L, seed, run);
        auto r = raqm::bellsum_evaluate(raqm::run_xi_seed(seed, raqm::Ensemble::AB, run), triple, L);
        if (!r.defined) {
            ++undefined;
            continue;
        }
        ++defined;
        if (*r.value > 1) {
            ++above;
        }
    }
    // Coplanar triples on the grid, where every world is defined.
    const std::vector<std::pair<Rational, Rational>> pairs = {
        {Rational(1, 2), Rational(-1, 2)}, {Rational(3, 5), Rational(5, 13)}, {Rational(0), Rational(1, 2)},
        {Rational(-4, 5), Rational(3, 5)}, {Rational(1), Rational(-1, 2)}};
    std::size_t engineered = 0;
    for (const auto &[c1, c2] : pairs) {
        for (const Rational &phi : {Rational(0), Rational(1, 2)}) {
            raqm::ExactTriple t{c1, c2, RationalAngle(phi)};
            for (std::uint64_t lambda = 0; lambda < 200; ++lambda) {
                auto r = raqm::bellsum_evaluate(raqm::derive_seed(77, {lambda}), t, L);
                if (r.defined) {
                    ++engineered;
                    if (*r.value > 1) {
                        ++above;
                    }
                }
            }
        }
    }
    int pattern_max = -10;
    for (Bit a : {Bit{-1}, Bit{1}}) {
        for (Bit b : {Bit{-1}, Bit{1}}) {
            for (Bit c : {Bit{-1}, Bit{1}}) {
                pattern_max = std::max(pattern_max, raqm::local_bell_combination(a, b, c));
            }
        }
    }
    double undefined_fraction = static_cast<double>(undefined) / static_cast<double>(runs);
    std::ostringstream s;
    s << "statistic " << (experiment.report.statistic ? experiment.report.statistic->to_string() : "undefined")
      << " (empirical " << experiment.report.empirical_statistic << " +- " << experiment.report.empirical_sigma
      << "), jittered triples undefined " << undefined << "/" << runs << ", defined bellsum terms "
      << defined + engineered << " with " << above << " above 1, max over sign patterns " << pattern_max;
    return {statistic_ok && undefined_fraction >= 0.999 && above == 0 && pattern_max <= 1 && engineered > 0,
            s.str()};
}

// 3. Perfect anticorrelation at cos = 1.
Outcome perfect_anticorrelation() {
    std::size_t lengths = 0, violations = 0;
    for (std::size_t L = 2; L <= (std::size_t{1} << 14); L += 2) {
        ++lengths;
        auto pair = raqm::make_singlet(L, Rational(1), HiddenPermutation::identity(L));
        for (std::size_t i = 0; i < L; ++i) {
            auto j = raqm::joint_measure_at(pair, i);
            if (j.alice != -j.bob || pair.alice_bits()[i] != -pair.bob_bits()[i]) {
                ++violations;
            }
        }
    }
    std::ostringstream s;
    s << lengths << " even lengths L<=16384, every position checked, " << violations << " violations";
    return {violations == 0, s.str()};
}

// 4. Locality of counterfactual swaps.
Outcome locality() {
    const std::size_t L = 3600;
    raqm::Rng rng(44);
    auto random_cos = [&] { return Rational(static_cast<long long>(rng.below(1801)) * 2 - 1800, 1800); };
    std::size_t bob_bad = 0, alice_bad = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        Rational c = random_cos();
        Rational other = random_cos();
        auto pair = raqm::make_singlet(L, c, HiddenPermutation::from_seed(rng.next(), L));
        auto bob = raqm::bob_counterfactual_swap(pair, other);
        Bit alice_direct = bob.swapped.alice_bits()[bob.swapped.xi().measured_index()];
        if (!bob.alice_string_unchanged || !bob.alice_outcome_unchanged ||
            alice_direct != raqm::joint_measure(pair).alice) {
            ++bob_bad;
        }
        auto alice = raqm::alice_counterfactual_swap(pair, other);
        if (!alice.bob_string_unchanged || !alice.bob_outcome_unchanged) {
            ++alice_bad;
        }
    }
    std::ostringstream s;
    s << trials << " random trials at L=3600: Bob swaps changing Alice " << bob_bad << ", Alice swaps changing Bob "
      << alice_bad;
    return {bob_bad == 0 && alice_bad == 0, s.str()};
}

// Number of distinct values 2cos(2 pi k / q), k coprime to q: the degree of its minimal polynomial.
int conjugate_count(long q) {
    std::vector<double> seen;
    for (long k = 0; k < q; ++k) {
        if (std::gcd(k, q) != 1) {
            continue;
        }
        double v = 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q));
        bool fresh = true;
        for (double x : seen) {
            if (std::abs(x - v) < 1e-9) {
                fresh = false;
                break;
            }
        }
        if (fresh) {
            seen.push_back(v);
        }
    }
    return static_cast<int>(seen.size());
}

// 5. Niven classifier against the minimal-polynomial oracle.
Outcome niven() {
    std::vector<int> degree(361, 0);
    for (long q = 1; q <= 360; ++q) {
        degree[q] = conjugate_count(q);
    }
    std::size_t checked = 0, mismatches = 0, rational = 0;
    for (const Rational &t : reduced_angles_up_to(360)) {
        ++checked;
        long q = t.denominator().get_si();
        auto v = raqm::niven_classify(RationalAngle(t));
        bool oracle = degree[q] == 1;
        if (v.is_rational_cosine != oracle || v.is_rational_cosine != v.cosine_value.has_value()) {
            ++mismatches;
            continue;
        }
        if (v.cosine_value) {
            ++rational;
            double c = std::cos(2.0 * std::numbers::pi * t.to_double());
            if (std::abs(v.cosine_value->to_double() - c) > 1e-12) {
                ++mismatches;
            }
        }
    }
    std::ostringstream s;
    s << checked << " reduced angles with denominator <=360, " << rational << " rational cosines, " << mismatches
      << " mismatches";
    return {mismatches == 0 && rational == 8, s.str()};
}

// Continued-fraction screen: a fraction p/q with q <= qmax within tol of v, if any.
std::optional<std::pair<long long, long long>> rational_screen(double v, long long qmax, double tol) {
    double x = v;
    long long p0 = 1, q0 = 0, p1 = static_cast<long long>(std::floor(x)), q1 = 1;
    double frac = x - std::floor(x);
    for (int i = 0; i < 64; ++i) {
        if (std::abs(v - static_cast<double>(p1) / static_cast<double>(q1)) <= tol) {
            return std::make_pair(p1, q1);
        }
        if (frac < 1e-18) {
            break;
        }
        x = 1.0 / frac;
        double a = std::floor(x);
        frac = x - a;
        if (a > 1e12) {
            break;
        }
        auto ai = static_cast<long long>(a);
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > qmax) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return std::nullopt;
}

struct CosineData {
    Rational value;
    double d;
    double sin_d;
    Big big;
    Big sin_big;
};

struct AngleData {
    Rational turns;
    double cos_d;
    Big cos_big;
};

CosineData cosine_data(const Rational &c) {
    Big num(c.numerator().get_str()), den(c.denominator().get_str());
    Big v = num / den;
    Big s = sqrt(Big(1) - v * v);
    return {c, c.to_double(), static_cast<double>(s), v, s};
}

AngleData angle_data(const Rational &t) {
    Big num(t.numerator().get_str()), den(t.denominator().get_str());
    Big c = cos(2 * boost::math::constants::pi<Big>() * num / den);
    return {t, static_cast<double>(c), c};
}

struct ScanTally {
    std::size_t triples = 0;
    std::size_t defined = 0;
    std::size_t verified = 0;
    std::size_t mismatches = 0;
};

void check_triple(const CosineData &a, const CosineData &b, const AngleData &phi, ScanTally &tally) {
    static const Big threshold = pow(Big(10), -150);
    ++tally.triples;
    auto verdict = raqm::third_side_cosine({a.value, b.value, RationalAngle(phi.turns)});
    double v = a.d * b.d + a.sin_d * b.sin_d * phi.cos_d;
    std::optional<Rational> oracle;
    if (auto cand = rational_screen(v, 1000000, 1e-14)) {
        ++tally.verified;
        Big exact = a.big * b.big + a.sin_big * b.sin_big * phi.cos_big;
        if (abs(exact - Big(cand->first) / Big(cand->second)) < threshold) {
            oracle = Rational(cand->first, cand->second);
        }
    }
    if (verdict.third_side_rational) {
        ++tally.defined;
    }
    if (verdict.third_side_rational != oracle.has_value() || (oracle && *verdict.cos_AC != *oracle)) {
        ++tally.mismatches;
    }
}

void scan(const std::vector<CosineData> &cos_list, const std::vector<AngleData> &angles, ScanTally &tally) {
    const Big threshold = pow(Big(10), -150);
    for (std::size_t i = 0; i < cos_list.size(); ++i) {
        for (std::size_t j = i; j < cos_list.size(); ++j) {
            const auto &a = cos_list[i];
            const auto &b = cos_list[j];
            double product = a.d * b.d;
            double sines = a.sin_d * b.sin_d;
            Big big_product = a.big * b.big;
            Big big_sines = a.sin_big * b.sin_big;
            for (const auto &phi : angles) {
                ++tally.triples;
                auto verdict = raqm::third_side_cosine({a.value, b.value, RationalAngle(phi.turns)});
                double v = product + sines * phi.cos_d;
                std::optional<Rational> oracle;
                if (auto cand = rational_screen(v, 1000000, 1e-14)) {
                    ++tally.verified;
                    Big exact = big_product + big_sines * phi.cos_big;
                    Big diff = abs(exact - Big(cand->first) / Big(cand->second));
                    if (diff < threshold) {
                        oracle = Rational(cand->first, cand->second);
                    }
                }
                if (verdict.third_side_rational) {
                    ++tally.defined;
                }
                if (verdict.third_side_rational != oracle.has_value() ||
                    (oracle && *verdict.cos_AC != *oracle)) {
                    ++tally.mismatches;
                }
            }
        }
    }
}

// 6. Impossible triangles against a 200-digit oracle.
Outcome triangles() {
    std::vector<CosineData> wide, narrow;
    for (const Rational &c : cosines_up_to(20)) {
        wide.push_back(cosine_data(c));
    }
    for (const Rational &c : cosines_up_to(5)) {
        narrow.push_back(cosine_data(c));
    }
    std::vector<AngleData> degrees, all;
    for (long k = 0; k < 360; ++k) {
        degrees.push_back(angle_data(Rational(k, 360)));
    }
    for (const Rational &t : reduced_angles_up_to(360)) {
        all.push_back(angle_data(t));
    }
    ScanTally a, b;
    scan(wide, degrees, a);
    scan(narrow, all, b);
    ScanTally c;
    raqm::Rng rng(6);
    for (int i = 0; i < 1000000; ++i) {
        const auto &x = wide[rng.below(wide.size())];
        const auto &y = wide[rng.below(wide.size())];
        check_triple(x, y, all[rng.below(all.size())], c);
    }
    std::ostringstream s;
    s << "scan A (cos q<=20 x phi=k/360): " << a.triples << " triples, " << a.defined << " defined, "
      << a.mismatches << " mismatches; scan B (cos q<=5 x all phi with q<=360): " << b.triples << " triples, "
      << b.defined << " defined, " << b.mismatches << " mismatches; scan C (1e6 random triples, cos q<=20, phi q<=360): "
      << c.defined << " defined, " << c.mismatches << " mismatches; " << a.verified + b.verified + c.verified
      << " candidates checked at 200 digits";
    return {a.mismatches == 0 && b.mismatches == 0 && c.mismatches == 0, s.str()};
}

// 7. Complementarity census.
Outcome census() {
    const std::size_t L = 3600;
    const Rational window(1, 100);
    auto at_zero = raqm::complementarity_census(L, RationalAngle(Rational(0)), window);
    bool zero_ok = at_zero.total == 73 && at_zero.doubly_rational.size() == 1;
    auto niven_denominator = [](long q) { return q == 1 || q == 2 || q == 3 || q == 4 || q == 6; };
    std::size_t mismatches = 0, isolated = 0, isolated_bad = 0;
    for (std::size_t k = 0; k < L; ++k) {
        Rational nominal(static_cast<long long>(k), static_cast<long long>(L));
        auto report = raqm::complementarity_census(L, RationalAngle(nominal), window);
        std::size_t expected = 0;
        for (long d = -36; d <= 36; ++d) {
            Rational phase = raqm::fractional_part(nominal + Rational(d, static_cast<long long>(L)));
            if (niven_denominator(phase.denominator().get_si())) {
                ++expected;
            }
        }
        if (report.total != 73 || report.doubly_rational.size() != expected) {
            ++mismatches;
        }
        if (!niven_denominator(nominal.denominator().get_si()) && expected == 0) {
            ++isolated;
            if (!report.doubly_rational.empty()) {
                ++isolated_bad;
            }
        }
    }
    auto off_grid = raqm::complementarity_census(L, RationalAngle(Rational(1, 7)), window);
    std::ostringstream s;
    s << "nominal 0: " << at_zero.total << "/" << at_zero.doubly_rational.size() << "; " << L
      << " grid nominals, " << mismatches << " mismatches against the denominator oracle; " << isolated
      << " non-Niven nominals away from Niven angles with nonzero count " << isolated_bad << "; nominal 1/7: "
      << off_grid.doubly_rational.size();
    return {zero_ok && mismatches == 0 && isolated_bad == 0 && off_grid.doubly_rational.empty(), s.str()};
}

bool same_on_basis(const raqm::SignedPermutationOp &a, const raqm::SignedPermutationOp &b) {
    std::vector<int> e(a.size(), 0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        e[j] = 1;
        if (raqm::apply<int>(a, e) != raqm::apply<int>(b, e)) {
            return false;
        }
        e[j] = 0;
    }
    return true;
}

// 8. Quaternion relations.
Outcome quaternions() {
    std::size_t lengths = 0, failures = 0;
    for (std::size_t L = 4; L <= 1024; L += 4) {
        ++lengths;
        auto j1 = raqm::build_J(1, L), j2 = raqm::build_J(2, L), j3 = raqm::build_J(3, L);
        auto minus = raqm::SignedPermutationOp::negation(L);
        bool ok = raqm::compose(j1, j1) == minus && raqm::compose(j2, j2) == minus &&
                  raqm::compose(j3, j3) == minus && raqm::compose(j1, j2) == j3 && raqm::compose(j2, j3) == j1 &&
                  raqm::compose(j3, j1) == j2 && raqm::compose(j2, j1) == raqm::compose(minus, j3) &&
                  same_on_basis(raqm::compose(j1, j2), j3) && same_on_basis(raqm::compose(j1, j1), minus);
        if (!ok) {
            ++failures;
        }
    }
    std::ostringstream s;
    s << lengths << " lengths L=4,8,...,1024, " << failures << " with a failing relation";
    return {failures == 0, s.str()};
}

// 9. Shift collapse.
Outcome collapse() {
    auto trace = raqm::shift_collapse(raqm::PadicWord::parse("10011010"));
    const std::vector<std::string> expected = {"10011010", "1001101", "100110", "10011", "1001", "100", "10", "1"};
    bool example_ok = trace.step_count == 7 && trace.steps.size() == expected.size();
    for (std::size_t i = 0; example_ok && i < expected.size(); ++i) {
        example_ok = trace.steps[i].to_string() == expected[i];
    }
    raqm::Rng rng(9);
    std::size_t bad = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        std::size_t L = 1 + rng.below(4096);
        unsigned base = t % 2 ? 2 : 4;
        std::vector<std::uint8_t> digits(L);
        for (auto &d : digits) {
            d = static_cast<std::uint8_t>(rng.below(base));
        }
        auto tr = raqm::shift_collapse(raqm::PadicWord(base, digits));
        bool ok = tr.step_count == L - 1 && tr.steps.size() == L;
        for (std::size_t i = 0; ok && i < tr.steps.size(); ++i) {
            const auto &w = tr.steps[i].digits();
            ok = w.size() == L - i && std::equal(w.begin(), w.end(), digits.begin());
        }
        if (!ok) {
            ++bad;
        }
    }
    std::ostringstream s;
    s << "example trace " << (example_ok ? "matches" : "differs") << "; " << trials
      << " random words up to L=4096, " << bad << " with wrong step count or truncation";
    return {example_ok && bad == 0, s.str()};
}

// 10. Measurement-independence diagnostic.
Outcome measurement_independence() {
    auto settings = raqm::BellSettings::defaults();
    const std::size_t L = 3600, runs = 10000;
    double min_p = 1.0;
    std::size_t low_p = 0, defined = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto r = raqm::mi_diagnostic(settings, L, runs, seed);
        min_p = std::min(min_p, r.independence.p_value);
        if (!(r.independence.p_value > 0.01)) {
            ++low_p;
        }
        defined += r.counterfactual.defined;
        total += r.counterfactual.total;
    }
    std::vector<raqm::ExactTriple> coplanar = {
        {Rational(1, 2), Rational(-1, 2), RationalAngle(Rational(0))},
        {Rational(3, 5), Rational(5, 13), RationalAngle(Rational(0))},
        {Rational(3, 5), Rational(-4, 5), RationalAngle(Rational(1, 2))},
        {Rational(4, 5), Rational(3, 5), RationalAngle(Rational(1, 2))}};
    auto engineered = raqm::count_defined(coplanar);
    std::ostringstream s;
    s << "10 master seeds x " << runs << " runs: min p " << min_p << ", " << low_p << " with p<=0.01; jittered defined "
      << defined << "/" << total << "; coplanar defined " << engineered.defined << "/" << engineered.total;
    return {low_p == 0 && defined == 0 && engineered.fraction() == Rational(1), s.str()};
}

std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 11. Byte-identical reruns of the command-line tool.
Outcome reproducibility() {
    namespace fs = std::filesystem;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"bell", "bell --runs 2000 --seed 7"},
        {"bell_csv", "bell --runs 500 --seed 7 --format csv"},
        {"mz", "mz --nominal 1/4 --window 1/1000"},
        {"triangle", "triangle 3/5 5/13 1/6"},
        {"collapse", "collapse --L 256 --m 100 --n 3 --seed 5"},
        {"mi", "mi-diagnostic --runs 2000 --seed 3"},
        {"quaternion", "quaternion-check --L 64"}};
    ::unsetenv("RAQM_SEED");
    fs::path root = fs::temp_directory_path() / ("raqm_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    std::size_t files = 0, differing = 0, failed_runs = 0;
    for (const auto &[name, args] : commands) {
        std::vector<fs::path> dirs = {root / name / "a", root / name / "b"};
        for (const auto &d : dirs) {
            fs::create_directories(d);
            std::string cmd = std::string("\"") + RAQM_CLI_PATH + "\" " + args + " --out \"" + d.string() +
                              "\" > \"" + (d / "stdout.txt").string() + "\" 2>/dev/null";
            int rc = std::system(cmd.c_str());
            if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) > 1) {
                ++failed_runs;
            }
        }
        for (const auto &entry : fs::directory_iterator(dirs[0])) {
            ++files;
            fs::path other = dirs[1] / entry.path().filename();
            if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) {
                ++differing;
            }
        }
    }
    fs::remove_all(root);
    std::ostringstream s;
    s << commands.size() << " commands run twice, " << files << " output files compared, " << differing
      << " differing, " << failed_runs << " failed runs";
    return {differing == 0 && failed_runs == 0 && files > commands.size(), s.str()};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "singlet correlation law", 30, singlet_law},
        {2, "Bell violation and bellsum bound", 60, bell_violation},
        {3, "perfect anticorrelation", 0, perfect_anticorrelation},
        {4, "locality of counterfactual swaps", 0, locality},
        {5, "Niven classifier", 10, niven},
        {6, "impossible triangles", 300, triangles},
        {7, "complementarity census", 0, census},
        {8, "quaternion relations", 0, quaternions},
        {9, "shift collapse", 0, collapse},
        {10, "measurement independence", 60, measurement_independence},
        {11, "reproducibility", 0, reproducibility},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception &e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = c.limit_seconds <= 0 || seconds <= c.limit_seconds;
        bool pass = out.pass && in_time;
        if (!pass) {
            ++failures;
        }
        std::printf("[%s] criterion %d %s: %s; %.2f s", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    out.detail.c_str(), seconds);
        if (c.limit_seconds > 0) {
            std::printf(" (limit %.0f s)", c.limit_seconds);
        }
        std::printf("\n");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
