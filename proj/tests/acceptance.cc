// Copyright 2026 The revcirc Authors
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


// Acceptance run: prints one PASS/FAIL line per criterion.
//
//   revcirc_acceptance [--ci] [--allow-fail=LIST]
//
// Criterion 6 samples 1e8 length-5 circuits by default (a few seconds).
// --ci swaps in the cheaper replacement check instead.
//
// Exit status is 0 when every criterion passes, or when every failing
// criterion is named in --allow-fail (a comma-separated list).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "revcirc/fitness.h"
#include "revcirc/sampling.h"
#include "revcirc/search.h"
#include "revcirc/text_format.h"
#include "revcirc/theory.h"
#include "revcirc/trace.h"

namespace revcirc {
namespace {

constexpr uint64_t kSeed = 1;
constexpr uint64_t kSamples = 1000000;

// Tolerances from the acceptance criteria.
constexpr double kMeanTol = 0.05;
constexpr double kSdTol = 0.05;
constexpr double kTvdBound = 0.05;
constexpr double kTheoryRelTol = 0.02;
constexpr double kMatrixTol = 1e-12;
constexpr double kMixingTvd = 1e-6;
constexpr uint64_t kKozaLow = 30000;
constexpr uint64_t kKozaHigh = 300000;
constexpr double kDensityClaim = 3e-8;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ExperimentConfig sampling_config(size_t wires, std::vector<size_t> lengths) {
    ExperimentConfig c;
    c.wires = wires;
    c.lengths = std::move(lengths);
    c.samples_per_length = kSamples;
    c.seed = kSeed;
    return c;
}

// Shared between criteria 1 and 2.
const std::vector<FitnessHistogram> &six_wire_histograms() {
    static auto hs = sample_distribution(sampling_config(6, {5, 20, 100, 500}));
    return hs;
}

Outcome even_parity() {
    uint64_t odd = 0, total = 0;
    for (const auto &h : six_wire_histograms()) {
        for (size_t f = 1; f < h.counts.size(); f += 2) {
            odd += h.counts[f];
        }
        total += h.total;
    }
    return {odd == 0, fmt("%llu odd scores in %llu circuits", (unsigned long long)odd,
                          (unsigned long long)total)};
}

Outcome mean_shift() {
    const auto &h = six_wire_histograms().back();
    double mean = h.mean();
    return {std::abs(mean - 32.5) <= kMeanTol,
            fmt("length %zu mean %.4f (want 32.5 +- %.2f)", h.length, mean, kMeanTol)};
}

Outcome binomial_limit_with_spare() {
    auto c = sampling_config(7, {500});
    auto hs = sample_distribution(c);
    auto series = convergence_series(hs, binomial_limit(6, 1));
    const auto &p = series.back();
    bool pass = std::abs(p.mean - 32) <= kMeanTol && std::abs(p.sd - 4) <= kSdTol &&
                p.tvd < kTvdBound;
    return {pass, fmt("mean %.4f sd %.4f tvd %.4f", p.mean, p.sd, p.tvd)};
}

Outcome tvd_decay() {
    auto c = sampling_config(7, {20, 50, 100, 200, 500});
    auto hs = sample_distribution(c);
    auto series = convergence_series(hs, binomial_limit(6, 1));
    bool pass = true;
    std::string tvds;
    for (size_t i = 0; i < series.size(); i++) {
        tvds += fmt("%s%zu:%.4f", i ? " " : "", series[i].length, series[i].tvd);
        if (i > 0) {
            double noise = 2 * std::hypot(series[i].tvd_sigma, series[i - 1].tvd_sigma);
            pass = pass && series[i].tvd <= series[i - 1].tvd + noise;
        }
    }
    return {pass, tvds};
}

Outcome exhaustive_minimality() {
    auto start = std::chrono::steady_clock::now();
    auto levels = exhaustive_min_scan(6, 4, six_multiplexor_target());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    uint64_t circuits = 0, solutions = 0, best = 0;
    for (const auto &l : levels) {
        circuits += l.circuits;
        solutions += l.solutions();
        best = std::max(best, l.best_fitness);
    }
    return {solutions == 0,
            fmt("%llu circuits x 6 wires, %llu solutions, best %llu, %.1fs",
                (unsigned long long)circuits, (unsigned long long)solutions,
                (unsigned long long)best, secs)};
}

struct GaResults {
    std::vector<RunRecord> wide;
    std::vector<RunRecord> minimal;
};

const GaResults &ga_results() {
    static GaResults r = [] {
        GaResults out;
        GAConfig wide;
        wide.seed = kSeed;
        for (uint64_t run = 0; run < 20; run++) {
            wide.run = run;
            out.wide.push_back(evolve(wide));
        }
        GAConfig minimal;
        minimal.wires = 6;
        minimal.length = 5;
        minimal.seed = kSeed;
        for (uint64_t run = 0; run < 10; run++) {
            minimal.run = run;
            out.minimal.push_back(evolve(minimal));
        }
        return out;
    }();
    return r;
}

size_t verified_minimal_solutions();

Outcome density_full() {
    auto c = sampling_config(6, {5});
    c.samples_per_length = 100000000;
    auto d = solution_density(c);
    bool pass = d[0].rate_interval.low <= kDensityClaim && kDensityClaim <= d[0].rate_interval.high;
    return {pass, fmt("%llu solutions in %llu, 95%% interval [%.3g, %.3g]; "
                      "ci replacement: %zu verified 5-gate GA solutions",
                      (unsigned long long)d[0].solutions, (unsigned long long)d[0].total,
                      d[0].rate_interval.low, d[0].rate_interval.high,
                      verified_minimal_solutions())};
}

size_t verified_minimal_solutions() {
    // Replacement check: a verified 5-gate solution from the GA, which the
    // length <= 4 scan shows cannot be shorter.
    size_t verified = 0;
    for (const auto &r : ga_results().minimal) {
        if (r.solved && r.solution->size() == 5 && oracle::mux6_score(*r.solution, 0) == 64) {
            verified++;
        }
    }
    return verified;
}

Outcome density_ci() {
    size_t verified = verified_minimal_solutions();
    return {verified > 0, fmt("ci scale: %zu verified 5-gate GA solutions", verified)};
}

Outcome hill_climber() {
    auto tally = [](size_t wires, size_t length, std::vector<uint64_t> &finals) {
        HillClimbConfig c;
        c.wires = wires;
        c.length = length;
        c.seed = kSeed;
        size_t solved = 0;
        for (uint64_t run = 0; run < 10; run++) {
            c.run = run;
            RunRecord r = hill_climb(c);
            solved += r.solved;
            finals.push_back(r.final_fitness);
        }
        return solved;
    };
    std::vector<uint64_t> small_finals, wide_finals;
    size_t small = tally(6, 5, small_finals);
    size_t wide = tally(12, 20, wide_finals);
    // Modal final fitness; ties go to the higher score.
    uint64_t mode = 0;
    size_t mode_count = 0;
    for (uint64_t f : small_finals) {
        size_t n = std::count(small_finals.begin(), small_finals.end(), f);
        if (n > mode_count || (n == mode_count && f > mode)) {
            mode = f;
            mode_count = n;
        }
    }
    auto join = [](const std::vector<uint64_t> &v) {
        std::string s;
        for (uint64_t f : v) {
            s += (s.empty() ? "" : ",") + std::to_string(f);
        }
        return s;
    };
    bool pass = small <= 3 && mode == 56 && wide <= 4;
    return {pass, fmt("6/5: %zu/10 solved, finals %s (mode %llu); 12/20: %zu/10 solved, finals %s",
                      small, join(small_finals).c_str(), (unsigned long long)mode, wide,
                      join(wide_finals).c_str())};
}

Outcome ga_behaviour() {
    const auto &g = ga_results();
    auto solved_verified = [](const std::vector<RunRecord> &runs, size_t count) {
        size_t n = 0;
        for (size_t i = 0; i < count; i++) {
            const auto &r = runs[i];
            if (r.solved && oracle::mux6_score(*r.solution, 0) == 64) {
                n++;
            }
        }
        return n;
    };
    size_t wide = solved_verified(g.wide, 10);
    size_t minimal = solved_verified(g.minimal, 10);
    uint64_t best_minimal = 0;
    for (const auto &r : g.minimal) {
        best_minimal = std::max(best_minimal, r.final_fitness);
    }
    return {wide >= 7 && minimal >= 1,
            fmt("12/20: %zu/10 verified; 6/5: %zu/10 verified (best %llu)", wide, minimal,
                (unsigned long long)best_minimal)};
}

Outcome koza() {
    const auto &runs = ga_results().wide;
    size_t solved = std::count_if(runs.begin(), runs.end(), [](auto &r) { return r.solved; });
    KozaEffort k = koza_effort(runs, 500);
    return {kKozaLow <= k.effort && k.effort <= kKozaHigh,
            fmt("%zu runs, %zu solved, effort %llu at generation %zu (band [%llu, %llu])",
                runs.size(), solved, (unsigned long long)k.effort, k.generation,
                (unsigned long long)kKozaLow, (unsigned long long)kKozaHigh)};
}

struct Moments {
    double mean = 0;
    double sd = 0;
};

template <typename Draw>
Moments monte_carlo(int draws, Draw draw) {
    double sum = 0, sq = 0;
    for (int i = 0; i < draws; i++) {
        double v = draw();
        sum += v;
        sq += v * v;
    }
    double mean = sum / draws;
    return {mean, std::sqrt(std::max(0.0, sq / draws - mean * mean))};
}

bool within(double measured, double expected) {
    return std::abs(measured / expected - 1) <= kTheoryRelTol;
}

Outcome theory_rows() {
    std::string detail;
    bool pass = true;
    auto row = [&](const char *name, double mean, double sd, Moments mc) {
        bool ok = within(mc.mean, mean) && within(mc.sd, sd);
        pass = pass && ok;
        detail += fmt("%s%s (%.4g, %.4g) mc (%.4g, %.4g)%s", detail.empty() ? "" : "; ", name,
                      mean, sd, mc.mean, mc.sd, ok ? "" : " MISMATCH");
    };

    // Hamming and normalized rows: output read from a uniformly random
    // permutation of a 7-wire bus (one spare line fed 1).
    const TargetTable mux = six_multiplexor_target();
    LimitModel hamming = binomial_limit(6, 1);
    if (hamming.mean != 32 || hamming.sd != 4) {
        pass = false;
    }
    Rng rng = make_rng(kSeed, {0x7433});
    Moments perm = monte_carlo(40000, [&] {
        auto p = BusPermutation::random(7, rng);
        double raw = 0;
        for (uint64_t c = 0; c < 64; c++) {
            raw += (p(c | 64) & 1) == mux.bit(0, c);
        }
        return raw;
    });
    row("hamming", hamming.mean, hamming.sd, perm);
    MeanSd norm = normalized_limit(6, 1);
    row("normalized", norm.mean, norm.sd, {perm.mean / 64, perm.sd / 64});

    // RMS rows at m = 8: a uniform output value i shared by every test.
    const size_t m = 8;
    const double top = std::ldexp(1.0, m);
    MeanSd small = rms_limit(m, RmsRegime::kSmallT);
    row("rms-small-T", small.mean, small.sd, monte_carlo(100000, [&] {
            double i = double(uniform_below(rng, uint64_t(top)));
            return std::sqrt(4 * i * i / 4);  // T = 4 tests, answers 0
        }));
    MeanSd exhaustive = rms_limit(m, RmsRegime::kExhaustiveUniform);
    row("rms-exhaustive", exhaustive.mean, exhaustive.sd, monte_carlo(100000, [&] {
            double i = double(uniform_below(rng, uint64_t(top)));
            double sq = 0;
            for (double a = 0; a < top; a++) {  // answers spread over 0..2^m-1
                sq += (i - a) * (i - a);
            }
            return std::sqrt(sq / top);
        }));
    return {pass, detail};
}

Outcome markov() {
    double worst_stochastic = 0, worst_stationary = 0;
    for (size_t wires : {3, 4}) {
        TransitionMatrix t = gate_transition_matrix(wires);
        worst_stochastic = std::max(worst_stochastic, t.doubly_stochastic_error());
        std::vector<double> u(t.size(), 1.0 / t.size());
        for (double v : t.step(u)) {
            worst_stationary = std::max(worst_stationary, std::abs(v - 1.0 / t.size()));
        }
    }
    TransitionMatrix t3 = gate_transition_matrix(3);
    TransitionMatrix p = t3.power(64);
    std::vector<double> u(8, 1.0 / 8);
    double worst_uniform = 0, worst_class = 0;
    for (size_t s = 0; s < 8; s++) {
        worst_uniform = std::max(worst_uniform, total_variation_distance(p.row(s), u));
        worst_class =
            std::max(worst_class, total_variation_distance(p.row(s), reachable_uniform(t3, s)));
    }
    bool pass = worst_stochastic <= kMatrixTol && worst_stationary <= kMatrixTol &&
                worst_uniform < kMixingTvd;
    return {pass, fmt("stochastic err %.2g, stationary err %.2g, max row tvd to uniform %.4g "
                      "(to uniform over reachable class %.2g)",
                      worst_stochastic, worst_stationary, worst_uniform, worst_class)};
}

Outcome properties() {
    std::vector<std::string> failures;
    Rng rng = make_rng(kSeed, {0x7072});
    for (int rep = 0; rep < 200; rep++) {
        size_t wires = 3 + rep % 10;
        Circuit c = random_circuit(wires, rep % 60, rng, wires - (rep % 3 == 0 ? 1 : 0));
        BusPermutation perm = to_permutation(c);
        if (!perm.is_bijection()) {
            failures.push_back("bijection");
        }
        if (!to_permutation(c.then(c.reversed())).is_identity()) {
            failures.push_back("reversal");
        }
        TruthTableTrace t = evaluate(c);
        for (uint64_t k = 0; k < t.case_count(); k++) {
            if (t.bus_state(k) != perm(c.initial_state(k))) {
                failures.push_back("trace/permutation");
                break;
            }
        }
        if (!c.empty()) {
            Circuit m = mutate(c, rng);
            size_t changed = 0;
            for (size_t i = 0; i < c.size(); i++) {
                changed += !(m[i] == c[i]);
            }
            if (changed != 1) {
                failures.push_back("mutate");
            }
        }
        if (neighborhood_size(c) != oracle::brute_force_neighbours(c)) {
            failures.push_back("neighbourhood");
        }
    }
    Circuit distinct(12, 6, 1, true, std::vector<Gate>(20, Gate(0, 1, 2)));
    Circuit equal(12, 6, 1, true, std::vector<Gate>(20, Gate(0, 1, 1)));
    if (neighborhood_size(distinct) != 580 || oracle::brute_force_neighbours(distinct) != 580 ||
        neighborhood_size(equal) != 600 || oracle::brute_force_neighbours(equal) != 600) {
        failures.push_back("580/600");
    }
    const TargetTable mux = six_multiplexor_target();
    Moments norm = monte_carlo(20000, [&] {
        auto p = BusPermutation::random(7, rng);
        double raw = 0;
        for (uint64_t c = 0; c < 64; c++) {
            raw += (p(c | 64) & 1) == mux.bit(0, c);
        }
        return raw / 64;
    });
    // Four standard errors of the mean.
    if (std::abs(norm.mean - 0.5) > 4 * 0.0625 / std::sqrt(20000.0)) {
        failures.push_back("normalized mean");
    }
    std::string detail = fmt("normalized mean %.4f", norm.mean);
    for (const auto &f : failures) {
        detail += "; failed " + f;
    }
    return {failures.empty(), detail};
}

}  // namespace
}  // namespace revcirc

int main(int argc, char **argv) {
    using namespace revcirc;
    bool ci = false;
    std::set<int> allowed;
    for (int i = 1; i < argc; i++) {
        std::string arg = argv[i];
        if (arg == "--ci") {
            ci = true;
        } else if (arg.rfind("--allow-fail=", 0) == 0) {
            std::stringstream list(arg.substr(13));
            for (std::string item; std::getline(list, item, ',');) {
                allowed.insert(std::stoi(item));
            }
        } else {
            std::fprintf(stderr, "usage: %s [--ci] [--allow-fail=LIST]\n", argv[0]);
            return 2;
        }
    }

    struct Criterion {
        int id;
        const char *name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "even-parity law", even_parity},
        {2, "no-spare mean shift", mean_shift},
        {3, "spare-wire binomial limit", binomial_limit_with_spare},
        {4, "tvd decay", tvd_decay},
        {5, "exhaustive minimality", exhaustive_minimality},
        {6, "solution density at length 5", ci ? density_ci : density_full},
        {7, "hill-climber behaviour", hill_climber},
        {8, "ga behaviour", ga_behaviour},
        {9, "koza effort", koza},
        {10, "theory closed forms", theory_rows},
        {11, "markov machinery", markov},
        {12, "property suites", properties},
    };
    int unexpected = 0, failed = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2d %s: %s | %s [%.1fs]\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) {
            failed++;
            unexpected += !allowed.count(c.id);
        }
    }
    std::printf("%d of 12 criteria passed\n", 12 - failed);
    return unexpected == 0 ? 0 : 1;
}
