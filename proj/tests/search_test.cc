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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.h"
#include "revcirc/search.h"
#include "revcirc/text_format.h"

namespace revcirc {
namespace {

size_t differing_slots(const Gate &a, const Gate &b) {
    // Compare as (target, control set): one rewiring changes one slot.
    if (a.target != b.target) {
        return 1 + (a.control_a != b.control_a || a.control_b != b.control_b);
    }
    if (a == b) {
        return 0;
    }
    // One control replaced: the control multisets share exactly one entry.
    bool shared = a.control_a == b.control_a || a.control_a == b.control_b ||
                  a.control_b == b.control_a || a.control_b == b.control_b;
    return shared ? 1 : 2;
}

TEST(Mutate, AlternativeCounts) {
    Gate distinct(0, 1, 2);
    EXPECT_EQ(slot_alternatives(distinct, GateSlot::kTarget, 12).size(), 9u);
    EXPECT_EQ(slot_alternatives(distinct, GateSlot::kControlA, 12).size(), 10u);
    EXPECT_EQ(slot_alternatives(distinct, GateSlot::kControlB, 12).size(), 10u);
    Gate cnot(0, 5, 5);
    for (auto s : {GateSlot::kTarget, GateSlot::kControlA, GateSlot::kControlB}) {
        EXPECT_EQ(slot_alternatives(cnot, s, 12).size(), 10u);
    }
}

TEST(Mutate, ChangesExactlyOneSlotOfOneGate) {
    Rng rng = make_rng(41);
    for (size_t wires : {3, 6, 12}) {
        Circuit c = random_circuit(wires, 20, rng);
        for (int rep = 0; rep < 2000; rep++) {
            Circuit m = mutate(c, rng);
            ASSERT_EQ(m.size(), c.size());
            size_t changed = 0;
            for (size_t i = 0; i < c.size(); i++) {
                if (!(m[i] == c[i])) {
                    changed++;
                    ASSERT_EQ(differing_slots(m[i], c[i]), 1u) << m[i].str() << " " << c[i].str();
                    ASSERT_NE(m[i].target, m[i].control_a);
                    ASSERT_NE(m[i].target, m[i].control_b);
                    ASSERT_LT(m[i].max_wire(), wires);
                }
            }
            ASSERT_EQ(changed, 1u);
            c = m;
        }
    }
}

TEST(Mutate, EmptyCircuitThrows) {
    Rng rng = make_rng(42);
    EXPECT_THROW(mutate(Circuit(6, 6), rng), std::invalid_argument);
}

TEST(Neighbourhood, TwelveWireCounts) {
    std::vector<Gate> distinct(20, Gate(0, 1, 2));
    std::vector<Gate> equal(20, Gate(0, 1, 1));
    Circuit a(12, 6, 1, true, distinct);
    Circuit b(12, 6, 1, true, equal);
    EXPECT_EQ(neighborhood_size(a), 580u);
    EXPECT_EQ(neighborhood_size(b), 600u);
    EXPECT_EQ(oracle::brute_force_neighbours(a), 580u);
    EXPECT_EQ(oracle::brute_force_neighbours(b), 600u);
    Circuit small(6, 6, 1, true, std::vector<Gate>(5, Gate(3, 0, 4)));
    EXPECT_EQ(neighborhood_size(small), 55u);
    EXPECT_EQ(oracle::brute_force_neighbours(small), 55u);
}

TEST(Neighbourhood, MatchesOracleOnRandomCircuits) {
    Rng rng = make_rng(43);
    for (int rep = 0; rep < 200; rep++) {
        Circuit c = random_circuit(3 + rep % 14, rep % 25, rng);
        EXPECT_EQ(neighborhood_size(c), oracle::brute_force_neighbours(c));
    }
}

TEST(Neighbourhood, CouponCollector) {
    EXPECT_NEAR(coupon_collector_expectation(1), 1, 1e-12);
    EXPECT_NEAR(coupon_collector_expectation(2), 3, 1e-12);
    double e600 = coupon_collector_expectation(600);
    EXPECT_LE(e600, 4185);
    EXPECT_GT(e600, 4184);
    EXPECT_LT(coupon_collector_expectation(580), e600);
}

TEST(HillClimb, StrictImprovementTrajectory) {
    Rng rng = make_rng(44);
    Problem p;
    Circuit start = random_circuit(6, 5, rng);
    RunRecord r = hill_climb(start, p, 5000, rng);
    auto best = r.best_fitness_per_generation();
    ASSERT_FALSE(best.empty());
    EXPECT_EQ(best.front(), p.score(start));
    for (size_t i = 1; i < best.size(); i++) {
        EXPECT_GT(best[i], best[i - 1]);
    }
    EXPECT_EQ(r.final_fitness, best.back());
    EXPECT_LE(r.evaluations, 5001u);
    ASSERT_TRUE(r.best_circuit.has_value());
    EXPECT_EQ(oracle::mux6_score(*r.best_circuit, 0), r.final_fitness);
}

TEST(HillClimb, Deterministic) {
    Problem p;
    Rng a = make_rng(45), b = make_rng(45);
    Circuit s1 = random_circuit(12, 20, a, 6);
    Circuit s2 = random_circuit(12, 20, b, 6);
    RunRecord r1 = hill_climb(s1, p, 3000, a);
    RunRecord r2 = hill_climb(s2, p, 3000, b);
    EXPECT_EQ(r1.best_fitness_per_generation(), r2.best_fitness_per_generation());
    EXPECT_EQ(r1.best_circuit, r2.best_circuit);
}

TEST(HillClimb, StopsAtSolution) {
    Rng rng = make_rng(46);
    Problem p;
    Circuit solved(6, 6, 1, true,
                   {Gate(1, 0, 0), Gate(0, 4, 1), Gate(3, 2, 2), Gate(2, 4, 3), Gate(2, 0, 0),
                    Gate(0, 5, 2)});
    RunRecord r = hill_climb(solved, p, 100, rng);
    EXPECT_TRUE(r.solved);
    EXPECT_EQ(r.evaluations, 0u);
    EXPECT_THROW(hill_climb(solved, p, 0, rng), std::invalid_argument);
}

TEST(Evolve, SmallRunIsDeterministicAndConsistent) {
    GAConfig c;
    c.population = 60;
    c.generations = 15;
    c.seed = 5;
    RunRecord a = evolve(c);
    RunRecord b = evolve(c);
    EXPECT_EQ(a.best_fitness_per_generation(), b.best_fitness_per_generation());
    ASSERT_TRUE(a.best_circuit.has_value());
    EXPECT_EQ(a.best_circuit->wires(), 12u);
    EXPECT_EQ(a.best_circuit->size(), 20u);
    EXPECT_EQ(oracle::mux6_score(*a.best_circuit, 0), a.final_fitness);
    for (const auto &g : a.generations) {
        EXPECT_LE(g.mean, static_cast<double>(g.best));
    }
    c.run = 1;
    EXPECT_NE(evolve(c).best_circuit, a.best_circuit);
}

TEST(Evolve, SolvesTwelveWireProblem) {
    GAConfig c;
    c.seed = 1;
    RunRecord r = evolve(c);
    ASSERT_TRUE(r.solved);
    ASSERT_TRUE(r.solution.has_value());
    EXPECT_EQ(oracle::mux6_score(*r.solution, 0), 64u);
    EXPECT_EQ(r.generations.size(), *r.solved_generation + 1);
}

TEST(Evolve, RejectsBadConfig) {
    GAConfig c;
    c.tournament = 0;
    EXPECT_THROW(evolve(c), std::invalid_argument);
    c = GAConfig{};
    c.population = 0;
    EXPECT_THROW(evolve(c), std::invalid_argument);
}

RunRecord fake_run(std::optional<size_t> solved_at) {
    RunRecord r;
    r.solved = solved_at.has_value();
    r.solved_generation = solved_at;
    return r;
}

TEST(Koza, FormulaExamples) {
    std::vector<RunRecord> half = {fake_run(9), fake_run(std::nullopt)};
    KozaEffort k = koza_effort(half, 500);
    EXPECT_EQ(k.effort, 35000u);
    EXPECT_EQ(k.generation, 9u);
    EXPECT_EQ(k.runs_required, 7u);
    std::vector<RunRecord> instant = {fake_run(0), fake_run(0)};
    EXPECT_EQ(koza_effort(instant, 500).effort, 500u);
    std::vector<RunRecord> none = {fake_run(std::nullopt)};
    EXPECT_THROW(koza_effort(none, 500), std::invalid_argument);
}

TEST(Koza, MinimisesOverGenerations) {
    // P = 0.25 at gen 1, 1.0 at gen 20: 500*2*17 = 17000 vs 500*21*1 = 10500.
    std::vector<RunRecord> runs = {fake_run(1), fake_run(20), fake_run(20), fake_run(20)};
    KozaEffort k = koza_effort(runs, 500);
    EXPECT_EQ(k.effort, 10500u);
    EXPECT_EQ(k.generation, 20u);
}

TEST(RunLog, JsonLines) {
    GAConfig c;
    c.population = 20;
    c.generations = 3;
    RunRecord r = evolve(c);
    std::ostringstream out;
    write_run_log(out, r, 4);
    std::string text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    EXPECT_NE(text.find("\"run\":4"), std::string::npos);
    EXPECT_NE(text.find("\"solved\":false"), std::string::npos);
}

}  // namespace
}  // namespace revcirc
