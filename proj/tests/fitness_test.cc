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

#include <cmath>
#include <sstream>

#include "oracles.h"
#include "revcirc/fitness.h"
#include "revcirc/trace.h"

namespace revcirc {
namespace {

const TargetTable &mux() {
    static const TargetTable t = six_multiplexor_target();
    return t;
}

TEST(SixMux, MatchesDefinition) {
    for (uint64_t c = 0; c < 64; c++) {
        EXPECT_EQ(mux().bit(0, c), oracle::mux6(c)) << c;
    }
    EXPECT_EQ(mux().ones(0), 32u);
    EXPECT_EQ(mux().max_fitness(), 64u);
}

TEST(SixMux, InvariantUnderAddressRelabeling) {
    // Swap D1<->D2 together with A0<->A1.
    auto relabel = [](uint64_t c) {
        auto bit = [&](int i) { return (c >> i) & 1; };
        return bit(0) | bit(2) << 1 | bit(1) << 2 | bit(3) << 3 | bit(5) << 4 | bit(4) << 5;
    };
    for (uint64_t c = 0; c < 64; c++) {
        EXPECT_EQ(oracle::mux6(c), oracle::mux6(relabel(c)));
        EXPECT_EQ(mux().bit(0, c), mux().bit(0, relabel(c)));
    }
}

TEST(Hamming, EmptyCircuitOnD0) {
    Circuit empty(6, 6);
    EXPECT_EQ(hamming_fitness(empty, mux(), OutputMap({0})).raw, 40u);
    EXPECT_EQ(oracle::mux6_score(empty, 0), 40u);
    // Address wires agree with the output only by chance.
    EXPECT_EQ(hamming_fitness(empty, mux(), OutputMap({4})).raw, 32u);
}

TEST(Hamming, AgreesWithScalarOracle) {
    Rng rng = make_rng(21);
    for (size_t wires : {6, 7, 12}) {
        for (int rep = 0; rep < 30; rep++) {
            Circuit c = random_circuit(wires, rep, rng, 6);
            for (size_t w = 0; w < wires; w++) {
                ASSERT_EQ(hamming_fitness(c, mux(), OutputMap({w})).raw, oracle::mux6_score(c, w));
            }
            auto [best, wire] = best_wire_fitness(evaluate(c), mux());
            EXPECT_EQ(best.raw, oracle::mux6_score(c, wire));
            for (size_t w = 0; w < wires; w++) {
                EXPECT_LE(oracle::mux6_score(c, w), best.raw);
            }
        }
    }
}

TEST(Hamming, NotGateComplementsScore) {
    // Wire 6 is a constant 1, so T(6,6)>0 inverts wire 0.
    Rng rng = make_rng(22);
    for (int rep = 0; rep < 40; rep++) {
        Circuit c = random_circuit(7, rep, rng, 6);
        std::vector<Gate> gates = c.gates();
        // Keep wire 6 constant so the NOT stays a NOT.
        std::erase_if(gates, [](const Gate &g) { return g.target == 6; });
        Circuit base(7, 6, 1, true, gates);
        gates.push_back(Gate(0, 6, 6));
        Circuit inverted(7, 6, 1, true, gates);
        uint64_t f = hamming_fitness(base, mux(), OutputMap({0})).raw;
        EXPECT_EQ(hamming_fitness(inverted, mux(), OutputMap({0})).raw, 64 - f);
    }
}

TEST(Hamming, HandBuiltSolution) {
    // Two-level multiplexor: each pair selected by A0, then the pair by A1.
    Circuit c(6, 6, 1, true,
              {Gate(1, 0, 0), Gate(0, 4, 1), Gate(3, 2, 2), Gate(2, 4, 3), Gate(2, 0, 0),
               Gate(0, 5, 2)});
    EXPECT_TRUE(hamming_fitness(c, mux(), OutputMap({0})).perfect());
    EXPECT_EQ(oracle::mux6_score(c, 0), 64u);
}

TEST(Hamming, MultiOutputAndNormalization) {
    auto id2 = TargetTable::from_function(3, 2, [](uint64_t c) { return c & 3; });
    Circuit empty(3, 3, 2);
    FitnessValue v = hamming_fitness(empty, id2, OutputMap::first(2));
    EXPECT_EQ(v.raw, 16u);
    EXPECT_TRUE(v.perfect());
    Circuit flip(3, 3, 2, true, {Gate(0, 1, 2)});
    v = hamming_fitness(flip, id2, OutputMap::first(2));
    EXPECT_EQ(v.raw, 14u);
    EXPECT_DOUBLE_EQ(v.normalized(), 14.0 / 16.0);
    EXPECT_EQ(realized_table(flip, OutputMap::first(2)).answer(6), 3u);
}

TEST(Hamming, DimensionMismatchThrows) {
    Circuit c(6, 5);
    EXPECT_THROW(hamming_fitness(c, mux(), OutputMap({0})), std::invalid_argument);
    EXPECT_THROW(OutputMap({1, 1}), std::invalid_argument);
    EXPECT_THROW(hamming_fitness(Circuit(6, 6), mux(), OutputMap({6})), std::invalid_argument);
}

TEST(Parity, ReachableClasses) {
    EXPECT_EQ(parity_of_reachable_fitness(6, 6), ParityClass::kEvenOnly);
    EXPECT_EQ(parity_of_reachable_fitness(7, 6), ParityClass::kAll);
    EXPECT_EQ(parity_of_reachable_fitness(12, 6), ParityClass::kAll);
}

TEST(Parity, NoSpareLineScoresAreEven) {
    Rng rng = make_rng(23);
    for (int rep = 0; rep < 500; rep++) {
        Circuit c = random_circuit(6, 1 + rep % 40, rng);
        for (size_t w = 0; w < 6; w++) {
            ASSERT_EQ(oracle::mux6_score(c, w) % 2, 0u);
        }
    }
}

TEST(Rms, ExactAnswersGiveZero) {
    Circuit c(4, 4, 2);
    std::vector<RmsCase> cases;
    for (uint64_t i = 0; i < 16; i++) {
        cases.push_back({i, i & 3});
    }
    EXPECT_DOUBLE_EQ(rms_error(c, cases, 2, OutputMap::first(2)), 0.0);
    cases[0].answer = 3;  // |0 - 3|^2 / 16
    EXPECT_NEAR(rms_error(c, cases, 2, OutputMap::first(2)), std::sqrt(9.0 / 16), 1e-12);
}

TEST(Rms, SingleBitIdentity) {
    std::vector<RmsCase> cases;
    for (uint64_t i = 0; i < 64; i++) {
        cases.push_back({i, mux().answer(i)});
    }
    Rng rng = make_rng(24);
    for (int rep = 0; rep < 50; rep++) {
        Circuit c = random_circuit(6 + rep % 3, rep, rng, 6);
        uint64_t raw = hamming_fitness(c, mux(), OutputMap({0})).raw;
        EXPECT_NEAR(rms_error(c, cases, 1, OutputMap({0})), std::sqrt((64.0 - raw) / 64), 1e-12);
    }
}

TEST(TargetIo, RoundTrip) {
    std::stringstream s;
    write_target_table(s, mux());
    EXPECT_EQ(read_target_table(s), mux());
    std::istringstream bad("2 1\n0\n1\n");
    EXPECT_THROW(read_target_table(bad), std::runtime_error);
}

}  // namespace
}  // namespace revcirc
