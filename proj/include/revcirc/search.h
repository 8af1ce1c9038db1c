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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "revcirc/circuit.h"
#include "revcirc/fitness.h"

namespace revcirc {

/// Slots of a gate a mutation may rewire.
enum class GateSlot { kTarget = 0, kControlA = 1, kControlB = 2 };

/// Wires a slot may be moved to: different from its current wire and legal
/// (a control may not land on the target, the target on either control).
std::vector<size_t> slot_alternatives(const Gate &gate, GateSlot slot, size_t wires);

/// Rewires exactly one slot of one uniformly chosen gate to a uniformly chosen
/// legal alternative. Slots without alternatives are redrawn. Throws
/// std::invalid_argument for an empty circuit or when no slot can move.
Circuit mutate(const Circuit &circuit, Rng &rng);

/// Single-mutation neighbours, counted per (gate, slot, new wire). A gate
/// contributes 2(N-2) + (N-3) with distinct controls, 3(N-2) with equal ones.
uint64_t neighborhood_size(const Circuit &circuit);

/// k * H_k: expected uniform draws until all k neighbours have been tried.
double coupon_collector_expectation(uint64_t k);

/// What a search is scored against.
struct Problem {
    TargetTable target = six_multiplexor_target();
    OutputMap outputs = OutputMap::first(1);
    OutputSelection selection = OutputSelection::kFixed;

    uint64_t score(const Circuit &circuit) const;
    uint64_t max_fitness() const {
        return target.max_fitness();
    }
};

struct GenerationStats {
    size_t generation = 0;
    /// Evaluations spent when this entry was recorded.
    uint64_t evaluations = 0;
    uint64_t best = 0;
    double mean = 0;
};

/// Trajectory of one search run.
struct RunRecord {
    /// GA: one entry per generation (the best of that generation, not
    /// cumulative). Hill climber: the start plus one entry per accepted move.
    std::vector<GenerationStats> generations;
    bool solved = false;
    std::optional<size_t> solved_generation;
    uint64_t evaluations = 0;
    uint64_t final_fitness = 0;
    std::optional<Circuit> solution;
    /// Best circuit seen (the solution when solved).
    std::optional<Circuit> best_circuit;

    std::vector<uint64_t> best_fitness_per_generation() const;
};

/// Strict-improvement local search: a mutant replaces the current circuit only
/// if it scores higher. Stops at a perfect score or after `budget` mutant
/// evaluations.
RunRecord hill_climb(const Circuit &start, const Problem &problem, uint64_t budget, Rng &rng);

struct HillClimbConfig {
    size_t wires = 6;
    size_t length = 5;
    uint64_t budget = 50000;
    bool constant_fill = true;
    Problem problem;
    uint64_t seed = 1;
    uint64_t run = 0;

    void validate() const;
};

/// One seeded run from a random start of the configured shape.
RunRecord hill_climb(const HillClimbConfig &config);

/// Generational, non-elitist GA with 100% mutation and no crossover.
struct GAConfig {
    size_t population = 500;
    size_t tournament = 7;
    /// Generations including the initial one (indices 0..generations-1).
    size_t generations = 500;
    size_t wires = 12;
    size_t length = 20;
    bool constant_fill = true;
    Problem problem;
    uint64_t seed = 1;
    /// Selects an independent stream under the same seed.
    uint64_t run = 0;

    void validate() const;
};

/// Runs one GA. When `initial` is given it replaces the random generation 0.
RunRecord evolve(const GAConfig &config, std::optional<std::vector<Circuit>> initial = {});

struct KozaEffort {
    /// Minimum over generations of M (i+1) R(z), individuals processed.
    uint64_t effort = 0;
    size_t generation = 0;
    uint64_t runs_required = 0;
    double success_probability = 0;
};

/// Koza's I(M, i, z) with P(M, i) the fraction of runs solved by generation i.
/// Throws std::invalid_argument when no run solved.
KozaEffort koza_effort(std::span<const RunRecord> runs, size_t population, double z = 0.99);

/// One JSON object per generation entry: run, generation, evaluations, best,
/// mean, solved.
void write_run_log(std::ostream &out, const RunRecord &run, size_t run_index);

}  // namespace revcirc
