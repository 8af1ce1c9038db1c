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

#include "revcirc/search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "revcirc/trace.h"

namespace revcirc {

std::vector<size_t> slot_alternatives(const Gate &gate, GateSlot slot, size_t wires) {
    std::vector<size_t> out;
    for (size_t w = 0; w < wires; w++) {
        bool ok;
        switch (slot) {
            case GateSlot::kTarget:
                ok = w != gate.target && w != gate.control_a && w != gate.control_b;
                break;
            case GateSlot::kControlA:
                ok = w != gate.control_a && w != gate.target;
                break;
            case GateSlot::kControlB:
                ok = w != gate.control_b && w != gate.target;
                break;
            default:
                ok = false;
        }
        if (ok) {
            out.push_back(w);
        }
    }
    return out;
}

Circuit mutate(const Circuit &circuit, Rng &rng) {
    if (circuit.empty()) {
        throw std::invalid_argument("cannot mutate an empty circuit");
    }
    size_t index = uniform_below(rng, circuit.size());
    const Gate &gate = circuit[index];
    std::vector<size_t> options[3];
    bool any = false;
    for (int s = 0; s < 3; s++) {
        options[s] = slot_alternatives(gate, static_cast<GateSlot>(s), circuit.wires());
        any = any || !options[s].empty();
    }
    if (!any) {
        throw std::invalid_argument("gate " + gate.str() + " has no legal rewiring");
    }
    size_t slot;
    do {
        slot = uniform_below(rng, 3);
    } while (options[slot].empty());
    size_t wire = options[slot][uniform_below(rng, options[slot].size())];
    Gate mutant;
    switch (static_cast<GateSlot>(slot)) {
        case GateSlot::kTarget:
            mutant = Gate(wire, gate.control_a, gate.control_b);
            break;
        case GateSlot::kControlA:
            mutant = Gate(gate.target, wire, gate.control_b);
            break;
        case GateSlot::kControlB:
            mutant = Gate(gate.target, gate.control_a, wire);
            break;
    }
    return circuit.with_gate(index, mutant);
}

uint64_t neighborhood_size(const Circuit &circuit) {
    uint64_t total = 0;
    size_t n = circuit.wires();
    if (n < 3) {
        return 0;
    }
    for (const Gate &g : circuit.gates()) {
        total += g.is_cnot() ? 3 * (n - 2) : 2 * (n - 2) + (n - 3);
    }
    return total;
}

double coupon_collector_expectation(uint64_t k) {
    double harmonic = 0;
    for (uint64_t i = 1; i <= k; i++) {
        harmonic += 1.0 / static_cast<double>(i);
    }
    return static_cast<double>(k) * harmonic;
}

uint64_t Problem::score(const Circuit &circuit) const {
    return revcirc::score(circuit, target, outputs, selection).raw;
}

std::vector<uint64_t> RunRecord::best_fitness_per_generation() const {
    std::vector<uint64_t> out;
    out.reserve(generations.size());
    for (const auto &g : generations) {
        out.push_back(g.best);
    }
    return out;
}

RunRecord hill_climb(const Circuit &start, const Problem &problem, uint64_t budget, Rng &rng) {
    if (budget < 1) {
        throw std::invalid_argument("hill_climb needs a budget of at least 1");
    }
    RunRecord record;
    Circuit current = start;
    uint64_t fitness = problem.score(current);
    uint64_t goal = problem.max_fitness();
    record.generations.push_back({0, 0, fitness, static_cast<double>(fitness)});
    uint64_t evaluations = 0;
    while (fitness < goal && evaluations < budget) {
        Circuit candidate = mutate(current, rng);
        uint64_t f = problem.score(candidate);
        evaluations++;
        if (f > fitness) {
            current = std::move(candidate);
            fitness = f;
            record.generations.push_back(
                {record.generations.size(), evaluations, fitness, static_cast<double>(fitness)});
        }
    }
    record.evaluations = evaluations;
    record.final_fitness = fitness;
    record.best_circuit = current;
    if (fitness == goal) {
        record.solved = true;
        record.solved_generation = record.generations.back().generation;
        record.solution = current;
    }
    return record;
}

void HillClimbConfig::validate() const {
    if (budget < 1) {
        throw std::invalid_argument("budget must be at least 1");
    }
    if (length < 1) {
        throw std::invalid_argument("circuit length must be at least 1");
    }
    if (problem.target.n_inputs() > wires) {
        throw std::invalid_argument("target has more inputs than wires");
    }
    if (problem.selection == OutputSelection::kFixed) {
        problem.outputs.check(wires);
    }
}

RunRecord hill_climb(const HillClimbConfig &config) {
    config.validate();
    Rng rng = make_rng(config.seed, {0x6863, config.run});
    Circuit start = random_circuit(config.wires, config.length, rng,
                                   config.problem.target.n_inputs(),
                                   config.problem.target.m_outputs(), config.constant_fill);
    return hill_climb(start, config.problem, config.budget, rng);
}

void GAConfig::validate() const {
    if (population < 1) {
        throw std::invalid_argument("population must be at least 1");
    }
    if (tournament < 1) {
        throw std::invalid_argument("tournament size must be at least 1");
    }
    if (generations < 1) {
        throw std::invalid_argument("at least one generation is required");
    }
    if (length < 1) {
        throw std::invalid_argument("circuit length must be at least 1");
    }
    if (problem.target.n_inputs() > wires) {
        throw std::invalid_argument("target has more inputs than wires");
    }
    if (problem.selection == OutputSelection::kFixed) {
        problem.outputs.check(wires);
    }
}

namespace {

size_t tournament_winner(std::span<const uint64_t> fitness, size_t size, Rng &rng) {
    size_t winner = uniform_below(rng, fitness.size());
    uint64_t ties = 1;
    for (size_t i = 1; i < size; i++) {
        size_t c = uniform_below(rng, fitness.size());
        if (fitness[c] > fitness[winner]) {
            winner = c;
            ties = 1;
        } else if (fitness[c] == fitness[winner]) {
            ties++;
            if (uniform_below(rng, ties) == 0) {
                winner = c;
            }
        }
    }
    return winner;
}

}  // namespace

RunRecord evolve(const GAConfig &config, std::optional<std::vector<Circuit>> initial) {
    config.validate();
    Rng rng = make_rng(config.seed, {0x6761, config.run});
    const Problem &problem = config.problem;
    const uint64_t goal = problem.max_fitness();
    std::vector<Circuit> population;
    if (initial) {
        if (initial->empty()) {
            throw std::invalid_argument("initial population is empty");
        }
        population = std::move(*initial);
    } else {
        auto table = enumerate_gates(config.wires);
        population.reserve(config.population);
        for (size_t i = 0; i < config.population; i++) {
            population.push_back(random_circuit(table, config.wires, config.length, rng,
                                                problem.target.n_inputs(), 1,
                                                config.constant_fill));
        }
    }

    RunRecord record;
    std::vector<uint64_t> fitness(population.size());
    for (size_t gen = 0; gen < config.generations; gen++) {
        if (gen > 0) {
            std::vector<Circuit> next;
            next.reserve(config.population);
            for (size_t i = 0; i < config.population; i++) {
                size_t parent = tournament_winner(fitness, config.tournament, rng);
                next.push_back(mutate(population[parent], rng));
            }
            population = std::move(next);
            fitness.assign(population.size(), 0);
        }
        double sum = 0;
        size_t best_index = 0;
        for (size_t i = 0; i < population.size(); i++) {
            fitness[i] = problem.score(population[i]);
            sum += static_cast<double>(fitness[i]);
            if (fitness[i] > fitness[best_index]) {
                best_index = i;
            }
        }
        record.evaluations += population.size();
        record.generations.push_back({gen, record.evaluations, fitness[best_index],
                                      sum / static_cast<double>(population.size())});
        if (!record.best_circuit || fitness[best_index] > record.final_fitness) {
            record.final_fitness = fitness[best_index];
            record.best_circuit = population[best_index];
        }
        if (fitness[best_index] == goal) {
            record.solved = true;
            record.solved_generation = gen;
            record.solution = population[best_index];
            break;
        }
    }
    return record;
}

KozaEffort koza_effort(std::span<const RunRecord> runs, size_t population, double z) {
    if (runs.empty()) {
        throw std::invalid_argument("koza_effort needs at least one run");
    }
    if (!(z > 0 && z < 1)) {
        throw std::invalid_argument("koza_effort: z must lie in (0, 1)");
    }
    size_t last = 0;
    bool any = false;
    for (const auto &r : runs) {
        if (r.solved_generation) {
            any = true;
            last = std::max(last, *r.solved_generation);
        }
    }
    if (!any) {
        throw std::invalid_argument("koza_effort is undefined when no run solved");
    }
    KozaEffort best;
    best.effort = std::numeric_limits<uint64_t>::max();
    for (size_t i = 0; i <= last; i++) {
        size_t solved = 0;
        for (const auto &r : runs) {
            if (r.solved_generation && *r.solved_generation <= i) {
                solved++;
            }
        }
        if (solved == 0) {
            continue;
        }
        double p = static_cast<double>(solved) / static_cast<double>(runs.size());
        uint64_t required =
            p >= 1.0 ? 1
                     : static_cast<uint64_t>(std::ceil(std::log(1 - z) / std::log(1 - p)));
        uint64_t effort = static_cast<uint64_t>(population) * (i + 1) * required;
        if (effort < best.effort) {
            best = {effort, i, required, p};
        }
    }
    return best;
}

void write_run_log(std::ostream &out, const RunRecord &run, size_t run_index) {
    for (const auto &g : run.generations) {
        nlohmann::json line{{"run", run_index},
                            {"generation", g.generation},
                            {"evaluations", g.evaluations},
                            {"best", g.best},
                            {"mean", g.mean},
                            {"solved", run.solved && run.solved_generation == g.generation}};
        out << line.dump() << '\n';
    }
}

}  // namespace revcirc
