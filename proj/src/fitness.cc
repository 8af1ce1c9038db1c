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

#include "revcirc/fitness.h"

#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace revcirc {

TargetTable::TargetTable(size_t n_inputs, size_t m_outputs,
                         std::vector<std::vector<uint64_t>> rows)
    : n_inputs_(n_inputs), rows_(std::move(rows)) {
    if (n_inputs > kMaxTraceInputs) {
        throw std::invalid_argument("too many inputs for a target table");
    }
    if (rows_.size() != m_outputs) {
        throw std::invalid_argument("target table needs one row per output");
    }
    words_per_row_ = n_inputs <= 6 ? 1 : size_t{1} << (n_inputs - 6);
    word_mask_ = n_inputs >= 6 ? ~uint64_t{0} : (uint64_t{1} << (uint64_t{1} << n_inputs)) - 1;
    for (const auto &r : rows_) {
        if (r.size() != words_per_row_) {
            throw std::invalid_argument("target row length must be 2^n bits");
        }
        for (uint64_t w : r) {
            if (w & ~word_mask_) {
                throw std::invalid_argument("target row has bits beyond 2^n cases");
            }
        }
    }
}

TargetTable TargetTable::from_function(size_t n_inputs, size_t m_outputs,
                                       const std::function<uint64_t(uint64_t)> &fn) {
    size_t words = n_inputs <= 6 ? 1 : size_t{1} << (n_inputs - 6);
    std::vector<std::vector<uint64_t>> rows(m_outputs, std::vector<uint64_t>(words, 0));
    uint64_t cases = uint64_t{1} << n_inputs;
    for (uint64_t t = 0; t < cases; t++) {
        uint64_t answer = fn(t);
        for (size_t j = 0; j < m_outputs; j++) {
            if ((answer >> j) & 1) {
                rows[j][t >> 6] |= uint64_t{1} << (t & 63);
            }
        }
    }
    return TargetTable(n_inputs, m_outputs, std::move(rows));
}

uint64_t TargetTable::answer(uint64_t fitness_case) const {
    uint64_t a = 0;
    for (size_t j = 0; j < rows_.size(); j++) {
        a |= uint64_t{bit(j, fitness_case)} << j;
    }
    return a;
}

uint64_t TargetTable::ones(size_t output) const {
    uint64_t total = 0;
    for (uint64_t w : rows_[output]) {
        total += static_cast<uint64_t>(std::popcount(w));
    }
    return total;
}

OutputMap::OutputMap(std::vector<size_t> wires) : wires_(std::move(wires)) {
    std::set<size_t> seen(wires_.begin(), wires_.end());
    if (seen.size() != wires_.size()) {
        throw std::invalid_argument("output wires must be distinct");
    }
}

OutputMap OutputMap::first(size_t m_outputs) {
    std::vector<size_t> w(m_outputs);
    for (size_t j = 0; j < m_outputs; j++) {
        w[j] = j;
    }
    return OutputMap(std::move(w));
}

void OutputMap::check(size_t wires) const {
    for (size_t w : wires_) {
        if (w >= wires) {
            throw std::invalid_argument("output wire " + std::to_string(w) +
                                        " is outside the bus");
        }
    }
}

TargetTable six_multiplexor_target() {
    return TargetTable::from_function(6, 1, [](uint64_t t) {
        uint64_t a0 = (t >> 4) & 1;
        uint64_t a1 = (t >> 5) & 1;
        return (t >> (2 * a1 + a0)) & 1;
    });
}

uint64_t row_matches(std::span<const uint64_t> row, std::span<const uint64_t> target,
                     uint64_t word_mask) {
    uint64_t total = 0;
    for (size_t k = 0; k < row.size(); k++) {
        total += static_cast<uint64_t>(std::popcount(~(row[k] ^ target[k]) & word_mask));
    }
    return total;
}

FitnessValue hamming_fitness(const TruthTableTrace &trace, const TargetTable &target,
                             const OutputMap &outputs) {
    if (trace.n_inputs() != target.n_inputs()) {
        throw std::invalid_argument("circuit has " + std::to_string(trace.n_inputs()) +
                                    " inputs but target expects " +
                                    std::to_string(target.n_inputs()));
    }
    if (outputs.size() != target.m_outputs()) {
        throw std::invalid_argument("output map size does not match target outputs");
    }
    outputs.check(trace.wires());
    FitnessValue v{0, target.max_fitness()};
    for (size_t j = 0; j < outputs.size(); j++) {
        v.raw += row_matches(trace.row(outputs[j]), target.row(j), target.word_mask());
    }
    return v;
}

FitnessValue hamming_fitness(const Circuit &circuit, const TargetTable &target,
                             const OutputMap &outputs) {
    if (circuit.n_inputs() != target.n_inputs()) {
        throw std::invalid_argument("circuit has " + std::to_string(circuit.n_inputs()) +
                                    " inputs but target expects " +
                                    std::to_string(target.n_inputs()));
    }
    return hamming_fitness(evaluate(circuit), target, outputs);
}

std::pair<FitnessValue, size_t> best_wire_fitness(const TruthTableTrace &trace,
                                                  const TargetTable &target) {
    if (target.m_outputs() != 1) {
        throw std::invalid_argument("best-wire scoring needs a single-output target");
    }
    if (trace.n_inputs() != target.n_inputs()) {
        throw std::invalid_argument("input count mismatch");
    }
    FitnessValue best{0, target.max_fitness()};
    size_t best_wire = 0;
    for (size_t w = 0; w < trace.wires(); w++) {
        uint64_t raw = row_matches(trace.row(w), target.row(0), target.word_mask());
        if (raw > best.raw) {
            best.raw = raw;
            best_wire = w;
        }
    }
    return {best, best_wire};
}

FitnessValue score(const Circuit &circuit, const TargetTable &target, const OutputMap &outputs,
                   OutputSelection selection) {
    if (selection == OutputSelection::kBestWire) {
        return best_wire_fitness(evaluate(circuit), target).first;
    }
    return hamming_fitness(circuit, target, outputs);
}

TargetTable realized_table(const Circuit &circuit, const OutputMap &outputs) {
    outputs.check(circuit.wires());
    TruthTableTrace trace = evaluate(circuit);
    std::vector<std::vector<uint64_t>> rows;
    for (size_t j = 0; j < outputs.size(); j++) {
        auto r = trace.row(outputs[j]);
        rows.emplace_back(r.begin(), r.end());
    }
    return TargetTable(circuit.n_inputs(), outputs.size(), std::move(rows));
}

ParityClass parity_of_reachable_fitness(size_t wires, size_t n_inputs) {
    if (wires < n_inputs) {
        throw std::invalid_argument("fewer wires than inputs");
    }
    return wires == n_inputs ? ParityClass::kEvenOnly : ParityClass::kAll;
}

ParityClass parity_of_reachable_fitness(size_t wires, const TargetTable &target) {
    if (wires < target.n_inputs()) {
        throw std::invalid_argument("fewer wires than inputs");
    }
    if (wires > target.n_inputs() || target.n_inputs() == 0) {
        return ParityClass::kAll;
    }
    // A permutation of all 2^n states leaves every output row with exactly
    // 2^(n-1) ones, so matches = 2k + 2^n - ones - 2^(n-1) for some k.
    uint64_t cases = target.case_count();
    uint64_t parity = 0;
    for (size_t j = 0; j < target.m_outputs(); j++) {
        parity += cases - target.ones(j) - cases / 2;
    }
    return (parity & 1) ? ParityClass::kOddOnly : ParityClass::kEvenOnly;
}

double rms_error(const Circuit &circuit, std::span<const RmsCase> cases, size_t m_outputs,
                 const OutputMap &outputs) {
    if (cases.empty()) {
        throw std::invalid_argument("rms_error needs at least one case");
    }
    if (outputs.size() != m_outputs) {
        throw std::invalid_argument("output map size does not match m");
    }
    if (m_outputs >= 64) {
        throw std::invalid_argument("too many outputs for an integer answer");
    }
    outputs.check(circuit.wires());
    uint64_t input_limit = uint64_t{1} << circuit.n_inputs();
    uint64_t answer_limit = uint64_t{1} << m_outputs;
    double sum = 0.0;
    for (const RmsCase &c : cases) {
        if (c.input >= input_limit) {
            throw std::invalid_argument("rms case input exceeds 2^n");
        }
        if (c.answer >= answer_limit) {
            throw std::invalid_argument("rms case answer exceeds 2^m");
        }
        uint64_t state = run_on_state(circuit, circuit.initial_state(c.input));
        uint64_t value = 0;
        for (size_t j = 0; j < m_outputs; j++) {
            value |= ((state >> outputs[j]) & 1) << j;
        }
        double diff = static_cast<double>(value) - static_cast<double>(c.answer);
        sum += diff * diff;
    }
    return std::sqrt(sum / static_cast<double>(cases.size()));
}

void write_target_table(std::ostream &out, const TargetTable &table) {
    out << table.n_inputs() << ' ' << table.m_outputs() << '\n';
    for (uint64_t t = 0; t < table.case_count(); t++) {
        for (size_t j = 0; j < table.m_outputs(); j++) {
            if (j) {
                out << ' ';
            }
            out << (table.bit(j, t) ? '1' : '0');
        }
        out << '\n';
    }
}

TargetTable read_target_table(std::istream &in) {
    size_t n = 0;
    size_t m = 0;
    if (!(in >> n >> m)) {
        throw std::runtime_error("target table: missing 'n m' header");
    }
    if (n > kMaxTraceInputs || m == 0 || m > kMaxWires) {
        throw std::runtime_error("target table: header out of range");
    }
    size_t words = n <= 6 ? 1 : size_t{1} << (n - 6);
    std::vector<std::vector<uint64_t>> rows(m, std::vector<uint64_t>(words, 0));
    uint64_t cases = uint64_t{1} << n;
    for (uint64_t t = 0; t < cases; t++) {
        for (size_t j = 0; j < m; j++) {
            int b = -1;
            if (!(in >> b) || (b != 0 && b != 1)) {
                throw std::runtime_error("target table: bad bit at case " + std::to_string(t) +
                                         ", output " + std::to_string(j));
            }
            if (b) {
                rows[j][t >> 6] |= uint64_t{1} << (t & 63);
            }
        }
    }
    return TargetTable(n, m, std::move(rows));
}

}  // namespace revcirc
