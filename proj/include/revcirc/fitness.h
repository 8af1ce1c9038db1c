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
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "revcirc/circuit.h"
#include "revcirc/trace.h"

namespace revcirc {

/// Desired output bits for every fitness case, packed like TruthTableTrace rows.
class TargetTable {
   public:
    /// `rows[j]` is output bit j over all 2^n cases.
    TargetTable(size_t n_inputs, size_t m_outputs, std::vector<std::vector<uint64_t>> rows);

    /// Builds a table from `fn(case) -> m-bit answer` (bit j = output j).
    static TargetTable from_function(size_t n_inputs, size_t m_outputs,
                                     const std::function<uint64_t(uint64_t)> &fn);

    size_t n_inputs() const {
        return n_inputs_;
    }
    size_t m_outputs() const {
        return rows_.size();
    }
    uint64_t case_count() const {
        return uint64_t{1} << n_inputs_;
    }
    /// Largest achievable Hamming score, m * 2^n.
    uint64_t max_fitness() const {
        return m_outputs() * case_count();
    }
    size_t words_per_row() const {
        return words_per_row_;
    }
    uint64_t word_mask() const {
        return word_mask_;
    }
    std::span<const uint64_t> row(size_t output) const {
        return rows_[output];
    }
    bool bit(size_t output, uint64_t fitness_case) const {
        return (rows_[output][fitness_case >> 6] >> (fitness_case & 63)) & 1;
    }
    /// m-bit answer for one fitness case.
    uint64_t answer(uint64_t fitness_case) const;
    /// Number of cases where output `output` should be 1.
    uint64_t ones(size_t output) const;

    bool operator==(const TargetTable &) const = default;

   private:
    size_t n_inputs_;
    size_t words_per_row_;
    uint64_t word_mask_;
    std::vector<std::vector<uint64_t>> rows_;
};

/// Raw Hamming matches and their normalization by m * 2^n.
struct FitnessValue {
    uint64_t raw = 0;
    uint64_t max = 0;

    double normalized() const {
        return max == 0 ? 0.0 : static_cast<double>(raw) / static_cast<double>(max);
    }
    bool perfect() const {
        return raw == max;
    }
    bool operator==(const FitnessValue &) const = default;
};

/// Which wire each of the m outputs is read from.
class OutputMap {
   public:
    explicit OutputMap(std::vector<size_t> wires);
    /// Outputs 0..m-1 read from wires 0..m-1.
    static OutputMap first(size_t m_outputs);

    size_t size() const {
        return wires_.size();
    }
    size_t operator[](size_t output) const {
        return wires_[output];
    }
    const std::vector<size_t> &wires() const {
        return wires_;
    }
    /// Throws std::invalid_argument unless every wire is < `wires`.
    void check(size_t wires) const;

    bool operator==(const OutputMap &) const = default;

   private:
    std::vector<size_t> wires_;
};

/// Fixed output wires, or the best-scoring wire per circuit (m = 1 only).
enum class OutputSelection { kFixed, kBestWire };

/// Six-multiplexor: inputs (D0,D1,D2,D3,A0,A1) on wires 0..5, output D[2*A1 + A0].
TargetTable six_multiplexor_target();

/// Matching bits between one evaluated row and one target row.
uint64_t row_matches(std::span<const uint64_t> row, std::span<const uint64_t> target,
                     uint64_t word_mask);

FitnessValue hamming_fitness(const TruthTableTrace &trace, const TargetTable &target,
                             const OutputMap &outputs);
/// Evaluates the circuit once bit-parallel; throws on dimension mismatch.
FitnessValue hamming_fitness(const Circuit &circuit, const TargetTable &target,
                             const OutputMap &outputs);

/// Best single-wire score over all wires (m = 1 targets), with the wire used.
std::pair<FitnessValue, size_t> best_wire_fitness(const TruthTableTrace &trace,
                                                  const TargetTable &target);

/// Scores under a selection policy; kBestWire ignores `outputs`.
FitnessValue score(const Circuit &circuit, const TargetTable &target, const OutputMap &outputs,
                   OutputSelection selection);

/// Table the circuit actually realizes on the given outputs.
TargetTable realized_table(const Circuit &circuit, const OutputMap &outputs);

enum class ParityClass { kEvenOnly, kOddOnly, kAll };

/// Parity of Hamming scores any circuit can reach on the six-multiplexor.
/// With no spare line (wires == n) every output row is balanced, so scores are even.
ParityClass parity_of_reachable_fitness(size_t wires, size_t n_inputs);
/// General form for an arbitrary target with fixed output wires.
ParityClass parity_of_reachable_fitness(size_t wires, const TargetTable &target);

/// One RMS test case: an input pattern and the required m-bit answer.
struct RmsCase {
    uint64_t input;
    uint64_t answer;
};

/// sqrt((1/T) * sum |value_t - answer_t|^2), reading the m output wires as an
/// integer with output 0 as its least-significant bit.
double rms_error(const Circuit &circuit, std::span<const RmsCase> cases, size_t m_outputs,
                 const OutputMap &outputs);

/// Header `n m`, then 2^n lines of m space-separated bits in case order.
void write_target_table(std::ostream &out, const TargetTable &table);
TargetTable read_target_table(std::istream &in);

}  // namespace revcirc
