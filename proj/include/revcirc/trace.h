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
#include <span>
#include <vector>

#include "revcirc/circuit.h"

namespace revcirc {

inline constexpr size_t kMaxTraceInputs = 24;
inline constexpr size_t kMaxPermutationWires = 24;

/// Per-wire truth tables over every fitness case, packed 64 cases per word.
///
/// Bit t of a wire row is that wire's value on fitness case t. Rows for
/// n_inputs < 6 occupy the low 2^n bits of a single word; the high bits are
/// kept at zero.
class TruthTableTrace {
   public:
    /// Trace before any gate: input rows enumerate the cases, others are fill.
    static TruthTableTrace initial(size_t wires, size_t n_inputs, bool constant_fill);
    static TruthTableTrace initial(const Circuit &circuit) {
        return initial(circuit.wires(), circuit.n_inputs(), circuit.constant_fill());
    }

    size_t wires() const {
        return wires_;
    }
    size_t n_inputs() const {
        return n_inputs_;
    }
    uint64_t case_count() const {
        return uint64_t{1} << n_inputs_;
    }
    size_t words_per_row() const {
        return words_per_row_;
    }
    /// Mask of meaningful bits in each row word.
    uint64_t word_mask() const {
        return word_mask_;
    }

    std::span<const uint64_t> row(size_t wire) const {
        return {words_.data() + wire * words_per_row_, words_per_row_};
    }
    bool bit(size_t wire, uint64_t fitness_case) const {
        return (row(wire)[fitness_case >> 6] >> (fitness_case & 63)) & 1;
    }
    /// Whole bus state on one fitness case (wire 0 = LSB).
    uint64_t bus_state(uint64_t fitness_case) const;

    /// row[target] ^= row[control_a] & row[control_b], bit-parallel.
    void apply(const Gate &gate);
    void apply(std::span<const Gate> gates);

    bool operator==(const TruthTableTrace &) const = default;

   private:
    TruthTableTrace(size_t wires, size_t n_inputs);

    size_t wires_;
    size_t n_inputs_;
    size_t words_per_row_;
    uint64_t word_mask_;
    std::vector<uint64_t> words_;
};

/// Runs every gate of `circuit` over all 2^n fitness cases at once.
TruthTableTrace evaluate(const Circuit &circuit);

/// Scalar reference: runs the circuit on a single bus state.
uint64_t run_on_state(const Circuit &circuit, uint64_t state);
uint64_t run_on_state(std::span<const Gate> gates, uint64_t state);

/// Mapping of all 2^N bus states; always a bijection when built from a circuit.
class BusPermutation {
   public:
    explicit BusPermutation(std::vector<uint32_t> mapping);
    static BusPermutation identity(size_t wires);
    /// Uniformly random permutation of 2^wires states (Fisher-Yates).
    static BusPermutation random(size_t wires, Rng &rng);

    size_t wires() const {
        return wires_;
    }
    size_t size() const {
        return mapping_.size();
    }
    uint32_t operator()(uint64_t state) const {
        return mapping_[state];
    }
    const std::vector<uint32_t> &mapping() const {
        return mapping_;
    }

    bool is_bijection() const;
    bool is_identity() const;
    BusPermutation inverse() const;
    /// (this ∘ first): apply `first`, then this.
    BusPermutation after(const BusPermutation &first) const;

    bool operator==(const BusPermutation &) const = default;

   private:
    size_t wires_;
    std::vector<uint32_t> mapping_;
};

/// mapping[s] = bus state after running the circuit on full-bus state s.
/// Throws std::invalid_argument if wires > kMaxPermutationWires.
BusPermutation to_permutation(const Circuit &circuit);

}  // namespace revcirc
