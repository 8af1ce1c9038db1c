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


// Independent reference implementations used only by the tests. Nothing here
// calls into the bit-parallel engine.

#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

#include "revcirc/circuit.h"

namespace revcirc::oracle {

/// Six-multiplexor by definition: case bits are D0..D3, A0, A1 (LSB first).
inline bool mux6(uint64_t c) {
    bool d[4] = {bool(c & 1), bool(c & 2), bool(c & 4), bool(c & 8)};
    int a0 = (c >> 4) & 1;
    int a1 = (c >> 5) & 1;
    return d[2 * a1 + a0];
}

/// Runs the circuit on one fitness case, one wire at a time.
inline std::vector<bool> run_case(const Circuit &circuit, uint64_t input) {
    std::vector<bool> bus(circuit.wires());
    for (size_t w = 0; w < circuit.wires(); w++) {
        bus[w] = w < circuit.n_inputs() ? bool((input >> w) & 1) : circuit.constant_fill();
    }
    for (const Gate &g : circuit.gates()) {
        if (bus[g.control_a] && bus[g.control_b]) {
            bus[g.target] = !bus[g.target];
        }
    }
    return bus;
}

/// Case-by-case six-mux score reading `wire`.
inline uint64_t mux6_score(const Circuit &circuit, size_t wire) {
    uint64_t score = 0;
    for (uint64_t c = 0; c < 64; c++) {
        score += run_case(circuit, c)[wire] == mux6(c);
    }
    return score;
}

using Triple = std::tuple<size_t, size_t, size_t>;

/// All (t, a, b) with t distinct from both controls, controls as a set.
inline std::set<Triple> brute_force_gates(size_t wires) {
    std::set<Triple> out;
    for (size_t t = 0; t < wires; t++) {
        for (size_t a = 0; a < wires; a++) {
            for (size_t b = 0; b < wires; b++) {
                if (a != t && b != t) {
                    out.insert({t, std::min(a, b), std::max(a, b)});
                }
            }
        }
    }
    return out;
}

/// Single-gate rewirings of `circuit`, counted per (gate, slot, new wire).
/// The slot view keeps both controls even when they coincide.
inline uint64_t brute_force_neighbours(const Circuit &circuit) {
    uint64_t count = 0;
    size_t n = circuit.wires();
    for (const Gate &g : circuit.gates()) {
        std::array<size_t, 3> slots = {g.target, g.control_a, g.control_b};
        for (size_t s = 0; s < 3; s++) {
            for (size_t w = 0; w < n; w++) {
                if (w == slots[s]) {
                    continue;
                }
                auto next = slots;
                next[s] = w;
                if (next[0] != next[1] && next[0] != next[2]) {
                    count++;
                }
            }
        }
    }
    return count;
}

}  // namespace revcirc::oracle
