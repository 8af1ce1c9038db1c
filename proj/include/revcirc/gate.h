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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace revcirc {

/// Largest bus width supported by the bit-parallel engine.
inline constexpr size_t kMaxWires = 64;

/// One CCNOT (Toffoli) placement: `target ^= control_a & control_b`.
///
/// Controls are unordered. The stored form always has `control_a <= control_b`,
/// so the defaulted comparisons implement equality of unordered placements.
/// Equal controls are legal and degenerate to a CNOT.
struct Gate {
    uint8_t target = 0;
    uint8_t control_a = 1;
    uint8_t control_b = 1;

    Gate() = default;
    /// Throws std::invalid_argument if the target coincides with a control.
    Gate(size_t target, size_t control_a, size_t control_b);

    bool is_cnot() const {
        return control_a == control_b;
    }
    uint64_t control_mask() const {
        return (uint64_t{1} << control_a) | (uint64_t{1} << control_b);
    }
    uint64_t target_mask() const {
        return uint64_t{1} << target;
    }
    /// Largest wire index touched by the gate.
    size_t max_wire() const;

    std::string str() const;

    auto operator<=>(const Gate &) const = default;
};

/// Number of distinct canonical gates on `wires` lines:
/// wires * (C(wires-1, 2) + (wires-1)).
size_t gate_count(size_t wires);

/// All distinct canonical gates, ordered by (target, control_a, control_b).
/// Throws std::invalid_argument when wires < 3 or wires > kMaxWires.
std::vector<Gate> enumerate_gates(size_t wires);

}  // namespace revcirc
