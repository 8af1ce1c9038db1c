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

#include "revcirc/gate.h"

#include <stdexcept>
#include <utility>

namespace revcirc {

Gate::Gate(size_t target, size_t control_a, size_t control_b) {
    if (target >= kMaxWires || control_a >= kMaxWires || control_b >= kMaxWires) {
        throw std::invalid_argument("gate wire index out of range");
    }
    if (target == control_a || target == control_b) {
        throw std::invalid_argument(
            "illegal gate: target wire " + std::to_string(target) + " is also a control");
    }
    if (control_a > control_b) {
        std::swap(control_a, control_b);
    }
    this->target = static_cast<uint8_t>(target);
    this->control_a = static_cast<uint8_t>(control_a);
    this->control_b = static_cast<uint8_t>(control_b);
}

size_t Gate::max_wire() const {
    return std::max<size_t>(target, control_b);
}

std::string Gate::str() const {
    return "T(" + std::to_string(control_a) + "," + std::to_string(control_b) + ")>" +
           std::to_string(target);
}

size_t gate_count(size_t wires) {
    if (wires < 3) {
        return 0;
    }
    size_t others = wires - 1;
    return wires * (others * (others - 1) / 2 + others);
}

std::vector<Gate> enumerate_gates(size_t wires) {
    if (wires < 3) {
        throw std::invalid_argument(
            "no legal CCNOT exists on fewer than 3 wires (got " + std::to_string(wires) + ")");
    }
    if (wires > kMaxWires) {
        throw std::invalid_argument("too many wires: " + std::to_string(wires));
    }
    std::vector<Gate> out;
    out.reserve(gate_count(wires));
    for (size_t t = 0; t < wires; t++) {
        for (size_t a = 0; a < wires; a++) {
            if (a == t) {
                continue;
            }
            for (size_t b = a; b < wires; b++) {
                if (b == t) {
                    continue;
                }
                out.emplace_back(t, a, b);
            }
        }
    }
    return out;
}

}  // namespace revcirc
