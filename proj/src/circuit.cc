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

#include "revcirc/circuit.h"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace revcirc {

Rng make_rng(uint64_t seed, std::initializer_list<uint64_t> stream) {
    std::vector<uint32_t> words{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                                static_cast<uint32_t>(stream.size())};
    for (uint64_t s : stream) {
        words.push_back(static_cast<uint32_t>(s));
        words.push_back(static_cast<uint32_t>(s >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

Circuit::Circuit(size_t wires, size_t n_inputs, size_t m_outputs, bool constant_fill,
                 std::vector<Gate> gates)
    : wires_(wires),
      n_inputs_(n_inputs),
      m_outputs_(m_outputs),
      constant_fill_(constant_fill),
      gates_(std::move(gates)) {
    if (wires_ == 0 || wires_ > kMaxWires) {
        throw std::invalid_argument("wire count must be in 1.." + std::to_string(kMaxWires) +
                                    ", got " + std::to_string(wires_));
    }
    if (n_inputs_ > wires_) {
        throw std::invalid_argument("more inputs than wires");
    }
    if (m_outputs_ > wires_) {
        throw std::invalid_argument("more outputs than wires");
    }
    for (const Gate &g : gates_) {
        check_gate(g);
    }
}

void Circuit::check_gate(const Gate &gate) const {
    if (gate.max_wire() >= wires_) {
        throw std::invalid_argument("gate " + gate.str() + " exceeds bus width " +
                                    std::to_string(wires_));
    }
    if (gate.target == gate.control_a || gate.target == gate.control_b) {
        throw std::invalid_argument("illegal gate " + gate.str());
    }
}

uint64_t Circuit::initial_state(uint64_t input) const {
    uint64_t bus_mask = wires_ == 64 ? ~uint64_t{0} : (uint64_t{1} << wires_) - 1;
    uint64_t input_mask = (uint64_t{1} << n_inputs_) - 1;
    uint64_t state = input & input_mask;
    if (constant_fill_) {
        state |= bus_mask & ~input_mask;
    }
    return state;
}

Circuit Circuit::with_gate(size_t index, Gate gate) const {
    if (index >= gates_.size()) {
        throw std::out_of_range("gate index out of range");
    }
    check_gate(gate);
    Circuit out = *this;
    out.gates_[index] = gate;
    return out;
}

Circuit Circuit::then(const Circuit &other) const {
    if (other.wires_ != wires_ || other.n_inputs_ != n_inputs_ ||
        other.constant_fill_ != constant_fill_) {
        throw std::invalid_argument("cannot concatenate circuits with different bus layouts");
    }
    Circuit out = *this;
    out.gates_.insert(out.gates_.end(), other.gates_.begin(), other.gates_.end());
    return out;
}

Circuit Circuit::reversed() const {
    Circuit out = *this;
    std::reverse(out.gates_.begin(), out.gates_.end());
    return out;
}

Circuit random_circuit(std::span<const Gate> gate_table, size_t wires, size_t length, Rng &rng,
                       size_t n_inputs, size_t m_outputs, bool constant_fill) {
    std::vector<Gate> gates;
    gates.reserve(length);
    for (size_t i = 0; i < length; i++) {
        gates.push_back(gate_table[uniform_below(rng, gate_table.size())]);
    }
    return Circuit(wires, n_inputs, m_outputs, constant_fill, std::move(gates));
}

Circuit random_circuit(size_t wires, size_t length, Rng &rng, size_t n_inputs, size_t m_outputs,
                       bool constant_fill) {
    auto table = enumerate_gates(wires);
    return random_circuit(table, wires, length, rng, n_inputs, m_outputs, constant_fill);
}

Circuit random_circuit(size_t wires, size_t length, Rng &rng) {
    return random_circuit(wires, length, rng, wires);
}

}  // namespace revcirc
