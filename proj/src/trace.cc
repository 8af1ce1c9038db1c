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

#include "revcirc/trace.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace revcirc {

namespace {

constexpr uint64_t kCasePatterns[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

}  // namespace

TruthTableTrace::TruthTableTrace(size_t wires, size_t n_inputs)
    : wires_(wires), n_inputs_(n_inputs) {
    if (wires == 0 || wires > kMaxWires) {
        throw std::invalid_argument("wire count out of range: " + std::to_string(wires));
    }
    if (n_inputs > wires) {
        throw std::invalid_argument("more inputs than wires");
    }
    if (n_inputs > kMaxTraceInputs) {
        throw std::invalid_argument("too many inputs for a truth-table trace: " +
                                    std::to_string(n_inputs));
    }
    words_per_row_ = n_inputs <= 6 ? 1 : size_t{1} << (n_inputs - 6);
    word_mask_ = n_inputs >= 6 ? ~uint64_t{0} : (uint64_t{1} << (uint64_t{1} << n_inputs)) - 1;
    words_.assign(wires * words_per_row_, 0);
}

TruthTableTrace TruthTableTrace::initial(size_t wires, size_t n_inputs, bool constant_fill) {
    TruthTableTrace trace(wires, n_inputs);
    for (size_t w = 0; w < wires; w++) {
        uint64_t *row = trace.words_.data() + w * trace.words_per_row_;
        for (size_t k = 0; k < trace.words_per_row_; k++) {
            uint64_t word;
            if (w >= n_inputs) {
                word = constant_fill ? ~uint64_t{0} : 0;
            } else if (w < 6) {
                word = kCasePatterns[w];
            } else {
                word = ((k >> (w - 6)) & 1) ? ~uint64_t{0} : 0;
            }
            row[k] = word & trace.word_mask_;
        }
    }
    return trace;
}

uint64_t TruthTableTrace::bus_state(uint64_t fitness_case) const {
    uint64_t state = 0;
    for (size_t w = 0; w < wires_; w++) {
        state |= uint64_t{bit(w, fitness_case)} << w;
    }
    return state;
}

void TruthTableTrace::apply(const Gate &gate) {
    uint64_t *t = words_.data() + gate.target * words_per_row_;
    const uint64_t *a = words_.data() + gate.control_a * words_per_row_;
    const uint64_t *b = words_.data() + gate.control_b * words_per_row_;
    for (size_t k = 0; k < words_per_row_; k++) {
        t[k] ^= a[k] & b[k];
    }
}

void TruthTableTrace::apply(std::span<const Gate> gates) {
    if (words_per_row_ == 1) {
        uint64_t *rows = words_.data();
        for (const Gate &g : gates) {
            rows[g.target] ^= rows[g.control_a] & rows[g.control_b];
        }
        return;
    }
    for (const Gate &g : gates) {
        apply(g);
    }
}

TruthTableTrace evaluate(const Circuit &circuit) {
    TruthTableTrace trace = TruthTableTrace::initial(circuit);
    trace.apply(circuit.gates());
    return trace;
}

uint64_t run_on_state(std::span<const Gate> gates, uint64_t state) {
    for (const Gate &g : gates) {
        uint64_t controls = g.control_mask();
        if ((state & controls) == controls) {
            state ^= g.target_mask();
        }
    }
    return state;
}

uint64_t run_on_state(const Circuit &circuit, uint64_t state) {
    return run_on_state(circuit.gates(), state);
}

BusPermutation::BusPermutation(std::vector<uint32_t> mapping) : mapping_(std::move(mapping)) {
    size_t n = mapping_.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("permutation size must be a power of two");
    }
    wires_ = static_cast<size_t>(std::countr_zero(n));
}

BusPermutation BusPermutation::identity(size_t wires) {
    if (wires > kMaxPermutationWires) {
        throw std::invalid_argument("bus too wide for an explicit permutation");
    }
    std::vector<uint32_t> m(size_t{1} << wires);
    std::iota(m.begin(), m.end(), 0u);
    return BusPermutation(std::move(m));
}

BusPermutation BusPermutation::random(size_t wires, Rng &rng) {
    BusPermutation p = identity(wires);
    auto &m = p.mapping_;
    for (size_t i = m.size() - 1; i > 0; i--) {
        std::swap(m[i], m[uniform_below(rng, i + 1)]);
    }
    return p;
}

bool BusPermutation::is_bijection() const {
    std::vector<bool> seen(mapping_.size(), false);
    for (uint32_t v : mapping_) {
        if (v >= mapping_.size() || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

bool BusPermutation::is_identity() const {
    for (size_t i = 0; i < mapping_.size(); i++) {
        if (mapping_[i] != i) {
            return false;
        }
    }
    return true;
}

BusPermutation BusPermutation::inverse() const {
    std::vector<uint32_t> inv(mapping_.size());
    for (size_t i = 0; i < mapping_.size(); i++) {
        inv[mapping_[i]] = static_cast<uint32_t>(i);
    }
    return BusPermutation(std::move(inv));
}

BusPermutation BusPermutation::after(const BusPermutation &first) const {
    if (first.size() != size()) {
        throw std::invalid_argument("cannot compose permutations of different sizes");
    }
    std::vector<uint32_t> out(mapping_.size());
    for (size_t i = 0; i < mapping_.size(); i++) {
        out[i] = mapping_[first.mapping_[i]];
    }
    return BusPermutation(std::move(out));
}

BusPermutation to_permutation(const Circuit &circuit) {
    if (circuit.wires() > kMaxPermutationWires) {
        throw std::invalid_argument("to_permutation supports at most " +
                                    std::to_string(kMaxPermutationWires) + " wires, got " +
                                    std::to_string(circuit.wires()));
    }
    std::vector<uint32_t> m(size_t{1} << circuit.wires());
    for (size_t s = 0; s < m.size(); s++) {
        m[s] = static_cast<uint32_t>(run_on_state(circuit, s));
    }
    return BusPermutation(std::move(m));
}

}  // namespace revcirc
