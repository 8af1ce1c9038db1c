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
#include <boost/random/mersenne_twister.hpp>
#include <span>
#include <vector>

#include "revcirc/gate.h"

namespace revcirc {

/// Deterministic generator used throughout the library. Same sequence as
/// std::mt19937_64, but Boost's implementation is roughly twice as fast here.
using Rng = boost::random::mt19937_64;

/// Builds a generator for one logical stream. Distinct `stream` tuples under
/// the same seed give independent sequences; the mapping is fixed so runs
/// reproduce across worker counts.
Rng make_rng(uint64_t seed, std::initializer_list<uint64_t> stream = {});

/// Uniform integer in [0, bound) by multiply-shift with rejection. `bound > 0`.
inline uint64_t uniform_below(Rng &rng, uint64_t bound) {
    uint64_t x = rng();
    unsigned __int128 product = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<uint64_t>(product);
    if (low < bound) {
        uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = rng();
            product = static_cast<unsigned __int128>(x) * bound;
            low = static_cast<uint64_t>(product);
        }
    }
    return static_cast<uint64_t>(product >> 64);
}

/// Uniform indices below a fixed bound (< 2^32), two per engine output.
/// Used by the sampling kernels where the generator dominates run time.
class IndexSampler {
   public:
    explicit IndexSampler(uint32_t bound) : bound_(bound), threshold_((0u - bound) % bound) {
    }

    uint32_t operator()(Rng &rng) {
        uint64_t product = uint64_t{next(rng)} * bound_;
        auto low = static_cast<uint32_t>(product);
        while (low < threshold_) {
            product = uint64_t{next(rng)} * bound_;
            low = static_cast<uint32_t>(product);
        }
        return static_cast<uint32_t>(product >> 32);
    }

   private:
    uint32_t next(Rng &rng) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        uint64_t v = rng();
        spare_ = static_cast<uint32_t>(v >> 32);
        has_spare_ = true;
        return static_cast<uint32_t>(v);
    }

    uint32_t bound_;
    uint32_t threshold_;
    uint32_t spare_ = 0;
    bool has_spare_ = false;
};

/// An ordered array of CCNOT gates across a fixed bus.
///
/// Inputs occupy wires 0..n_inputs-1 and the remaining wires are fed
/// `constant_fill`. Wire 0 is the least-significant bit of a bus state.
/// The empty circuit is the identity.
class Circuit {
   public:
    Circuit(size_t wires, size_t n_inputs, size_t m_outputs = 1, bool constant_fill = true,
            std::vector<Gate> gates = {});

    size_t wires() const {
        return wires_;
    }
    size_t n_inputs() const {
        return n_inputs_;
    }
    size_t m_outputs() const {
        return m_outputs_;
    }
    bool constant_fill() const {
        return constant_fill_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    size_t size() const {
        return gates_.size();
    }
    bool empty() const {
        return gates_.empty();
    }
    const Gate &operator[](size_t i) const {
        return gates_[i];
    }

    /// Bus state the fitness case `input` starts from.
    uint64_t initial_state(uint64_t input) const;

    /// Copy with gate `index` replaced.
    Circuit with_gate(size_t index, Gate gate) const;
    /// This circuit followed by `other` (same bus layout required).
    Circuit then(const Circuit &other) const;
    /// Gates in reverse order; the inverse map since every CCNOT is self-inverse.
    Circuit reversed() const;

    bool operator==(const Circuit &) const = default;

   private:
    void check_gate(const Gate &gate) const;

    size_t wires_;
    size_t n_inputs_;
    size_t m_outputs_;
    bool constant_fill_;
    std::vector<Gate> gates_;
};

/// `length` gates drawn independently and uniformly from enumerate_gates(wires).
/// Every wire is an input in the three-argument form.
Circuit random_circuit(size_t wires, size_t length, Rng &rng);
Circuit random_circuit(size_t wires, size_t length, Rng &rng, size_t n_inputs,
                       size_t m_outputs = 1, bool constant_fill = true);

/// Same, drawing from a caller-held gate table (avoids re-enumeration in loops).
Circuit random_circuit(std::span<const Gate> gate_table, size_t wires, size_t length, Rng &rng,
                       size_t n_inputs, size_t m_outputs = 1, bool constant_fill = true);

}  // namespace revcirc
