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
#include <ostream>
#include <span>
#include <vector>

#include "revcirc/fitness.h"

namespace revcirc {

enum class LimitKind {
    /// Every output bit an independent fair coin: Binomial(m 2^n, 1/2).
    kBinomialHamming,
    /// No spare line: the all-zero state is fixed and rows are balanced, so
    /// only even scores occur (mean 2^11/63 ~ 32.5 on the six-multiplexor).
    kParityShiftedHamming,
    /// Uniform over reachable permutations on a finite bus with spare lines.
    kFiniteWidthHamming,
    kRmsSmallT,
    kRmsExhaustive,
};

const char *to_string(LimitKind kind);

/// Limiting fitness distribution of long random circuits.
struct LimitModel {
    LimitKind kind = LimitKind::kBinomialHamming;
    size_t n = 0;
    size_t m = 0;
    double mean = 0;
    double sd = 0;
    double solution_probability = 0;
    /// pmf[f] for raw fitness f; empty when too large to materialize.
    std::vector<double> pmf;

    bool has_pmf() const {
        return !pmf.empty();
    }
};

struct MeanSd {
    double mean = 0;
    double sd = 0;
};

/// Upper bound on m 2^n for which binomial_limit materializes its pmf.
inline constexpr uint64_t kMaxPmfSupport = uint64_t{1} << 20;

/// Binomial(m 2^n, 1/2) computed in log space.
LimitModel binomial_limit(size_t n, size_t m);

/// Exact limit for a single-output target when every permutation of the
/// nonzero bus states is equally likely (CCNOT never moves the all-zero
/// state). Kind is kParityShiftedHamming when wires == n, else
/// kFiniteWidthHamming.
LimitModel reachable_limit(size_t wires, const TargetTable &target, bool constant_fill = true);

/// Mean 0.5 and sd 2^(-n/2) / (2 sqrt(m)) of normalized Hamming fitness.
MeanSd normalized_limit(size_t n, size_t m);

enum class RmsRegime { kSmallT, kExhaustiveUniform };

/// Small T: (2^m / 2, 2^m / (2 sqrt 3)). Exhaustive with uniformly spread
/// answers: (7 2^m / (12 sqrt 3), 0.23 2^m).
MeanSd rms_limit(size_t m, RmsRegime regime);
/// Same numbers as a LimitModel; solution probability is 2^(-m T).
LimitModel rms_limit_model(size_t m, RmsRegime regime, uint64_t tests);

/// Normal density with the model's mean and sd sampled at each integer score
/// in the pmf support (even scores only for the parity-shifted model),
/// renormalized to sum to one.
std::vector<double> normal_approximation(const LimitModel &model);

/// `fitness,probability` rows for every score in the pmf.
void write_limit_csv(std::ostream &out, const LimitModel &model);

/// Dense row-stochastic matrix over bus states.
class TransitionMatrix {
   public:
    explicit TransitionMatrix(size_t size);
    static TransitionMatrix identity(size_t size);

    size_t size() const {
        return size_;
    }
    double &at(size_t row, size_t col) {
        return entries_[row * size_ + col];
    }
    double at(size_t row, size_t col) const {
        return entries_[row * size_ + col];
    }
    std::span<const double> row(size_t r) const {
        return {entries_.data() + r * size_, size_};
    }

    TransitionMatrix operator*(const TransitionMatrix &rhs) const;
    TransitionMatrix power(uint64_t k) const;
    /// Distribution after one step: p * M.
    std::vector<double> step(std::span<const double> p) const;

    std::vector<double> row_sums() const;
    std::vector<double> column_sums() const;
    /// Largest |sum - 1| over rows and columns.
    double doubly_stochastic_error() const;

   private:
    size_t size_;
    std::vector<double> entries_;
};

inline constexpr size_t kMaxTransitionWires = 4;

/// Average of the permutation matrices of every gate on `wires` lines, acting
/// on the 2^wires bus states. Throws unless 3 <= wires <= 4.
TransitionMatrix gate_transition_matrix(size_t wires);

/// States reachable from `start` through positive entries (sorted).
std::vector<size_t> reachable_states(const TransitionMatrix &matrix, size_t start);

/// Uniform distribution over the states reachable from `start`.
std::vector<double> reachable_uniform(const TransitionMatrix &matrix, size_t start);

/// Half the L1 distance. Throws if sizes differ or either input is not a
/// distribution (negative entry or sum off 1 by more than 1e-9).
double total_variation_distance(std::span<const double> p, std::span<const double> q);

/// log C(n, k) via lgamma.
double log_binomial_coefficient(double n, double k);
/// P(X = k) for X ~ Hypergeometric(population, successes, draws).
double hypergeometric_pmf(uint64_t population, uint64_t successes, uint64_t draws, uint64_t k);

}  // namespace revcirc
