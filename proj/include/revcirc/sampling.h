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
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "revcirc/fitness.h"
#include "revcirc/theory.h"

namespace revcirc {

/// Random-circuit experiment over a list of circuit lengths.
struct ExperimentConfig {
    size_t wires = 6;
    std::vector<size_t> lengths;
    uint64_t samples_per_length = 1000000;
    TargetTable target = six_multiplexor_target();
    OutputMap outputs = OutputMap::first(1);
    bool constant_fill = true;
    uint64_t seed = 1;
    /// 0 means one per hardware thread. Results do not depend on it.
    size_t workers = 0;

    /// Throws std::invalid_argument on an unusable configuration.
    void validate() const;
};

/// Samples drawn from one random stream. Streams are keyed by
/// (seed, wires, length, chunk index), so histograms are identical for any
/// worker count.
inline constexpr uint64_t kSamplesPerChunk = 62500;
/// Checkpoints are written after every 16 chunks (10^6 samples).
inline constexpr uint64_t kChunksPerCheckpoint = 16;

struct FitnessHistogram {
    size_t length = 0;
    /// counts[f] = circuits with raw fitness f, f in 0..m 2^n.
    std::vector<uint64_t> counts;
    uint64_t total = 0;
    /// Circuits whose output matches a single-output target on some wire.
    uint64_t any_wire_solutions = 0;

    double mean() const;
    double sd() const;
    std::vector<double> distribution() const;
    uint64_t solutions() const {
        return counts.empty() ? 0 : counts.back();
    }
    FitnessHistogram &operator+=(const FitnessHistogram &other);
    bool operator==(const FitnessHistogram &) const = default;
};

struct SamplingOptions {
    /// When non-empty, progress is saved here every 10^6 samples and an
    /// existing file with a matching configuration is resumed.
    std::string checkpoint_path;
    /// Called after each length completes.
    std::function<void(const FitnessHistogram &)> on_length_done;
};

/// Fitness histograms of random circuits at each configured length.
std::vector<FitnessHistogram> sample_distribution(const ExperimentConfig &config,
                                                  const SamplingOptions &options = {});

/// One histogram; the building block of sample_distribution.
FitnessHistogram sample_length(const ExperimentConfig &config, size_t length);

struct ConvergencePoint {
    size_t length = 0;
    double mean = 0;
    double sd = 0;
    double tvd = 0;
    /// Delta-method standard error of the TVD estimate.
    double tvd_sigma = 0;
    uint64_t solutions = 0;
    uint64_t total = 0;
};
using ConvergenceSeries = std::vector<ConvergencePoint>;

/// Per-length moments and distance to `limit`. Throws if a histogram's
/// support differs from the limit pmf.
ConvergenceSeries convergence_series(std::span<const FitnessHistogram> histograms,
                                     const LimitModel &limit);

/// Limit a sampled configuration converges to: the exact parity-shifted
/// model with no spare line, Binomial(m 2^n, 1/2) otherwise.
LimitModel reference_limit(const ExperimentConfig &config);

struct PoissonInterval {
    double low = 0;
    double high = 0;
};

/// Exact (Garwood) two-sided interval for a Poisson count.
PoissonInterval poisson_interval(uint64_t count, double confidence = 0.95);

struct DensityPoint {
    size_t length = 0;
    uint64_t total = 0;
    uint64_t solutions = 0;
    double rate = 0;
    PoissonInterval rate_interval;
    uint64_t any_wire_solutions = 0;
    double any_wire_rate = 0;
    PoissonInterval any_wire_interval;
};

std::vector<DensityPoint> density_from_histograms(std::span<const FitnessHistogram> histograms);
/// Solution counts per length with 95% Poisson intervals.
std::vector<DensityPoint> solution_density(const ExperimentConfig &config,
                                           const SamplingOptions &options = {});

struct MinScanLevel {
    size_t length = 0;
    uint64_t circuits = 0;
    /// Solutions when the output is read from each wire.
    std::vector<uint64_t> solutions_per_wire;
    /// Best single-wire score over all enumerated circuits of this length.
    uint64_t best_fitness = 0;

    uint64_t solutions() const;
};

inline constexpr double kMaxScanCircuits = 1e8;

struct MinScanOptions {
    /// Skip a gate equal to its predecessor (the pair cancels).
    bool prune_repeats = true;
    bool constant_fill = true;
    size_t workers = 0;
    /// Refuse scans whose unpruned size gates^max_length exceeds this.
    double max_circuits = kMaxScanCircuits;
};

/// Exhaustive count of single-output solutions at lengths 1..max_length,
/// reading the output from every wire. Throws when gates^max_length exceeds
/// options.max_circuits or the target needs more than 6 inputs.
std::vector<MinScanLevel> exhaustive_min_scan(size_t wires, size_t max_length,
                                              const TargetTable &target,
                                              const MinScanOptions &options = {});

/// Pearson correlation between per-output Hamming scores of random circuits;
/// near zero when output bits behave independently.
std::vector<std::vector<double>> output_score_correlations(const ExperimentConfig &config,
                                                           size_t length);

void write_histograms_csv(std::ostream &out, std::span<const FitnessHistogram> histograms);
void write_series_csv(std::ostream &out, const ConvergenceSeries &series);
void write_density_csv(std::ostream &out, std::span<const DensityPoint> points);
void write_min_scan_csv(std::ostream &out, std::span<const MinScanLevel> levels);

}  // namespace revcirc
