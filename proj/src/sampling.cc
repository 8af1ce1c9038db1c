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

#include "revcirc/sampling.h"

#include <bit>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "revcirc/parallel.h"
#include "revcirc/trace.h"

namespace revcirc {

namespace {

using nlohmann::json;

uint64_t chunk_count(uint64_t samples) {
    return (samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
}

FitnessHistogram empty_histogram(const ExperimentConfig &config, size_t length) {
    FitnessHistogram h;
    h.length = length;
    h.counts.assign(config.target.max_fitness() + 1, 0);
    return h;
}

/// Evaluates `samples` random circuits from one stream into `hist`.
/// Rows live in one word per wire when n <= 6.
template <bool kSingleWord>
void run_samples(const ExperimentConfig &config, std::span<const Gate> table,
                 const TruthTableTrace &initial, size_t length, uint64_t samples, Rng &rng,
                 FitnessHistogram &hist) {
    const size_t wires = config.wires;
    const size_t words = initial.words_per_row();
    const uint64_t mask = initial.word_mask();
    const size_t m = config.target.m_outputs();
    IndexSampler pick(static_cast<uint32_t>(table.size()));
    const uint64_t full = config.target.max_fitness();
    const bool single_output = m == 1;

    std::vector<uint64_t> start(wires * words);
    for (size_t w = 0; w < wires; w++) {
        auto r = initial.row(w);
        std::copy(r.begin(), r.end(), start.begin() + static_cast<ptrdiff_t>(w * words));
    }
    std::vector<uint64_t> rows(start.size());
    std::vector<const uint64_t *> target_rows(m);
    for (size_t j = 0; j < m; j++) {
        target_rows[j] = config.target.row(j).data();
    }
    const uint64_t single_target = config.target.row(0)[0];

    for (uint64_t s = 0; s < samples; s++) {
        std::copy(start.begin(), start.end(), rows.begin());
        uint64_t *r = rows.data();
        for (size_t i = 0; i < length; i++) {
            const Gate &g = table[pick(rng)];
            if constexpr (kSingleWord) {
                r[g.target] ^= r[g.control_a] & r[g.control_b];
            } else {
                uint64_t *t = r + g.target * words;
                const uint64_t *a = r + g.control_a * words;
                const uint64_t *b = r + g.control_b * words;
                for (size_t k = 0; k < words; k++) {
                    t[k] ^= a[k] & b[k];
                }
            }
        }
        uint64_t fitness = 0;
        for (size_t j = 0; j < m; j++) {
            const uint64_t *row = r + config.outputs[j] * words;
            for (size_t k = 0; k < words; k++) {
                fitness += static_cast<uint64_t>(std::popcount(~(row[k] ^ target_rows[j][k]) & mask));
            }
        }
        hist.counts[fitness]++;
        if (single_output) {
            bool solved = fitness == full;
            for (size_t w = 0; w < wires && !solved; w++) {
                if constexpr (kSingleWord) {
                    solved = ((r[w] ^ single_target) & mask) == 0;
                } else {
                    solved = row_matches({r + w * words, words}, config.target.row(0), mask) ==
                             full;
                }
            }
            hist.any_wire_solutions += solved ? 1 : 0;
        }
    }
    hist.total += samples;
}

/// Histogram over chunks [chunk_begin, chunk_end) of one length.
FitnessHistogram sample_chunks(const ExperimentConfig &config, std::span<const Gate> table,
                               const TruthTableTrace &initial, size_t length,
                               uint64_t chunk_begin, uint64_t chunk_end) {
    FitnessHistogram merged = empty_histogram(config, length);
    std::mutex merge_mutex;
    parallel_for(chunk_end - chunk_begin, config.workers, [&](size_t task, size_t) {
        uint64_t chunk = chunk_begin + task;
        uint64_t first = chunk * kSamplesPerChunk;
        uint64_t samples = std::min(kSamplesPerChunk, config.samples_per_length - first);
        Rng rng = make_rng(config.seed, {config.wires, length, chunk});
        FitnessHistogram local = empty_histogram(config, length);
        if (initial.words_per_row() == 1) {
            run_samples<true>(config, table, initial, length, samples, rng, local);
        } else {
            run_samples<false>(config, table, initial, length, samples, rng, local);
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        merged += local;
    });
    return merged;
}

json config_fingerprint(const ExperimentConfig &config) {
    json rows = json::array();
    for (size_t j = 0; j < config.target.m_outputs(); j++) {
        auto r = config.target.row(j);
        rows.push_back(std::vector<uint64_t>(r.begin(), r.end()));
    }
    return json{{"wires", config.wires},
                {"n", config.target.n_inputs()},
                {"fill", config.constant_fill},
                {"outputs", config.outputs.wires()},
                {"target", rows},
                {"lengths", config.lengths},
                {"samples", config.samples_per_length},
                {"seed", config.seed}};
}

struct Checkpoint {
    std::vector<FitnessHistogram> histograms;
    std::vector<uint64_t> chunks_done;
};

void save_checkpoint(const std::string &path, const ExperimentConfig &config,
                     const Checkpoint &cp) {
    json progress = json::array();
    for (size_t i = 0; i < cp.histograms.size(); i++) {
        const auto &h = cp.histograms[i];
        progress.push_back(json{{"length", h.length},
                                {"chunks_done", cp.chunks_done[i]},
                                {"total", h.total},
                                {"any_wire_solutions", h.any_wire_solutions},
                                {"counts", h.counts}});
    }
    json doc{{"format", "revcirc-sampling-checkpoint/1"},
             {"config", config_fingerprint(config)},
             {"progress", progress}};
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw std::runtime_error("cannot write checkpoint " + tmp);
        }
        out << doc.dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

bool load_checkpoint(const std::string &path, const ExperimentConfig &config, Checkpoint &cp) {
    std::ifstream in(path);
    if (!in) {
        return false;
    }
    json doc = json::parse(in);
    if (doc.at("config") != config_fingerprint(config)) {
        throw std::runtime_error("checkpoint " + path +
                                 " was written for a different configuration");
    }
    const auto &progress = doc.at("progress");
    for (size_t i = 0; i < progress.size() && i < cp.histograms.size(); i++) {
        auto &h = cp.histograms[i];
        h.counts = progress[i].at("counts").get<std::vector<uint64_t>>();
        h.total = progress[i].at("total").get<uint64_t>();
        h.any_wire_solutions = progress[i].at("any_wire_solutions").get<uint64_t>();
        cp.chunks_done[i] = progress[i].at("chunks_done").get<uint64_t>();
    }
    return true;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (wires < 3 || wires > kMaxWires) {
        throw std::invalid_argument("experiment needs 3.." + std::to_string(kMaxWires) +
                                    " wires");
    }
    if (target.n_inputs() > wires) {
        throw std::invalid_argument("target has more inputs than the bus has wires");
    }
    if (outputs.size() != target.m_outputs()) {
        throw std::invalid_argument("output map does not match target outputs");
    }
    outputs.check(wires);
    if (samples_per_length < 1) {
        throw std::invalid_argument("samples_per_length must be at least 1");
    }
    if (lengths.empty()) {
        throw std::invalid_argument("at least one circuit length is required");
    }
    for (size_t i = 1; i < lengths.size(); i++) {
        if (lengths[i] <= lengths[i - 1]) {
            throw std::invalid_argument("lengths must be strictly increasing");
        }
    }
}

double FitnessHistogram::mean() const {
    if (total == 0) {
        return 0;
    }
    double s = 0;
    for (size_t f = 0; f < counts.size(); f++) {
        s += static_cast<double>(f) * static_cast<double>(counts[f]);
    }
    return s / static_cast<double>(total);
}

double FitnessHistogram::sd() const {
    if (total == 0) {
        return 0;
    }
    double mu = mean();
    double s = 0;
    for (size_t f = 0; f < counts.size(); f++) {
        double d = static_cast<double>(f) - mu;
        s += d * d * static_cast<double>(counts[f]);
    }
    return std::sqrt(s / static_cast<double>(total));
}

std::vector<double> FitnessHistogram::distribution() const {
    std::vector<double> p(counts.size(), 0.0);
    if (total == 0) {
        return p;
    }
    for (size_t f = 0; f < counts.size(); f++) {
        p[f] = static_cast<double>(counts[f]) / static_cast<double>(total);
    }
    return p;
}

FitnessHistogram &FitnessHistogram::operator+=(const FitnessHistogram &other) {
    if (other.counts.size() != counts.size() || other.length != length) {
        throw std::invalid_argument("cannot merge histograms of different shape");
    }
    for (size_t f = 0; f < counts.size(); f++) {
        counts[f] += other.counts[f];
    }
    total += other.total;
    any_wire_solutions += other.any_wire_solutions;
    return *this;
}

FitnessHistogram sample_length(const ExperimentConfig &config, size_t length) {
    config.validate();
    auto table = enumerate_gates(config.wires);
    auto initial = TruthTableTrace::initial(config.wires, config.target.n_inputs(),
                                            config.constant_fill);
    return sample_chunks(config, table, initial, length, 0,
                         chunk_count(config.samples_per_length));
}

std::vector<FitnessHistogram> sample_distribution(const ExperimentConfig &config,
                                                  const SamplingOptions &options) {
    config.validate();
    auto table = enumerate_gates(config.wires);
    auto initial = TruthTableTrace::initial(config.wires, config.target.n_inputs(),
                                            config.constant_fill);
    Checkpoint cp;
    for (size_t length : config.lengths) {
        cp.histograms.push_back(empty_histogram(config, length));
        cp.chunks_done.push_back(0);
    }
    if (!options.checkpoint_path.empty()) {
        load_checkpoint(options.checkpoint_path, config, cp);
    }
    uint64_t chunks = chunk_count(config.samples_per_length);
    for (size_t i = 0; i < config.lengths.size(); i++) {
        size_t length = config.lengths[i];
        while (cp.chunks_done[i] < chunks) {
            uint64_t end = std::min(chunks, cp.chunks_done[i] + kChunksPerCheckpoint);
            cp.histograms[i] +=
                sample_chunks(config, table, initial, length, cp.chunks_done[i], end);
            cp.chunks_done[i] = end;
            if (!options.checkpoint_path.empty()) {
                save_checkpoint(options.checkpoint_path, config, cp);
            }
        }
        if (options.on_length_done) {
            options.on_length_done(cp.histograms[i]);
        }
    }
    return cp.histograms;
}

LimitModel reference_limit(const ExperimentConfig &config) {
    if (config.wires == config.target.n_inputs() && config.target.m_outputs() == 1) {
        return reachable_limit(config.wires, config.target, config.constant_fill);
    }
    return binomial_limit(config.target.n_inputs(), config.target.m_outputs());
}

ConvergenceSeries convergence_series(std::span<const FitnessHistogram> histograms,
                                     const LimitModel &limit) {
    ConvergenceSeries out;
    for (const auto &h : histograms) {
        if (h.counts.size() != limit.pmf.size()) {
            throw std::invalid_argument("histogram support (" + std::to_string(h.counts.size()) +
                                        ") does not match limit support (" +
                                        std::to_string(limit.pmf.size()) + ")");
        }
        if (h.total == 0) {
            throw std::invalid_argument("empty histogram");
        }
        ConvergencePoint p;
        p.length = h.length;
        p.mean = h.mean();
        p.sd = h.sd();
        auto dist = h.distribution();
        p.tvd = total_variation_distance(dist, limit.pmf);
        double first = 0;
        double second = 0;
        for (size_t f = 0; f < dist.size(); f++) {
            double sign = dist[f] > limit.pmf[f] ? 0.5 : (dist[f] < limit.pmf[f] ? -0.5 : 0.0);
            first += sign * dist[f];
            second += sign * sign * dist[f];
        }
        p.tvd_sigma =
            std::sqrt(std::max(0.0, second - first * first) / static_cast<double>(h.total));
        p.solutions = h.solutions();
        p.total = h.total;
        out.push_back(p);
    }
    return out;
}

PoissonInterval poisson_interval(uint64_t count, double confidence) {
    double alpha = 1 - confidence;
    PoissonInterval ci;
    auto k = static_cast<double>(count);
    ci.low = count == 0 ? 0.0 : boost::math::gamma_p_inv(k, alpha / 2);
    ci.high = boost::math::gamma_p_inv(k + 1, 1 - alpha / 2);
    return ci;
}

std::vector<DensityPoint> density_from_histograms(std::span<const FitnessHistogram> histograms) {
    std::vector<DensityPoint> out;
    for (const auto &h : histograms) {
        DensityPoint p;
        p.length = h.length;
        p.total = h.total;
        auto total = static_cast<double>(h.total);
        p.solutions = h.solutions();
        p.rate = static_cast<double>(p.solutions) / total;
        auto ci = poisson_interval(p.solutions);
        p.rate_interval = {ci.low / total, ci.high / total};
        p.any_wire_solutions = h.any_wire_solutions;
        p.any_wire_rate = static_cast<double>(p.any_wire_solutions) / total;
        auto any_ci = poisson_interval(p.any_wire_solutions);
        p.any_wire_interval = {any_ci.low / total, any_ci.high / total};
        out.push_back(p);
    }
    return out;
}

std::vector<DensityPoint> solution_density(const ExperimentConfig &config,
                                           const SamplingOptions &options) {
    if (config.target.m_outputs() != 1) {
        throw std::invalid_argument("solution density needs a single-output target");
    }
    auto histograms = sample_distribution(config, options);
    return density_from_histograms(histograms);
}

uint64_t MinScanLevel::solutions() const {
    uint64_t s = 0;
    for (uint64_t v : solutions_per_wire) {
        s += v;
    }
    return s;
}

namespace {

struct ScanAccumulator {
    std::vector<uint64_t> circuits;
    std::vector<std::vector<uint64_t>> solutions;
    std::vector<uint64_t> best;
};

class ScanWalker {
   public:
    ScanWalker(std::span<const Gate> gates, size_t wires, size_t max_length, uint64_t target,
               uint64_t mask, bool prune, ScanAccumulator &acc)
        : gates_(gates),
          wires_(wires),
          max_length_(max_length),
          target_(target),
          mask_(mask),
          full_(static_cast<uint64_t>(std::popcount(mask))),
          prune_(prune),
          acc_(acc) {
    }

    void visit(uint64_t *rows, size_t depth, size_t previous) {
        acc_.circuits[depth]++;
        for (size_t w = 0; w < wires_; w++) {
            auto matches = static_cast<uint64_t>(std::popcount(~(rows[w] ^ target_) & mask_));
            if (matches == full_) {
                acc_.solutions[depth][w]++;
            }
            acc_.best[depth] = std::max(acc_.best[depth], matches);
        }
        if (depth == max_length_) {
            return;
        }
        for (size_t i = 0; i < gates_.size(); i++) {
            if (prune_ && i == previous) {
                continue;
            }
            const Gate &g = gates_[i];
            uint64_t flip = rows[g.control_a] & rows[g.control_b];
            rows[g.target] ^= flip;
            visit(rows, depth + 1, i);
            rows[g.target] ^= flip;
        }
    }

   private:
    std::span<const Gate> gates_;
    size_t wires_;
    size_t max_length_;
    uint64_t target_;
    uint64_t mask_;
    uint64_t full_;
    bool prune_;
    ScanAccumulator &acc_;
};

}  // namespace

std::vector<MinScanLevel> exhaustive_min_scan(size_t wires, size_t max_length,
                                              const TargetTable &target,
                                              const MinScanOptions &options) {
    if (target.m_outputs() != 1) {
        throw std::invalid_argument("exhaustive scan needs a single-output target");
    }
    if (target.n_inputs() > 6) {
        throw std::invalid_argument("exhaustive scan supports at most 6 inputs");
    }
    if (max_length < 1) {
        throw std::invalid_argument("exhaustive scan needs max_length >= 1");
    }
    auto gates = enumerate_gates(wires);
    if (target.n_inputs() > wires) {
        throw std::invalid_argument("target has more inputs than wires");
    }
    double space = std::pow(static_cast<double>(gates.size()), static_cast<double>(max_length));
    if (space > options.max_circuits) {
        char limit[32];
        std::snprintf(limit, sizeof limit, "%g", options.max_circuits);
        throw std::invalid_argument("exhaustive scan of " + std::to_string(gates.size()) + "^" +
                                    std::to_string(max_length) + " circuits exceeds the " +
                                    limit + " guard");
    }
    auto initial = TruthTableTrace::initial(wires, target.n_inputs(), options.constant_fill);
    std::vector<uint64_t> start(wires);
    for (size_t w = 0; w < wires; w++) {
        start[w] = initial.row(w)[0];
    }

    size_t workers = options.workers == 0 ? default_workers() : options.workers;
    std::vector<ScanAccumulator> accs(workers);
    for (auto &a : accs) {
        a.circuits.assign(max_length + 1, 0);
        a.solutions.assign(max_length + 1, std::vector<uint64_t>(wires, 0));
        a.best.assign(max_length + 1, 0);
    }
    parallel_for(gates.size(), workers, [&](size_t first, size_t worker) {
        std::vector<uint64_t> rows = start;
        const Gate &g = gates[first];
        rows[g.target] ^= rows[g.control_a] & rows[g.control_b];
        ScanWalker walker(gates, wires, max_length, target.row(0)[0], target.word_mask(),
                          options.prune_repeats, accs[worker]);
        walker.visit(rows.data(), 1, first);
    });

    std::vector<MinScanLevel> out;
    for (size_t len = 1; len <= max_length; len++) {
        MinScanLevel level;
        level.length = len;
        level.solutions_per_wire.assign(wires, 0);
        for (const auto &a : accs) {
            level.circuits += a.circuits[len];
            for (size_t w = 0; w < wires; w++) {
                level.solutions_per_wire[w] += a.solutions[len][w];
            }
            level.best_fitness = std::max(level.best_fitness, a.best[len]);
        }
        out.push_back(level);
    }
    return out;
}

std::vector<std::vector<double>> output_score_correlations(const ExperimentConfig &config,
                                                           size_t length) {
    config.validate();
    size_t m = config.target.m_outputs();
    auto table = enumerate_gates(config.wires);
    Rng rng = make_rng(config.seed, {config.wires, length, ~uint64_t{0}});
    std::vector<double> sum(m, 0.0);
    std::vector<std::vector<double>> cross(m, std::vector<double>(m, 0.0));
    for (uint64_t s = 0; s < config.samples_per_length; s++) {
        Circuit c = random_circuit(table, config.wires, length, rng, config.target.n_inputs(), m,
                                   config.constant_fill);
        auto trace = evaluate(c);
        std::vector<double> f(m);
        for (size_t j = 0; j < m; j++) {
            f[j] = static_cast<double>(
                row_matches(trace.row(config.outputs[j]), config.target.row(j),
                            config.target.word_mask()));
            sum[j] += f[j];
        }
        for (size_t a = 0; a < m; a++) {
            for (size_t b = 0; b < m; b++) {
                cross[a][b] += f[a] * f[b];
            }
        }
    }
    auto n = static_cast<double>(config.samples_per_length);
    std::vector<std::vector<double>> corr(m, std::vector<double>(m, 0.0));
    for (size_t a = 0; a < m; a++) {
        for (size_t b = 0; b < m; b++) {
            double cov = cross[a][b] / n - (sum[a] / n) * (sum[b] / n);
            double va = cross[a][a] / n - (sum[a] / n) * (sum[a] / n);
            double vb = cross[b][b] / n - (sum[b] / n) * (sum[b] / n);
            corr[a][b] = (va > 0 && vb > 0) ? cov / std::sqrt(va * vb) : 0.0;
        }
    }
    return corr;
}

void write_histograms_csv(std::ostream &out, std::span<const FitnessHistogram> histograms) {
    out << "length,fitness,count\n";
    for (const auto &h : histograms) {
        for (size_t f = 0; f < h.counts.size(); f++) {
            out << h.length << ',' << f << ',' << h.counts[f] << '\n';
        }
    }
}

void write_series_csv(std::ostream &out, const ConvergenceSeries &series) {
    out << "length,mean,sd,tvd,solutions,total\n";
    for (const auto &p : series) {
        out << p.length << ',' << format_double(p.mean) << ',' << format_double(p.sd) << ','
            << format_double(p.tvd) << ',' << p.solutions << ',' << p.total << '\n';
    }
}

void write_density_csv(std::ostream &out, std::span<const DensityPoint> points) {
    out << "length,solutions,total,rate,rate_low,rate_high,any_wire_solutions,any_wire_rate,"
           "any_wire_low,any_wire_high\n";
    for (const auto &p : points) {
        out << p.length << ',' << p.solutions << ',' << p.total << ',' << format_double(p.rate)
            << ',' << format_double(p.rate_interval.low) << ','
            << format_double(p.rate_interval.high) << ',' << p.any_wire_solutions << ','
            << format_double(p.any_wire_rate) << ',' << format_double(p.any_wire_interval.low)
            << ',' << format_double(p.any_wire_interval.high) << '\n';
    }
}

void write_min_scan_csv(std::ostream &out, std::span<const MinScanLevel> levels) {
    out << "length,output_wire,circuits,solutions,best_fitness\n";
    for (const auto &l : levels) {
        for (size_t w = 0; w < l.solutions_per_wire.size(); w++) {
            out << l.length << ',' << w << ',' << l.circuits << ',' << l.solutions_per_wire[w]
                << ',' << l.best_fitness << '\n';
        }
    }
}

}  // namespace revcirc
