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

#include "revcirc/theory.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "revcirc/trace.h"

namespace revcirc {

const char *to_string(LimitKind kind) {
    switch (kind) {
        case LimitKind::kBinomialHamming:
            return "binomial-hamming";
        case LimitKind::kParityShiftedHamming:
            return "parity-shifted-hamming";
        case LimitKind::kFiniteWidthHamming:
            return "finite-width-hamming";
        case LimitKind::kRmsSmallT:
            return "rms-small-T";
        case LimitKind::kRmsExhaustive:
            return "rms-exhaustive";
    }
    return "unknown";
}

double log_binomial_coefficient(double n, double k) {
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

double hypergeometric_pmf(uint64_t population, uint64_t successes, uint64_t draws, uint64_t k) {
    if (successes > population || draws > population) {
        throw std::invalid_argument("hypergeometric parameters out of range");
    }
    if (k > successes || k > draws || draws - k > population - successes) {
        return 0.0;
    }
    auto N = static_cast<double>(population);
    auto K = static_cast<double>(successes);
    auto n = static_cast<double>(draws);
    auto x = static_cast<double>(k);
    return std::exp(log_binomial_coefficient(K, x) + log_binomial_coefficient(N - K, n - x) -
                    log_binomial_coefficient(N, n));
}

namespace {

void fill_moments(LimitModel &model) {
    double mean = 0;
    double second = 0;
    for (size_t f = 0; f < model.pmf.size(); f++) {
        mean += static_cast<double>(f) * model.pmf[f];
        second += static_cast<double>(f) * static_cast<double>(f) * model.pmf[f];
    }
    model.mean = mean;
    model.sd = std::sqrt(std::max(0.0, second - mean * mean));
    model.solution_probability = model.pmf.back();
}

}  // namespace

LimitModel binomial_limit(size_t n, size_t m) {
    if (n >= 63) {
        throw std::invalid_argument("too many inputs for a binomial limit");
    }
    double trials = static_cast<double>(m) * std::ldexp(1.0, static_cast<int>(n));
    LimitModel model;
    model.kind = LimitKind::kBinomialHamming;
    model.n = n;
    model.m = m;
    model.mean = trials / 2;
    model.sd = std::sqrt(trials) / 2;
    model.solution_probability = std::exp2(-trials);
    if (trials <= static_cast<double>(kMaxPmfSupport)) {
        auto total = static_cast<size_t>(trials);
        model.pmf.resize(total + 1);
        double log_half_power = -trials * std::numbers::ln2;
        for (size_t f = 0; f <= total; f++) {
            model.pmf[f] = std::exp(
                log_binomial_coefficient(trials, static_cast<double>(f)) + log_half_power);
        }
    }
    return model;
}

LimitModel reachable_limit(size_t wires, const TargetTable &target, bool constant_fill) {
    size_t n = target.n_inputs();
    if (target.m_outputs() != 1) {
        throw std::invalid_argument("reachable_limit needs a single-output target");
    }
    if (wires < n || wires < 3 || wires > 62) {
        throw std::invalid_argument("reachable_limit: wire count out of range");
    }
    if (n > 12) {
        throw std::invalid_argument("reachable_limit: too many inputs");
    }
    uint64_t cases = target.case_count();
    // Case 0 lands on the fixed all-zero state unless spare lines carry 1s.
    bool zero_case_fixed = !(constant_fill && wires > n);
    uint64_t moving = zero_case_fixed ? cases - 1 : cases;
    uint64_t fixed_match = zero_case_fixed && !target.bit(0, 0) ? 1 : 0;
    uint64_t target_ones = target.ones(0) - (zero_case_fixed && target.bit(0, 0) ? 1 : 0);
    uint64_t states = (uint64_t{1} << wires) - 1;
    uint64_t states_with_one = uint64_t{1} << (wires - 1);

    LimitModel model;
    model.kind = wires == n ? LimitKind::kParityShiftedHamming : LimitKind::kFiniteWidthHamming;
    model.n = n;
    model.m = 1;
    model.pmf.assign(cases + 1, 0.0);
    // j = moving cases whose image has the output bit set; k = how many of
    // those the target also wants set.
    for (uint64_t j = 0; j <= moving; j++) {
        double pj = hypergeometric_pmf(states, states_with_one, moving, j);
        if (pj == 0.0) {
            continue;
        }
        for (uint64_t k = 0; k <= j; k++) {
            double pk = hypergeometric_pmf(moving, target_ones, j, k);
            if (pk == 0.0) {
                continue;
            }
            uint64_t f = 2 * k + moving - target_ones - j + fixed_match;
            model.pmf[f] += pj * pk;
        }
    }
    fill_moments(model);
    return model;
}

MeanSd normalized_limit(size_t n, size_t m) {
    if (m == 0) {
        throw std::invalid_argument("normalized_limit needs m >= 1");
    }
    return {0.5,
            std::exp2(-static_cast<double>(n) / 2) / (2 * std::sqrt(static_cast<double>(m)))};
}

MeanSd rms_limit(size_t m, RmsRegime regime) {
    double scale = std::ldexp(1.0, static_cast<int>(m));
    if (regime == RmsRegime::kSmallT) {
        return {scale / 2, scale / (2 * std::sqrt(3.0))};
    }
    return {7 * scale / (12 * std::sqrt(3.0)), 0.23 * scale};
}

LimitModel rms_limit_model(size_t m, RmsRegime regime, uint64_t tests) {
    MeanSd ms = rms_limit(m, regime);
    LimitModel model;
    model.kind = regime == RmsRegime::kSmallT ? LimitKind::kRmsSmallT : LimitKind::kRmsExhaustive;
    model.m = m;
    model.mean = ms.mean;
    model.sd = ms.sd;
    model.solution_probability = std::exp2(-static_cast<double>(m) * static_cast<double>(tests));
    return model;
}

std::vector<double> normal_approximation(const LimitModel &model) {
    if (!model.has_pmf() || model.sd <= 0) {
        throw std::invalid_argument("normal approximation needs a materialized pmf");
    }
    std::vector<double> out(model.pmf.size(), 0.0);
    double total = 0;
    for (size_t f = 0; f < out.size(); f++) {
        if (model.kind == LimitKind::kParityShiftedHamming && (f & 1)) {
            continue;
        }
        double z = (static_cast<double>(f) - model.mean) / model.sd;
        out[f] = std::exp(-0.5 * z * z);
        total += out[f];
    }
    for (double &v : out) {
        v /= total;
    }
    return out;
}

void write_limit_csv(std::ostream &out, const LimitModel &model) {
    out << "fitness,probability\n";
    char buf[64];
    for (size_t f = 0; f < model.pmf.size(); f++) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", f, model.pmf[f]);
        out << buf;
    }
}

TransitionMatrix::TransitionMatrix(size_t size) : size_(size), entries_(size * size, 0.0) {
}

TransitionMatrix TransitionMatrix::identity(size_t size) {
    TransitionMatrix m(size);
    for (size_t i = 0; i < size; i++) {
        m.at(i, i) = 1.0;
    }
    return m;
}

TransitionMatrix TransitionMatrix::operator*(const TransitionMatrix &rhs) const {
    if (rhs.size_ != size_) {
        throw std::invalid_argument("matrix size mismatch");
    }
    TransitionMatrix out(size_);
    for (size_t i = 0; i < size_; i++) {
        for (size_t k = 0; k < size_; k++) {
            double a = at(i, k);
            if (a == 0.0) {
                continue;
            }
            for (size_t j = 0; j < size_; j++) {
                out.at(i, j) += a * rhs.at(k, j);
            }
        }
    }
    return out;
}

TransitionMatrix TransitionMatrix::power(uint64_t k) const {
    TransitionMatrix result = identity(size_);
    TransitionMatrix base = *this;
    while (k) {
        if (k & 1) {
            result = result * base;
        }
        k >>= 1;
        if (k) {
            base = base * base;
        }
    }
    return result;
}

std::vector<double> TransitionMatrix::step(std::span<const double> p) const {
    if (p.size() != size_) {
        throw std::invalid_argument("distribution size mismatch");
    }
    std::vector<double> out(size_, 0.0);
    for (size_t i = 0; i < size_; i++) {
        for (size_t j = 0; j < size_; j++) {
            out[j] += p[i] * at(i, j);
        }
    }
    return out;
}

std::vector<double> TransitionMatrix::row_sums() const {
    std::vector<double> out(size_, 0.0);
    for (size_t i = 0; i < size_; i++) {
        for (size_t j = 0; j < size_; j++) {
            out[i] += at(i, j);
        }
    }
    return out;
}

std::vector<double> TransitionMatrix::column_sums() const {
    std::vector<double> out(size_, 0.0);
    for (size_t i = 0; i < size_; i++) {
        for (size_t j = 0; j < size_; j++) {
            out[j] += at(i, j);
        }
    }
    return out;
}

double TransitionMatrix::doubly_stochastic_error() const {
    double worst = 0;
    for (double s : row_sums()) {
        worst = std::max(worst, std::abs(s - 1.0));
    }
    for (double s : column_sums()) {
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

TransitionMatrix gate_transition_matrix(size_t wires) {
    if (wires < 3 || wires > kMaxTransitionWires) {
        throw std::invalid_argument("gate_transition_matrix supports 3.." +
                                    std::to_string(kMaxTransitionWires) + " wires, got " +
                                    std::to_string(wires));
    }
    auto gates = enumerate_gates(wires);
    size_t states = size_t{1} << wires;
    TransitionMatrix m(states);
    double weight = 1.0 / static_cast<double>(gates.size());
    for (const Gate &g : gates) {
        for (size_t s = 0; s < states; s++) {
            m.at(s, run_on_state(std::span<const Gate>(&g, 1), s)) += weight;
        }
    }
    return m;
}

std::vector<size_t> reachable_states(const TransitionMatrix &matrix, size_t start) {
    std::vector<bool> seen(matrix.size(), false);
    std::vector<size_t> stack{start};
    seen.at(start) = true;
    while (!stack.empty()) {
        size_t s = stack.back();
        stack.pop_back();
        for (size_t j = 0; j < matrix.size(); j++) {
            if (matrix.at(s, j) > 0 && !seen[j]) {
                seen[j] = true;
                stack.push_back(j);
            }
        }
    }
    std::vector<size_t> out;
    for (size_t j = 0; j < seen.size(); j++) {
        if (seen[j]) {
            out.push_back(j);
        }
    }
    return out;
}

std::vector<double> reachable_uniform(const TransitionMatrix &matrix, size_t start) {
    auto states = reachable_states(matrix, start);
    std::vector<double> out(matrix.size(), 0.0);
    for (size_t s : states) {
        out[s] = 1.0 / static_cast<double>(states.size());
    }
    return out;
}

double total_variation_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("total variation distance: support mismatch (" +
                                    std::to_string(p.size()) + " vs " +
                                    std::to_string(q.size()) + ")");
    }
    double sp = 0;
    double sq = 0;
    double diff = 0;
    for (size_t i = 0; i < p.size(); i++) {
        if (p[i] < 0 || q[i] < 0) {
            throw std::invalid_argument("total variation distance: negative probability");
        }
        sp += p[i];
        sq += q[i];
        diff += std::abs(p[i] - q[i]);
    }
    if (std::abs(sp - 1) > 1e-9 || std::abs(sq - 1) > 1e-9) {
        throw std::invalid_argument("total variation distance: inputs must sum to 1");
    }
    return std::min(1.0, diff / 2);
}

}  // namespace revcirc
