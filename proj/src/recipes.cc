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


#include "revcirc/recipes.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "revcirc/fitness.h"
#include "revcirc/sampling.h"
#include "revcirc/search.h"
#include "revcirc/text_format.h"
#include "revcirc/theory.h"

namespace revcirc {

namespace fs = std::filesystem;

Scale parse_scale(const std::string &text) {
    if (text == "ci") {
        return Scale::kCi;
    }
    if (text == "full") {
        return Scale::kFull;
    }
    throw std::invalid_argument("unknown scale '" + text + "' (expected ci or full)");
}

const char *to_string(Scale scale) {
    return scale == Scale::kCi ? "ci" : "full";
}

const std::vector<std::string> &recipe_ids() {
    static const std::vector<std::string> ids = {"fig4", "fig5", "fig6",   "fig7",
                                                 "fig8", "fig10", "table1", "table3"};
    return ids;
}

namespace {

const std::vector<size_t> kShortLengths = {5, 10, 20, 50, 100, 200, 500};
const std::vector<size_t> kWideLengths = {20, 50, 100, 200, 500};
const std::vector<size_t> kDensityLengths = {5, 6, 7, 8, 9, 10, 12, 15, 20, 30, 50, 100};
constexpr size_t kTableRuns = 10;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

class Context {
   public:
    explicit Context(const RecipeOptions &options) : options_(options) {
        std::error_code ec;
        fs::create_directories(options.out_dir, ec);
        if (ec || !fs::is_directory(options.out_dir)) {
            throw std::runtime_error("cannot create output directory " +
                                     options.out_dir.string());
        }
    }

    uint64_t samples() const {
        if (options_.samples != 0) {
            return options_.samples;
        }
        return options_.scale == Scale::kCi ? 1000000 : 100000000;
    }

    const RecipeOptions &options() const {
        return options_;
    }

    /// Opens `name` in the output directory and records it in the manifest.
    std::ofstream open(const std::string &name) {
        fs::path path = options_.out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        files_.push_back(path);
        return out;
    }

    void say(const std::string &line) const {
        if (options_.log != nullptr) {
            *options_.log << options_.id << ": " << line << "\n" << std::flush;
        }
    }

    std::vector<FitnessHistogram> sample(size_t wires, const std::vector<size_t> &lengths) {
        ExperimentConfig config;
        config.wires = wires;
        config.lengths = lengths;
        config.samples_per_length = samples();
        config.seed = options_.seed;
        config.workers = options_.workers;
        SamplingOptions opts;
        fs::path checkpoint =
            options_.out_dir / (".checkpoint_" + options_.id + "_w" + std::to_string(wires) + ".json");
        opts.checkpoint_path = checkpoint.string();
        opts.on_length_done = [&](const FitnessHistogram &h) {
            say("wires " + std::to_string(wires) + " length " + std::to_string(h.length) +
                " mean " + num(h.mean()));
        };
        auto out = sample_distribution(config, opts);
        fs::remove(checkpoint);
        return out;
    }

    const std::vector<fs::path> &files() const {
        return files_;
    }

   private:
    const RecipeOptions &options_;
    std::vector<fs::path> files_;
};

LimitModel limit_for(size_t wires) {
    ExperimentConfig c;
    c.wires = wires;
    return reference_limit(c);
}

void write_pmf(std::ostream &out, const std::vector<double> &pmf) {
    out << "fitness,probability\n";
    for (size_t f = 0; f < pmf.size(); f++) {
        out << f << "," << num(pmf[f]) << "\n";
    }
}

void distribution_recipe(Context &ctx, const std::string &prefix, size_t wires,
                         const std::vector<size_t> &lengths) {
    auto hs = ctx.sample(wires, lengths);
    auto h = ctx.open(prefix + "_histograms.csv");
    write_histograms_csv(h, hs);
    LimitModel limit = limit_for(wires);
    auto l = ctx.open(prefix + "_limit.csv");
    write_pmf(l, limit.pmf);
    auto n = ctx.open(prefix + "_normal.csv");
    write_pmf(n, normal_approximation(limit));
    if (limit.kind != LimitKind::kBinomialHamming) {
        auto b = ctx.open(prefix + "_binomial.csv");
        write_pmf(b, binomial_limit(6, 1).pmf);
    }
}

void convergence_recipe(Context &ctx, bool tvd) {
    auto out = ctx.open(tvd ? "fig7_tvd.csv" : "fig8_moments.csv");
    out << (tvd ? "wires,length,tvd,tvd_sigma,total\n"
                : "wires,length,mean,sd,limit_mean,limit_sd\n");
    for (size_t wires : {6, 7, 12}) {
        LimitModel limit = limit_for(wires);
        auto series = convergence_series(ctx.sample(wires, kShortLengths), limit);
        for (const auto &p : series) {
            out << wires << "," << p.length << ",";
            if (tvd) {
                out << num(p.tvd) << "," << num(p.tvd_sigma) << "," << p.total << "\n";
            } else {
                out << num(p.mean) << "," << num(p.sd) << "," << num(limit.mean) << ","
                    << num(limit.sd) << "\n";
            }
        }
    }
}

void density_recipe(Context &ctx) {
    auto hs = ctx.sample(6, kDensityLengths);
    auto out = ctx.open("fig10_density.csv");
    write_density_csv(out, density_from_histograms(hs));
}

// P(score >= level) for random circuits of one shape, from a histogram.
std::vector<double> tail_probabilities(const FitnessHistogram &h) {
    std::vector<double> tail(h.counts.size() + 1, 0.0);
    for (size_t f = h.counts.size(); f-- > 0;) {
        tail[f] = tail[f + 1] + static_cast<double>(h.counts[f]);
    }
    for (double &t : tail) {
        t /= static_cast<double>(h.total);
    }
    return tail;
}

void table1_recipe(Context &ctx) {
    struct Shape {
        size_t wires;
        size_t gates;
    };
    const Shape shapes[] = {{6, 5}, {12, 20}};
    auto summary = ctx.open("table1.csv");
    summary << "method,wires,gates,runs,solved\n";
    auto runs_csv = ctx.open("table1_runs.csv");
    runs_csv << "method,wires,gates,run,solved,final_fitness,hit_evaluations,"
                "random_search_expected\n";
    auto solutions = ctx.open("table1_solutions.txt");
    auto koza_csv = ctx.open("table1_koza.csv");
    koza_csv << "wires,gates,runs,solved,effort,generation,runs_required,success_probability\n";

    for (const Shape &shape : shapes) {
        ExperimentConfig rc;
        rc.wires = shape.wires;
        rc.lengths = {shape.gates};
        rc.samples_per_length = ctx.options().scale == Scale::kCi ? 1000000 : 10000000;
        rc.seed = ctx.options().seed;
        rc.workers = ctx.options().workers;
        auto tail = tail_probabilities(sample_length(rc, shape.gates));
        auto expected = [&](uint64_t level) {
            return tail[level] > 0 ? num(1.0 / tail[level]) : std::string("inf");
        };
        auto record = [&](const char *method, size_t run, const RunRecord &r, uint64_t hit) {
            runs_csv << method << "," << shape.wires << "," << shape.gates << "," << run << ","
                     << (r.solved ? 1 : 0) << "," << r.final_fitness << "," << hit << ","
                     << expected(r.final_fitness) << "\n";
            if (r.solved) {
                solutions << "# " << method << " wires " << shape.wires << " gates "
                          << shape.gates << " run " << run << "\n"
                          << format_circuit(*r.solution) << "\n";
            }
        };

        size_t solved = 0;
        for (size_t run = 0; run < kTableRuns; run++) {
            HillClimbConfig hc;
            hc.wires = shape.wires;
            hc.length = shape.gates;
            hc.seed = ctx.options().seed;
            hc.run = run;
            RunRecord r = hill_climb(hc);
            solved += r.solved;
            record("hillclimb", run, r, r.generations.back().evaluations);
        }
        summary << "hillclimb," << shape.wires << "," << shape.gates << "," << kTableRuns << ","
                << solved << "\n";
        ctx.say("hill climber " + std::to_string(shape.wires) + "/" +
                std::to_string(shape.gates) + " solved " + std::to_string(solved));

        std::vector<RunRecord> ga_runs;
        solved = 0;
        for (size_t run = 0; run < kTableRuns; run++) {
            GAConfig ga;
            ga.wires = shape.wires;
            ga.length = shape.gates;
            ga.seed = ctx.options().seed;
            ga.run = run;
            RunRecord r = evolve(ga);
            solved += r.solved;
            auto best = r.best_fitness_per_generation();
            size_t first = std::find(best.begin(), best.end(), r.final_fitness) - best.begin();
            record("ga", run, r, (first + 1) * ga.population);
            ga_runs.push_back(std::move(r));
        }
        summary << "ga," << shape.wires << "," << shape.gates << "," << kTableRuns << ","
                << solved << "\n";
        ctx.say("ga " + std::to_string(shape.wires) + "/" + std::to_string(shape.gates) +
                " solved " + std::to_string(solved));
        koza_csv << shape.wires << "," << shape.gates << "," << kTableRuns << "," << solved << ",";
        if (solved > 0) {
            KozaEffort k = koza_effort(ga_runs, GAConfig{}.population);
            koza_csv << k.effort << "," << k.generation << "," << k.runs_required << ","
                     << num(k.success_probability) << "\n";
        } else {
            koza_csv << ",,,\n";
        }
    }
}

void table3_recipe(Context &ctx) {
    auto out = ctx.open("table3.csv");
    out << "fitness_function,n,m,tests,mean,sd,perfect_solutions\n";
    LimitModel h = binomial_limit(6, 1);
    out << "hamming,6,1,64," << num(h.mean) << "," << num(h.sd) << ","
        << num(h.solution_probability) << "\n";
    MeanSd norm = normalized_limit(6, 1);
    out << "normalized_hamming,6,1,64," << num(norm.mean) << "," << num(norm.sd) << ","
        << num(h.solution_probability) << "\n";
    LimitModel small = rms_limit_model(8, RmsRegime::kSmallT, 4);
    out << "rms_small_t,8,8,4," << num(small.mean) << "," << num(small.sd) << ","
        << num(small.solution_probability) << "\n";
    LimitModel wide = rms_limit_model(8, RmsRegime::kExhaustiveUniform, 256);
    out << "rms_exhaustive,8,8,256," << num(wide.mean) << "," << num(wide.sd) << ","
        << num(wide.solution_probability) << "\n";
}

}  // namespace

RecipeResult run_recipe(const RecipeOptions &options) {
    const auto &ids = recipe_ids();
    if (std::find(ids.begin(), ids.end(), options.id) == ids.end()) {
        throw std::invalid_argument("unknown recipe '" + options.id + "'");
    }
    auto start = std::chrono::steady_clock::now();
    Context ctx(options);
    const std::string &id = options.id;
    if (id == "fig4") {
        distribution_recipe(ctx, "fig4", 6, kShortLengths);
    } else if (id == "fig5") {
        distribution_recipe(ctx, "fig5", 7, kWideLengths);
    } else if (id == "fig6") {
        distribution_recipe(ctx, "fig6", 12, kWideLengths);
    } else if (id == "fig7" || id == "fig8") {
        convergence_recipe(ctx, id == "fig7");
    } else if (id == "fig10") {
        density_recipe(ctx);
    } else if (id == "table1") {
        table1_recipe(ctx);
    } else {
        table3_recipe(ctx);
    }

    RecipeResult result;
    result.files = ctx.files();
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    nlohmann::json manifest = {
        {"recipe", id},
        {"scale", to_string(options.scale)},
        {"seed", options.seed},
        {"samples_per_length", ctx.samples()},
        {"wall_seconds", result.wall_seconds},
    };
    for (const auto &f : result.files) {
        manifest["files"].push_back(f.filename().string());
    }
    fs::path manifest_path = options.out_dir / "manifest.json";
    std::ofstream m(manifest_path);
    if (!m) {
        throw std::runtime_error("cannot write " + manifest_path.string());
    }
    m << manifest.dump(2) << "\n";
    result.files.push_back(manifest_path);
    return result;
}

}  // namespace revcirc
