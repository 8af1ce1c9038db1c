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


// revcirc: command-line runner for the sampling, theory and search modules.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "revcirc/fitness.h"
#include "revcirc/recipes.h"
#include "revcirc/sampling.h"
#include "revcirc/search.h"
#include "revcirc/text_format.h"
#include "revcirc/theory.h"
#include "revcirc/trace.h"

namespace {

using namespace revcirc;

uint64_t env_seed() {
    const char *text = std::getenv("REVCIRC_SEED");
    if (text == nullptr || *text == '\0') {
        return 1;
    }
    try {
        return std::stoull(text);
    } catch (const std::exception &) {
        throw std::invalid_argument(std::string("REVCIRC_SEED is not an integer: ") + text);
    }
}

/// Output stream for `--out`: stdout when empty or "-".
class Sink {
   public:
    explicit Sink(const std::string &path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::runtime_error("cannot write " + path);
            }
        }
    }
    std::ostream &operator*() {
        return file_ ? *file_ : std::cout;
    }

   private:
    std::unique_ptr<std::ofstream> file_;
};

TargetTable load_target(const std::string &path) {
    if (path.empty()) {
        return six_multiplexor_target();
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    return read_target_table(in);
}

struct SamplingArgs {
    size_t wires = 6;
    std::vector<size_t> lengths = {5, 10, 20, 50, 100, 200, 500};
    uint64_t samples = 1000000;
    std::optional<uint64_t> seed;
    size_t workers = 0;
    size_t output_wire = 0;
    bool zero_fill = false;
    std::string target;
    std::string checkpoint;
    std::string out;

    void attach(CLI::App *cmd) {
        cmd->add_option("--wires", wires, "Bus width")->check(CLI::Range(3, 64));
        cmd->add_option("--lengths", lengths, "Circuit lengths, increasing")->delimiter(',');
        cmd->add_option("--samples", samples, "Random circuits per length");
        cmd->add_option("--seed", seed, "Seed (default $REVCIRC_SEED or 1)");
        cmd->add_option("--workers", workers, "Threads, 0 for all cores");
        cmd->add_option("--output-wire", output_wire, "Wire read as the output");
        cmd->add_flag("--zero-fill", zero_fill, "Feed spare wires 0 instead of 1");
        cmd->add_option("--target", target, "Target table file (default six-multiplexor)");
        cmd->add_option("--checkpoint", checkpoint, "Resume/save progress in this file");
        cmd->add_option("--out", out, "Output CSV (default stdout)");
    }

    ExperimentConfig config() const {
        ExperimentConfig c;
        c.wires = wires;
        c.lengths = lengths;
        c.samples_per_length = samples;
        c.target = load_target(target);
        c.outputs = OutputMap({output_wire});
        c.constant_fill = !zero_fill;
        c.seed = seed.value_or(env_seed());
        c.workers = workers;
        return c;
    }

    std::vector<FitnessHistogram> run() const {
        SamplingOptions opts;
        opts.checkpoint_path = checkpoint;
        opts.on_length_done = [](const FitnessHistogram &h) {
            std::fprintf(stderr, "length %zu: mean %.4f sd %.4f\n", h.length, h.mean(), h.sd());
        };
        return sample_distribution(config(), opts);
    }
};

struct SearchArgs {
    size_t wires = 12;
    size_t gates = 20;
    size_t pop = 500;
    size_t tournament = 7;
    size_t gens = 500;
    uint64_t budget = 50000;
    size_t runs = 10;
    std::optional<uint64_t> seed;
    std::optional<size_t> output_wire;
    std::string target;
    std::string out;
    std::string solutions;

    void attach(CLI::App *cmd, bool ga) {
        cmd->add_option("--wires", wires, "Bus width")->check(CLI::Range(3, 64));
        cmd->add_option("--gates", gates, "Gates per circuit");
        if (ga) {
            cmd->add_option("--pop", pop, "Population size");
            cmd->add_option("--tournament", tournament, "Tournament size");
            cmd->add_option("--gens", gens, "Maximum generations");
        } else {
            cmd->add_option("--budget", budget, "Mutant evaluations per run");
        }
        cmd->add_option("--runs", runs, "Independent runs");
        cmd->add_option("--seed", seed, "Seed (default $REVCIRC_SEED or 1)");
        cmd->add_option("--output-wire", output_wire,
                        "Wire read as the output (default 0; omit with --best-wire)");
        cmd->add_option("--target", target, "Target table file (default six-multiplexor)");
        cmd->add_option("--out", out, "JSON-lines run log (default none)");
        cmd->add_option("--solutions", solutions, "Write solved circuits here");
    }

    Problem problem(bool best_wire) const {
        Problem p;
        p.target = load_target(target);
        if (best_wire) {
            p.selection = OutputSelection::kBestWire;
        } else {
            p.outputs = OutputMap({output_wire.value_or(0)});
        }
        return p;
    }
};

void print_search_summary(const char *method, const std::vector<RunRecord> &runs,
                          const std::vector<uint64_t> &hits, const FitnessHistogram &random) {
    // Random-search expectation: 1 / P(score >= level) over random circuits.
    std::vector<double> tail(random.counts.size() + 1, 0.0);
    for (size_t f = random.counts.size(); f-- > 0;) {
        tail[f] = tail[f + 1] + double(random.counts[f]) / double(random.total);
    }
    std::printf("run,solved,final_fitness,hit_evaluations,random_search_expected\n");
    size_t solved = 0;
    for (size_t i = 0; i < runs.size(); i++) {
        const RunRecord &r = runs[i];
        solved += r.solved;
        double p = tail[r.final_fitness];
        std::printf("%zu,%d,%llu,%llu,%s\n", i, r.solved ? 1 : 0,
                    (unsigned long long)r.final_fitness, (unsigned long long)hits[i],
                    p > 0 ? std::to_string(1.0 / p).c_str() : "inf");
    }
    std::fprintf(stderr, "%s: %zu/%zu runs solved\n", method, solved, runs.size());
}

FitnessHistogram random_reference(size_t wires, size_t gates, const Problem &problem,
                                  uint64_t seed) {
    ExperimentConfig c;
    c.wires = wires;
    c.lengths = {gates};
    c.samples_per_length = 200000;
    c.target = problem.target;
    if (problem.selection == OutputSelection::kFixed) {
        c.outputs = problem.outputs;
    }
    c.seed = seed;
    return sample_length(c, gates);
}

void write_solutions(const std::string &path, const std::vector<RunRecord> &runs) {
    if (path.empty()) {
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    for (size_t i = 0; i < runs.size(); i++) {
        if (runs[i].solved) {
            out << "# run " << i << "\n" << format_circuit(*runs[i].solution) << "\n";
        }
    }
}

std::string read_all(const std::string &path) {
    if (path.empty() || path == "-") {
        std::stringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Random reversible CCNOT circuits: sampling, limits and search"};
    app.require_subcommand(1);

    SamplingArgs sample_args, converge_args, density_args;
    auto *sample = app.add_subcommand("sample", "Fitness histograms of random circuits");
    sample_args.attach(sample);
    auto *converge = app.add_subcommand("converge", "Mean, sd and TVD to the limit per length");
    converge_args.attach(converge);
    auto *density = app.add_subcommand("density", "Solution density with Poisson intervals");
    density_args.attach(density);

    size_t scan_wires = 6, scan_length = 4, scan_workers = 0;
    double scan_cap = kMaxScanCircuits;
    std::string scan_target, scan_out;
    auto *minscan = app.add_subcommand("minscan", "Exhaustive search for short solutions");
    minscan->add_option("--wires", scan_wires, "Bus width")->check(CLI::Range(3, 64));
    minscan->add_option("--max-length", scan_length, "Longest circuit enumerated");
    minscan->add_option("--workers", scan_workers, "Threads, 0 for all cores");
    minscan->add_option("--max-circuits", scan_cap, "Refuse scans larger than this");
    minscan->add_option("--target", scan_target, "Target table file (default six-multiplexor)");
    minscan->add_option("--out", scan_out, "Output CSV (default stdout)");

    SearchArgs hc_args, ga_args;
    hc_args.wires = 6;
    hc_args.gates = 5;
    bool hc_best = false, ga_best = false;
    auto *hillclimb = app.add_subcommand("hillclimb", "Strict-improvement hill climbing");
    hc_args.attach(hillclimb, false);
    hillclimb->add_flag("--best-wire", hc_best, "Score each circuit on its best wire")
        ->excludes("--output-wire");
    auto *ga = app.add_subcommand("ga", "Generational GA with tournament selection");
    ga_args.attach(ga, true);
    ga->add_flag("--best-wire", ga_best, "Score each circuit on its best wire")
        ->excludes("--output-wire");

    std::string recipe_id, recipe_scale = "ci", recipe_dir = "results";
    std::optional<uint64_t> recipe_seed;
    size_t recipe_workers = 0;
    uint64_t recipe_samples = 0;
    auto *recipe = app.add_subcommand("recipe", "Regenerate one figure or table");
    recipe->add_option("id", recipe_id, "Recipe id")
        ->required()
        ->check(CLI::IsMember(recipe_ids()));
    recipe->add_option("--scale", recipe_scale, "ci or full")->check(CLI::IsMember({"ci", "full"}));
    recipe->add_option("--seed", recipe_seed, "Seed (default $REVCIRC_SEED or 1)");
    recipe->add_option("--out-dir", recipe_dir, "Directory for CSVs and manifest.json");
    recipe->add_option("--workers", recipe_workers, "Threads, 0 for all cores");
    recipe->add_option("--samples", recipe_samples, "Override samples per length");

    std::string target_out;
    auto *target = app.add_subcommand("target", "Write the six-multiplexor target table");
    target->add_option("--out", target_out, "Output file (default stdout)");

    std::string limit_kind = "binomial", limit_out;
    size_t limit_n = 6, limit_m = 1, limit_wires = 7;
    auto *limit = app.add_subcommand("limit", "Limiting fitness distribution as CSV");
    limit->add_option("--kind", limit_kind, "binomial, reachable or normal")
        ->check(CLI::IsMember({"binomial", "reachable", "normal"}));
    limit->add_option("--n", limit_n, "Inputs (binomial)");
    limit->add_option("--m", limit_m, "Outputs (binomial)");
    limit->add_option("--wires", limit_wires, "Bus width (reachable, six-multiplexor)");
    limit->add_option("--out", limit_out, "Output CSV (default stdout)");

    std::string eval_in, eval_target;
    auto *eval = app.add_subcommand("eval", "Score circuits in text form on every wire");
    eval->add_option("file", eval_in, "Circuit file (default stdin)");
    eval->add_option("--target", eval_target, "Target table file (default six-multiplexor)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) {
            auto hs = sample_args.run();
            Sink out(sample_args.out);
            write_histograms_csv(*out, hs);
        } else if (converge->parsed()) {
            auto hs = converge_args.run();
            Sink out(converge_args.out);
            write_series_csv(*out, convergence_series(hs, reference_limit(converge_args.config())));
        } else if (density->parsed()) {
            auto hs = density_args.run();
            Sink out(density_args.out);
            write_density_csv(*out, density_from_histograms(hs));
        } else if (minscan->parsed()) {
            MinScanOptions opts;
            opts.workers = scan_workers;
            opts.max_circuits = scan_cap;
            auto levels = exhaustive_min_scan(scan_wires, scan_length, load_target(scan_target), opts);
            Sink out(scan_out);
            write_min_scan_csv(*out, levels);
        } else if (hillclimb->parsed()) {
            HillClimbConfig c;
            c.wires = hc_args.wires;
            c.length = hc_args.gates;
            c.budget = hc_args.budget;
            c.problem = hc_args.problem(hc_best);
            c.seed = hc_args.seed.value_or(env_seed());
            std::vector<RunRecord> runs;
            std::vector<uint64_t> hits;
            Sink log(hc_args.out.empty() ? "/dev/null" : hc_args.out);
            for (size_t r = 0; r < hc_args.runs; r++) {
                c.run = r;
                runs.push_back(hill_climb(c));
                hits.push_back(runs.back().generations.back().evaluations);
                write_run_log(*log, runs.back(), r);
            }
            print_search_summary("hillclimb", runs, hits,
                                 random_reference(c.wires, c.length, c.problem, c.seed));
            write_solutions(hc_args.solutions, runs);
        } else if (ga->parsed()) {
            GAConfig c;
            c.wires = ga_args.wires;
            c.length = ga_args.gates;
            c.population = ga_args.pop;
            c.tournament = ga_args.tournament;
            c.generations = ga_args.gens;
            c.problem = ga_args.problem(ga_best);
            c.seed = ga_args.seed.value_or(env_seed());
            std::vector<RunRecord> runs;
            std::vector<uint64_t> hits;
            Sink log(ga_args.out.empty() ? "/dev/null" : ga_args.out);
            for (size_t r = 0; r < ga_args.runs; r++) {
                c.run = r;
                runs.push_back(evolve(c));
                auto best = runs.back().best_fitness_per_generation();
                size_t first =
                    std::find(best.begin(), best.end(), runs.back().final_fitness) - best.begin();
                hits.push_back((first + 1) * c.population);
                write_run_log(*log, runs.back(), r);
            }
            print_search_summary("ga", runs, hits,
                                 random_reference(c.wires, c.length, c.problem, c.seed));
            write_solutions(ga_args.solutions, runs);
            try {
                KozaEffort k = koza_effort(runs, c.population);
                std::fprintf(stderr, "koza effort %llu at generation %zu (R = %llu)\n",
                             (unsigned long long)k.effort, k.generation,
                             (unsigned long long)k.runs_required);
            } catch (const std::invalid_argument &) {
                std::fprintf(stderr, "koza effort undefined: no run solved\n");
            }
        } else if (recipe->parsed()) {
            RecipeOptions o;
            o.id = recipe_id;
            o.scale = parse_scale(recipe_scale);
            o.seed = recipe_seed.value_or(env_seed());
            o.out_dir = recipe_dir;
            o.workers = recipe_workers;
            o.samples = recipe_samples;
            o.log = &std::cerr;
            RecipeResult r = run_recipe(o);
            for (const auto &f : r.files) {
                std::cout << f.string() << "\n";
            }
            std::fprintf(stderr, "%s done in %.1fs\n", recipe_id.c_str(), r.wall_seconds);
        } else if (target->parsed()) {
            Sink out(target_out);
            write_target_table(*out, six_multiplexor_target());
        } else if (limit->parsed()) {
            LimitModel model = limit_kind == "reachable"
                                   ? reachable_limit(limit_wires, six_multiplexor_target())
                                   : binomial_limit(limit_n, limit_m);
            Sink out(limit_out);
            if (limit_kind == "normal") {
                model.pmf = normal_approximation(model);
            }
            write_limit_csv(*out, model);
        } else if (eval->parsed()) {
            std::istringstream in(read_all(eval_in));
            TargetTable t = load_target(eval_target);
            std::cout << "circuit,wire,fitness,max\n";
            auto circuits = read_circuits(in);
            for (size_t i = 0; i < circuits.size(); i++) {
                for (size_t w = 0; w < circuits[i].wires(); w++) {
                    FitnessValue v = hamming_fitness(circuits[i], t, OutputMap({w}));
                    std::cout << i << "," << w << "," << v.raw << "," << v.max << "\n";
                }
            }
        }
    } catch (const std::exception &e) {
        std::fprintf(stderr, "revcirc: %s\n", e.what());
        return 1;
    }
    return 0;
}
