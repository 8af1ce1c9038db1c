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


#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "revcirc/fitness.h"
#include "revcirc/recipes.h"
#include "revcirc/sampling.h"
#include "revcirc/search.h"
#include "revcirc/text_format.h"
#include "revcirc/theory.h"
#include "revcirc/trace.h"

namespace py = pybind11;
using namespace revcirc;

namespace {

Problem make_problem(std::optional<size_t> output_wire, bool best_wire) {
    Problem p;
    if (best_wire) {
        p.selection = OutputSelection::kBestWire;
    } else {
        p.outputs = OutputMap({output_wire.value_or(0)});
    }
    return p;
}

std::vector<std::vector<uint64_t>> trace_rows(const TruthTableTrace &t) {
    std::vector<std::vector<uint64_t>> rows;
    for (size_t w = 0; w < t.wires(); w++) {
        auto r = t.row(w);
        rows.emplace_back(r.begin(), r.end());
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Random reversible CCNOT circuits: simulation, limits and search.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Gate>(m, "Gate")
        .def(py::init<size_t, size_t, size_t>(), py::arg("target"), py::arg("control_a"),
             py::arg("control_b"))
        .def_property_readonly("target", [](const Gate &g) { return g.target; })
        .def_property_readonly("control_a", [](const Gate &g) { return g.control_a; })
        .def_property_readonly("control_b", [](const Gate &g) { return g.control_b; })
        .def("is_cnot", &Gate::is_cnot)
        .def("__eq__", [](const Gate &a, const Gate &b) { return a == b; })
        .def("__hash__",
             [](const Gate &g) { return (g.target << 16) | (g.control_a << 8) | g.control_b; })
        .def("__repr__", [](const Gate &g) { return "Gate(" + g.str() + ")"; });

    m.def("gate_count", &gate_count, py::arg("wires"));
    m.def("enumerate_gates", &enumerate_gates, py::arg("wires"));

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<size_t, size_t, size_t, bool, std::vector<Gate>>(), py::arg("wires"),
             py::arg("n_inputs"), py::arg("m_outputs") = 1, py::arg("constant_fill") = true,
             py::arg("gates") = std::vector<Gate>{})
        .def_property_readonly("wires", &Circuit::wires)
        .def_property_readonly("n_inputs", &Circuit::n_inputs)
        .def_property_readonly("m_outputs", &Circuit::m_outputs)
        .def_property_readonly("constant_fill", &Circuit::constant_fill)
        .def_property_readonly("gates", &Circuit::gates)
        .def("__len__", &Circuit::size)
        .def("reversed", &Circuit::reversed)
        .def("then", &Circuit::then)
        .def("__eq__", [](const Circuit &a, const Circuit &b) { return a == b; })
        .def("__str__", &format_circuit)
        .def("__repr__", [](const Circuit &c) { return "Circuit('" + format_circuit(c) + "')"; });

    m.def("parse_circuit", [](const std::string &text) { return parse_circuit(text); },
          py::arg("text"));
    m.def("format_circuit", &format_circuit, py::arg("circuit"));
    m.def(
        "random_circuit",
        [](size_t wires, size_t length, uint64_t seed, std::optional<size_t> n_inputs) {
            Rng rng = make_rng(seed);
            return random_circuit(wires, length, rng, n_inputs.value_or(wires));
        },
        py::arg("wires"), py::arg("length"), py::arg("seed") = 1, py::arg("n_inputs") = py::none());
    m.def(
        "evaluate", [](const Circuit &c) { return trace_rows(evaluate(c)); }, py::arg("circuit"),
        "Per-wire truth-table rows, 64 fitness cases per integer.");
    m.def(
        "to_permutation", [](const Circuit &c) { return to_permutation(c).mapping(); },
        py::arg("circuit"));
    m.def(
        "run_on_state", [](const Circuit &c, uint64_t s) { return run_on_state(c, s); },
        py::arg("circuit"), py::arg("state"));

    m.def(
        "six_multiplexor_target",
        [] {
            auto t = six_multiplexor_target();
            std::vector<int> bits;
            for (uint64_t c = 0; c < t.case_count(); c++) {
                bits.push_back(t.bit(0, c));
            }
            return bits;
        },
        "Desired output for each of the 64 cases.");
    m.def(
        "hamming_fitness",
        [](const Circuit &c, std::optional<size_t> output_wire, bool best_wire) {
            return make_problem(output_wire, best_wire).score(c);
        },
        py::arg("circuit"), py::arg("output_wire") = py::none(), py::arg("best_wire") = false,
        "Six-multiplexor Hamming score of one circuit.");

    py::class_<LimitModel>(m, "LimitModel")
        .def_property_readonly("kind", [](const LimitModel &l) { return to_string(l.kind); })
        .def_readonly("mean", &LimitModel::mean)
        .def_readonly("sd", &LimitModel::sd)
        .def_readonly("solution_probability", &LimitModel::solution_probability)
        .def_readonly("pmf", &LimitModel::pmf);
    m.def("binomial_limit", &binomial_limit, py::arg("n"), py::arg("m"));
    m.def(
        "reachable_limit",
        [](size_t wires) { return reachable_limit(wires, six_multiplexor_target()); },
        py::arg("wires"));
    m.def(
        "normalized_limit",
        [](size_t n, size_t mm) {
            auto r = normalized_limit(n, mm);
            return py::make_tuple(r.mean, r.sd);
        },
        py::arg("n"), py::arg("m"));
    m.def(
        "rms_limit",
        [](size_t mm, const std::string &regime) {
            if (regime != "small-T" && regime != "exhaustive") {
                throw py::value_error("regime must be 'small-T' or 'exhaustive'");
            }
            auto r = rms_limit(mm, regime == "small-T" ? RmsRegime::kSmallT
                                                       : RmsRegime::kExhaustiveUniform);
            return py::make_tuple(r.mean, r.sd);
        },
        py::arg("m"), py::arg("regime"));
    m.def(
        "total_variation_distance",
        [](const std::vector<double> &p, const std::vector<double> &q) {
            return total_variation_distance(p, q);
        },
        py::arg("p"), py::arg("q"));
    m.def(
        "gate_transition_matrix",
        [](size_t wires) {
            TransitionMatrix t = gate_transition_matrix(wires);
            std::vector<std::vector<double>> rows;
            for (size_t r = 0; r < t.size(); r++) {
                rows.emplace_back(t.row(r).begin(), t.row(r).end());
            }
            return rows;
        },
        py::arg("wires"));

    py::class_<FitnessHistogram>(m, "FitnessHistogram")
        .def_readonly("length", &FitnessHistogram::length)
        .def_readonly("counts", &FitnessHistogram::counts)
        .def_readonly("total", &FitnessHistogram::total)
        .def_readonly("any_wire_solutions", &FitnessHistogram::any_wire_solutions)
        .def("mean", &FitnessHistogram::mean)
        .def("sd", &FitnessHistogram::sd)
        .def("solutions", &FitnessHistogram::solutions);
    m.def(
        "sample_distribution",
        [](size_t wires, std::vector<size_t> lengths, uint64_t samples, uint64_t seed,
           size_t output_wire, size_t workers) {
            ExperimentConfig c;
            c.wires = wires;
            c.lengths = std::move(lengths);
            c.samples_per_length = samples;
            c.seed = seed;
            c.outputs = OutputMap({output_wire});
            c.workers = workers;
            py::gil_scoped_release release;
            return sample_distribution(c);
        },
        py::arg("wires"), py::arg("lengths"), py::arg("samples") = 100000, py::arg("seed") = 1,
        py::arg("output_wire") = 0, py::arg("workers") = 0);
    m.def(
        "tvd_to_limit",
        [](const FitnessHistogram &h, size_t wires) {
            ExperimentConfig c;
            c.wires = wires;
            std::vector<FitnessHistogram> hs = {h};
            return convergence_series(hs, reference_limit(c))[0].tvd;
        },
        py::arg("histogram"), py::arg("wires"));
    m.def(
        "exhaustive_min_scan",
        [](size_t wires, size_t max_length) {
            py::gil_scoped_release release;
            auto levels = exhaustive_min_scan(wires, max_length, six_multiplexor_target());
            std::vector<std::tuple<size_t, uint64_t, uint64_t, uint64_t>> out;
            for (const auto &l : levels) {
                out.emplace_back(l.length, l.circuits, l.solutions(), l.best_fitness);
            }
            return out;
        },
        py::arg("wires"), py::arg("max_length"),
        "(length, circuits, solutions over all wires, best fitness) per length.");

    m.def(
        "mutate",
        [](const Circuit &c, uint64_t seed) {
            Rng rng = make_rng(seed);
            return mutate(c, rng);
        },
        py::arg("circuit"), py::arg("seed") = 1);
    m.def("neighborhood_size", &neighborhood_size, py::arg("circuit"));

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("solved", &RunRecord::solved)
        .def_readonly("solved_generation", &RunRecord::solved_generation)
        .def_readonly("evaluations", &RunRecord::evaluations)
        .def_readonly("final_fitness", &RunRecord::final_fitness)
        .def_readonly("solution", &RunRecord::solution)
        .def_readonly("best_circuit", &RunRecord::best_circuit)
        .def("best_fitness_per_generation", &RunRecord::best_fitness_per_generation);
    m.def(
        "hill_climb",
        [](size_t wires, size_t gates, uint64_t budget, uint64_t seed, uint64_t run,
           std::optional<size_t> output_wire, bool best_wire) {
            HillClimbConfig c;
            c.wires = wires;
            c.length = gates;
            c.budget = budget;
            c.seed = seed;
            c.run = run;
            c.problem = make_problem(output_wire, best_wire);
            py::gil_scoped_release release;
            return hill_climb(c);
        },
        py::arg("wires") = 6, py::arg("gates") = 5, py::arg("budget") = 50000,
        py::arg("seed") = 1, py::arg("run") = 0, py::arg("output_wire") = py::none(),
        py::arg("best_wire") = false);
    m.def(
        "evolve",
        [](size_t wires, size_t gates, size_t population, size_t tournament, size_t generations,
           uint64_t seed, uint64_t run, std::optional<size_t> output_wire, bool best_wire) {
            GAConfig c;
            c.wires = wires;
            c.length = gates;
            c.population = population;
            c.tournament = tournament;
            c.generations = generations;
            c.seed = seed;
            c.run = run;
            c.problem = make_problem(output_wire, best_wire);
            py::gil_scoped_release release;
            return evolve(c);
        },
        py::arg("wires") = 12, py::arg("gates") = 20, py::arg("population") = 500,
        py::arg("tournament") = 7, py::arg("generations") = 500, py::arg("seed") = 1,
        py::arg("run") = 0, py::arg("output_wire") = py::none(), py::arg("best_wire") = false);
    m.def(
        "koza_effort",
        [](const std::vector<RunRecord> &runs, size_t population, double z) {
            KozaEffort k = koza_effort(runs, population, z);
            return py::dict(py::arg("effort") = k.effort, py::arg("generation") = k.generation,
                            py::arg("runs_required") = k.runs_required,
                            py::arg("success_probability") = k.success_probability);
        },
        py::arg("runs"), py::arg("population"), py::arg("z") = 0.99);

    m.def("recipe_ids", &recipe_ids);
    m.def(
        "run_recipe",
        [](const std::string &id, const std::string &scale, uint64_t seed,
           const std::filesystem::path &out_dir, uint64_t samples) {
            RecipeOptions o;
            o.id = id;
            o.scale = parse_scale(scale);
            o.seed = seed;
            o.out_dir = out_dir;
            o.samples = samples;
            py::gil_scoped_release release;
            return run_recipe(o).files;
        },
        py::arg("id"), py::arg("scale") = "ci", py::arg("seed") = 1, py::arg("out_dir") = ".",
        py::arg("samples") = 0, "Runs a figure/table recipe and returns the files written.");
}
