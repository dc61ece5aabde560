// Copyright 2026 The evoqc Authors
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

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "evoqc/experiment.hpp"
#include "evoqc/fitness_qecc.hpp"
#include "evoqc/fitness_toy.hpp"
#include "evoqc/genome.hpp"
#include "evoqc/tableau.hpp"

using namespace evoqc;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Genome load_genome(const std::string &path) {
    try {
        return parse_genome(read_file(path));
    } catch (const ParseError &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

// Flags shared by evolve and random-search, kept as text and funneled through
// apply_setting so that config files and flags behave identically.
const std::vector<std::pair<std::string, std::string>> kSweepKeys = {
    {"mode", "toy, qecc or color (default toy)"},
    {"qubits", "register size (default 4)"},
    {"runs", "independent runs, seeds seed..seed+runs-1 (default 1)"},
    {"generations", "generation cap per run (default 2000)"},
    {"population", "population size after a purge (default 100)"},
    {"max-pop", "population size that triggers a purge (default 200)"},
    {"seed", "base seed (default 0)"},
    {"w", "corrigibility weight (default 1000)"},
    {"w-prime", "CSS weight in color mode (default 1000)"},
    {"len-min", "shortest initial circuit (default n)"},
    {"len-max", "longest initial circuit (default 3n)"},
    {"target", "stop a run once its best fitness reaches this value"},
    {"adjacency", "file of allowed CNOT pairs, one 'a b' per line"},
    {"out", "output directory (required)"},
    {"normalize", "add aggregate column mean_best / value"},
    {"strict", "true: zero-syndrome errors that stabilize both codewords are harmless"},
    {"error-weight", "correct errors up to this weight (default 1)"},
    {"jobs", "runs evaluated concurrently (default 1)"},
};

struct SweepArgs {
    std::string config_file;
    std::map<std::string, std::string> values;
};

void add_sweep_options(CLI::App *cmd, SweepArgs &args) {
    cmd->add_option("--config", args.config_file, "File of 'key = value' lines; flags override it");
    for (const auto &[key, help] : kSweepKeys) {
        cmd->add_option("--" + key, args.values[key], help);
    }
}

int run_sweep(CLI::App *cmd, const SweepArgs &args, Algorithm algorithm) {
    ExperimentConfig config;
    config.algorithm = algorithm;
    if (!args.config_file.empty()) {
        apply_config_text(config, read_file(args.config_file));
    }
    for (const auto &[key, help] : kSweepKeys) {
        if (cmd->count("--" + key) > 0) {
            apply_setting(config, key, args.values.at(key));
        }
    }
    if (config.out.empty()) {
        throw std::invalid_argument("no output directory: pass --out DIR");
    }
    auto result = run_experiment(config);
    write_experiment(config, result, config.out);
    std::cout << summary_text(config, result);
    return 0;
}

void print_overhead(std::size_t n, std::size_t t) {
    std::uint64_t needed = errors_up_to(n, t) + 1;
    std::cout << "errors of weight " << t << ": " << error_count(n, t) << "\n";
    std::cout << "errors of weight <= " << t << " plus identity: " << needed << "\n";
    std::cout << "syndromes available: 2^" << (n - 1);
    if (n - 1 < 64) {
        std::cout << " = " << (std::uint64_t{1} << (n - 1));
    }
    std::cout << "\n";
    std::cout << "overhead (" << n << "," << t << "): " << to_string(overhead_status(n, t)) << "\n";
}

int analyze(const std::string &path, const std::string &mode_text, double w, double w_prime, bool strict) {
    Genome g = load_genome(path);
    Landscape mode = parse_landscape(mode_text);
    std::size_t n = g.num_qubits();
    std::cout << "qubits " << n << "\n";
    std::cout << "gates " << g.size() << "\n";
    std::cout << "depth " << depth(g) << "\n";
    if (mode == Landscape::Toy) {
        auto prof = entropy_profile(simulate(g));
        std::cout << "entropy";
        for (int s : prof.entropies) {
            std::cout << " " << s;
        }
        std::cout << "\n";
        std::cout << "mean_entropy " << format_number(prof.mean) << "\n";
        std::cout << "fitness " << format_number(toy_phenotype(g).fitness) << "\n";
        return 0;
    }
    QeccOptions opts;
    opts.w = w;
    opts.w_prime = w_prime;
    opts.color = mode == Landscape::Color;
    opts.report.strict_undetectable = strict;
    auto errors = enumerate_weight_t_errors(n, 1);
    auto ph = qecc_phenotype(g, opts, errors);
    std::cout << "C " << format_number(ph.corrigibility) << "\n";
    std::cout << "CSS " << format_number(ph.css) << "\n";
    std::cout << "best_pair " << pair_bitstring(ph.best_pair, n) << "\n";
    std::cout << "fitness " << format_number(ph.fitness) << "\n";
    CodePair pair = code_pair_for(g, ph.best_pair);
    std::cout << "xbar " << pair.xbar.str() << "\n";
    std::cout << "syndrome_generators";
    for (const auto &p : pair.common_generators) {
        std::cout << " " << p.str();
    }
    std::cout << "\n";
    auto report = build_syndrome_report(pair, errors, opts.report);
    std::cout << "undetectable " << report.undetectable << "\n";
    std::cout << "uncorrectable " << report.uncorrectable << "\n";
    std::cout << report.to_csv();
    print_overhead(n, 1);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Evolve Clifford circuits with a genetic algorithm"};
    app.require_subcommand(1);

    SweepArgs evolve_args, rs_args;
    auto *evolve = app.add_subcommand("evolve", "Seeded genetic-algorithm runs");
    add_sweep_options(evolve, evolve_args);
    auto *rs = app.add_subcommand("random-search", "Seeded random-search runs with the same budget");
    add_sweep_options(rs, rs_args);

    std::string analyze_file, analyze_mode = "qecc";
    double w = 1000.0, w_prime = 1000.0;
    bool strict = false;
    auto *an = app.add_subcommand("analyze", "Score one circuit file");
    an->add_option("file", analyze_file)->required();
    an->add_option("--mode", analyze_mode, "toy, qecc or color");
    an->add_option("--w", w);
    an->add_option("--w-prime", w_prime);
    an->add_flag("--strict", strict, "Skip zero-syndrome errors that stabilize both codewords");

    std::string dot_file, dot_name = "circuit";
    auto *dot = app.add_subcommand("export-dot", "Qubit interaction graph in DOT syntax");
    dot->add_option("file", dot_file)->required();
    dot->add_option("--name", dot_name);

    std::size_t oh_n = 0, oh_t = 0;
    auto *oh = app.add_subcommand("overhead", "Error-count overhead check");
    oh->add_option("n", oh_n)->required();
    oh->add_option("t", oh_t)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evolve) {
            return run_sweep(evolve, evolve_args, Algorithm::Genetic);
        }
        if (*rs) {
            return run_sweep(rs, rs_args, Algorithm::RandomSearch);
        }
        if (*an) {
            return analyze(analyze_file, analyze_mode, w, w_prime, strict);
        }
        if (*dot) {
            std::cout << to_dot(load_genome(dot_file), dot_name);
            return 0;
        }
        if (*oh) {
            print_overhead(oh_n, oh_t);
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
