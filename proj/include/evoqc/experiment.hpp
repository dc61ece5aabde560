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


#pragma once

// Multi-run experiment driver: seeded GA or random-search sweeps over one of
// the fitness landscapes, per-run traces, aggregation and file output.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "evoqc/csv.hpp"
#include "evoqc/evolution.hpp"
#include "evoqc/fitness_qecc.hpp"
#include "evoqc/fitness_toy.hpp"
#include "evoqc/genome.hpp"

namespace evoqc {

enum class Landscape { Toy, Qecc, Color };
enum class Algorithm { Genetic, RandomSearch };

inline const char *to_string(Landscape l) {
    switch (l) {
        case Landscape::Toy:
            return "toy";
        case Landscape::Qecc:
            return "qecc";
        case Landscape::Color:
            return "color";
    }
    return "?";
}

inline Landscape parse_landscape(std::string_view text) {
    if (text == "toy") {
        return Landscape::Toy;
    }
    if (text == "qecc") {
        return Landscape::Qecc;
    }
    if (text == "color") {
        return Landscape::Color;
    }
    throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected toy, qecc or color)");
}

inline const char *to_string(Algorithm a) {
    return a == Algorithm::Genetic ? "ga" : "random-search";
}

struct ExperimentConfig {
    Landscape mode = Landscape::Toy;
    Algorithm algorithm = Algorithm::Genetic;
    std::size_t num_qubits = 4;
    std::size_t runs = 1;
    std::size_t generations = 2000;
    std::size_t population = 100;
    std::size_t max_population = 200;
    std::uint64_t seed = 0;
    double w = 1000.0;
    double w_prime = 1000.0;
    std::size_t len_min = 0;
    std::size_t len_max = 0;
    std::optional<double> target;
    /// CNOT coupling graph file; empty for all-to-all.
    std::string adjacency;
    std::string out;
    /// Divides the aggregate curve into an extra normalized column.
    std::optional<double> normalize;
    bool strict_undetectable = false;
    std::size_t error_weight = 1;
    /// Independent runs executed concurrently.
    std::size_t jobs = 1;

    void validate() const {
        if (runs < 1) {
            throw std::invalid_argument("runs must be at least 1");
        }
        if (generations < 1) {
            throw std::invalid_argument("generations must be at least 1");
        }
        if (jobs < 1) {
            throw std::invalid_argument("jobs must be at least 1");
        }
        if (normalize && !(*normalize > 0.0 || *normalize < 0.0)) {
            throw std::invalid_argument("normalize must be nonzero");
        }
        if (mode != Landscape::Toy && (error_weight < 1 || error_weight > num_qubits)) {
            throw std::invalid_argument("error weight must lie in [1, qubits]");
        }
        if (mode != Landscape::Toy && num_qubits > kMaxQeccQubits) {
            throw std::invalid_argument("qecc modes support at most " + std::to_string(kMaxQeccQubits) + " qubits");
        }
        evolution_config(0).validate();
    }

    /// Evolution settings for run `run_index` (seed = base seed + index).
    EvolutionConfig evolution_config(std::size_t run_index) const {
        EvolutionConfig c;
        c.num_qubits = num_qubits;
        c.population_size = population;
        c.max_population = max_population;
        c.max_generations = generations;
        c.target_fitness = target;
        c.seed = seed + run_index;
        c.len_min = len_min;
        c.len_max = len_max;
        if (!adjacency.empty()) {
            std::ifstream in(adjacency);
            if (!in) {
                throw std::runtime_error("cannot read adjacency file " + adjacency);
            }
            std::stringstream buf;
            buf << in.rdbuf();
            c.cnot_edges = parse_adjacency(buf.str(), num_qubits);
            if (c.cnot_edges.empty()) {
                throw std::invalid_argument("adjacency file " + adjacency + " lists no edges");
            }
        }
        return c;
    }

    QeccOptions qecc_options() const {
        QeccOptions o;
        o.w = w;
        o.w_prime = w_prime;
        o.color = mode == Landscape::Color;
        o.report.strict_undetectable = strict_undetectable;
        return o;
    }
};

// ---------------------------------------------------------------------------
// Config files: "key = value" lines, '#' comments, keys as the CLI flags.

inline std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
            s.remove_prefix(1);
        }
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
            s.remove_suffix(1);
        }
        return s;
    };
    while (pos <= text.size()) {
        line_no++;
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, "expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty()) {
            throw ParseError(line_no, "expected 'key = value'");
        }
        out[key] = value;
    }
    return out;
}

namespace detail {

template <typename T>
T parse_number(const std::string &key, const std::string &value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
    }
    return out;
}

inline bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
}

}  // namespace detail

/// Applies one setting by its CLI flag name (without dashes).
inline void apply_setting(ExperimentConfig &c, const std::string &key, const std::string &value) {
    using detail::parse_number;
    if (key == "mode") {
        c.mode = parse_landscape(value);
    } else if (key == "qubits") {
        c.num_qubits = parse_number<std::size_t>(key, value);
    } else if (key == "runs") {
        c.runs = parse_number<std::size_t>(key, value);
    } else if (key == "generations") {
        c.generations = parse_number<std::size_t>(key, value);
    } else if (key == "population") {
        c.population = parse_number<std::size_t>(key, value);
    } else if (key == "max-pop") {
        c.max_population = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "w") {
        c.w = parse_number<double>(key, value);
    } else if (key == "w-prime") {
        c.w_prime = parse_number<double>(key, value);
    } else if (key == "len-min") {
        c.len_min = parse_number<std::size_t>(key, value);
    } else if (key == "len-max") {
        c.len_max = parse_number<std::size_t>(key, value);
    } else if (key == "target") {
        c.target = parse_number<double>(key, value);
    } else if (key == "adjacency") {
        c.adjacency = value;
    } else if (key == "out") {
        c.out = value;
    } else if (key == "normalize") {
        c.normalize = parse_number<double>(key, value);
    } else if (key == "strict") {
        c.strict_undetectable = detail::parse_bool(key, value);
    } else if (key == "error-weight") {
        c.error_weight = parse_number<std::size_t>(key, value);
    } else if (key == "jobs") {
        c.jobs = parse_number<std::size_t>(key, value);
    } else {
        throw std::invalid_argument("unknown setting '" + key + "'");
    }
}

inline void apply_config_text(ExperimentConfig &c, std::string_view text) {
    for (const auto &[key, value] : parse_key_values(text)) {
        apply_setting(c, key, value);
    }
}

// ---------------------------------------------------------------------------
// Running.

template <FitnessEvaluator E>
RunTrace run_one(const ExperimentConfig &config, const E &evaluator, std::size_t run_index) {
    EvolutionConfig ec = config.evolution_config(run_index);
    return config.algorithm == Algorithm::Genetic ? run_ga(ec, evaluator) : run_random_search(ec, evaluator);
}

inline RunTrace run_single(const ExperimentConfig &config, std::size_t run_index) {
    if (config.mode == Landscape::Toy) {
        return run_one(config, ToyEvaluator{}, run_index);
    }
    QeccEvaluator eval(config.num_qubits, config.qecc_options(), config.error_weight);
    return run_one(config, eval, run_index);
}

struct SuccessRate {
    std::size_t max_depth = 0;
    std::size_t hits = 0;
    double rate = 0.0;
};

struct AggregateStats {
    /// Mean over runs of the best fitness after each generation. A run that
    /// stopped early at its target carries its final value forward.
    std::vector<double> mean_best;
    /// Runs whose final best has C = 1 (and CSS = 1 in color mode) and
    /// depth at most 6, 5, 4. Empty for the toy landscape.
    std::vector<SuccessRate> success;
    std::size_t runs = 0;
    double final_mean_best = 0.0;
};

/// True when the final best circuit of a qecc/color run is a full code:
/// C = 1, plus CSS = 1 in color mode.
inline bool is_full_code(const ExperimentConfig &config, const Individual &best) {
    if (best.phenotype.size() < 2) {
        return false;
    }
    bool ok = best.phenotype[0] == 1.0;
    if (config.mode == Landscape::Color) {
        ok = ok && best.phenotype[1] == 1.0;
    }
    return ok;
}

inline AggregateStats aggregate(const ExperimentConfig &config, const std::vector<RunTrace> &traces) {
    AggregateStats stats;
    stats.runs = traces.size();
    std::size_t length = 0;
    for (const auto &t : traces) {
        length = std::max(length, t.rows.size());
    }
    stats.mean_best.assign(length, 0.0);
    for (const auto &t : traces) {
        for (std::size_t g = 0; g < length; g++) {
            const TraceRow &row = t.rows[std::min(g, t.rows.size() - 1)];
            stats.mean_best[g] += row.best_fitness;
        }
    }
    for (double &v : stats.mean_best) {
        v /= static_cast<double>(traces.size());
    }
    stats.final_mean_best = stats.mean_best.empty() ? 0.0 : stats.mean_best.back();
    if (config.mode != Landscape::Toy) {
        for (std::size_t d : {6, 5, 4}) {
            SuccessRate s;
            s.max_depth = d;
            for (const auto &t : traces) {
                s.hits += is_full_code(config, t.best) && t.best.depth <= d;
            }
            s.rate = static_cast<double>(s.hits) / static_cast<double>(traces.size());
            stats.success.push_back(s);
        }
    }
    return stats;
}

struct ExperimentResult {
    std::vector<RunTrace> traces;
    AggregateStats stats;
};

/// Runs every seeded run (concurrently when jobs > 1; results do not depend
/// on scheduling) and aggregates them.
inline ExperimentResult run_experiment(const ExperimentConfig &config) {
    config.validate();
    ExperimentResult result;
    result.traces.resize(config.runs);
    std::size_t workers = std::min(config.jobs, config.runs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < config.runs; i++) {
            result.traces[i] = run_single(config, i);
        }
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; w++) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < config.runs; i += workers) {
                        result.traces[i] = run_single(config, i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    result.stats = aggregate(config, result.traces);
    return result;
}

// ---------------------------------------------------------------------------
// Output.

inline std::string aggregate_csv(const ExperimentConfig &config, const AggregateStats &stats) {
    std::ostringstream out;
    out << "generation,mean_best_fitness";
    if (config.normalize) {
        out << ",normalized";
    }
    out << "\n";
    for (std::size_t g = 0; g < stats.mean_best.size(); g++) {
        out << g + 1 << "," << format_number(stats.mean_best[g]);
        if (config.normalize) {
            out << "," << format_number(stats.mean_best[g] / *config.normalize);
        }
        out << "\n";
    }
    return out.str();
}

inline std::string summary_text(const ExperimentConfig &config, const ExperimentResult &result) {
    std::ostringstream out;
    out << "mode " << to_string(config.mode) << "\n";
    out << "algorithm " << to_string(config.algorithm) << "\n";
    out << "qubits " << config.num_qubits << "\n";
    out << "runs " << config.runs << "\n";
    out << "generations " << config.generations << "\n";
    out << "seeds " << config.seed << ".." << config.seed + config.runs - 1 << "\n";
    out << "final_mean_best_fitness " << format_number(result.stats.final_mean_best) << "\n";
    if (config.normalize) {
        out << "final_mean_best_normalized " << format_number(result.stats.final_mean_best / *config.normalize)
            << "\n";
    }
    if (config.mode == Landscape::Toy && config.num_qubits % 2 == 0) {
        double optimum = toy_fitness_max(config.num_qubits);
        std::size_t at_optimum = 0;
        for (const auto &t : result.traces) {
            at_optimum += t.best.fitness >= optimum;
        }
        out << "optimum " << format_number(optimum) << "\n";
        out << "runs_at_optimum " << at_optimum << "/" << config.runs << "\n";
    }
    for (const auto &s : result.stats.success) {
        out << "success C=1" << (config.mode == Landscape::Color ? " CSS=1" : "") << " depth<=" << s.max_depth << " "
            << s.hits << "/" << config.runs << " " << format_number(s.rate) << "\n";
    }
    for (std::size_t i = 0; i < result.traces.size(); i++) {
        const auto &best = result.traces[i].best;
        out << "run " << i << " seed " << config.seed + i << " best " << format_number(best.fitness) << " depth "
            << best.depth << " generations " << result.traces[i].rows.size() << "\n";
    }
    return out.str();
}

namespace detail {
inline void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

inline std::string run_stem(std::size_t i) {
    std::string digits = std::to_string(i);
    return std::string(digits.size() < 3 ? 3 - digits.size() : 0, '0') + digits;
}
}  // namespace detail

/// Writes run_NNN.csv, best_NNN.circ, aggregate.csv and summary.txt.
inline void write_experiment(const ExperimentConfig &config, const ExperimentResult &result,
                             const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < result.traces.size(); i++) {
        std::string stem = detail::run_stem(i);
        detail::write_file(dir / ("run_" + stem + ".csv"), result.traces[i].to_csv());
        detail::write_file(dir / ("best_" + stem + ".circ"), serialize(result.traces[i].best.genome));
    }
    detail::write_file(dir / "aggregate.csv", aggregate_csv(config, result.stats));
    detail::write_file(dir / "summary.txt", summary_text(config, result));
}

}  // namespace evoqc
