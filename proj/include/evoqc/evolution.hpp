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

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evoqc/csv.hpp"
#include "evoqc/genome.hpp"
#include "evoqc/rng.hpp"

namespace evoqc {

/// Output of a fitness evaluator: the scalar used for selection plus the
/// evaluator-specific phenotype values (one per declared column).
struct Evaluation {
    double fitness = 0.0;
    std::vector<double> phenotype;
};

/// A fitness landscape. evaluate() must be deterministic and must not draw
/// randomness; phenotype_columns() names the entries of Evaluation::phenotype.
template <typename E>
concept FitnessEvaluator = requires(const E &e, const Genome &g) {
    { e.evaluate(g) } -> std::convertible_to<Evaluation>;
    { e.phenotype_columns() } -> std::convertible_to<std::vector<std::string>>;
};

struct Individual {
    Genome genome;
    double fitness = 0.0;
    std::vector<double> phenotype;
    std::size_t depth = 0;
};

class EvaluationError : public std::runtime_error {
   public:
    EvaluationError(const std::string &what, std::string genome_text)
        : std::runtime_error(what), genome_text_(std::move(genome_text)) {
    }
    /// The offending circuit in the text circuit format.
    const std::string &genome_text() const {
        return genome_text_;
    }

   private:
    std::string genome_text_;
};

template <FitnessEvaluator E>
Individual evaluate_individual(const E &evaluator, Genome genome) {
    Evaluation ev;
    try {
        ev = evaluator.evaluate(genome);
    } catch (const std::exception &e) {
        throw EvaluationError(std::string("fitness evaluation failed: ") + e.what(), serialize(genome));
    }
    std::size_t d = depth(genome);
    return Individual{std::move(genome), ev.fitness, std::move(ev.phenotype), d};
}

struct EvolutionConfig {
    std::size_t num_qubits = 0;
    std::size_t population_size = 100;
    std::size_t max_population = 200;
    std::size_t max_generations = 2000;
    std::optional<double> target_fitness;
    std::uint64_t seed = 0;
    /// Initial genome length range; 0 selects the defaults n and 3n.
    std::size_t len_min = 0;
    std::size_t len_max = 0;
    /// Probability that each child is mutated after crossover.
    double mutation_probability = 1.0;
    /// Optional CNOT coupling graph; empty means all-to-all.
    std::vector<std::pair<Qubit, Qubit>> cnot_edges;
    /// Evaluate the two children of a step concurrently.
    bool parallel_evaluation = false;

    std::size_t initial_len_min() const {
        return len_min == 0 ? num_qubits : len_min;
    }
    std::size_t initial_len_max() const {
        return len_max == 0 ? std::max(3 * num_qubits, initial_len_min()) : len_max;
    }
    GateSpace gate_space() const {
        return GateSpace{num_qubits, cnot_edges};
    }

    void validate() const {
        if (num_qubits < 2) {
            throw std::invalid_argument("evolution needs at least 2 qubits");
        }
        if (population_size < 2) {
            throw std::invalid_argument("population_size must be at least 2");
        }
        if (max_population < population_size) {
            throw std::invalid_argument("max_population must be >= population_size");
        }
        if (initial_len_min() < 1 || initial_len_min() > initial_len_max()) {
            throw std::invalid_argument("initial length range must satisfy 1 <= len_min <= len_max");
        }
        if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
            throw std::invalid_argument("mutation_probability must lie in [0, 1]");
        }
    }
};

// ---------------------------------------------------------------------------
// Selection.

/// Roulette-wheel weights for a list of fitness values.
///
/// All values equal: uniform. All strictly positive: the raw values.
/// Otherwise shifted to f - f_min + epsilon, with epsilon defaulting to
/// 1e-9 * max(1, f_max - f_min) so that negative fitnesses stay selectable.
inline std::vector<double> roulette_weights(std::span<const double> fitness,
                                            std::optional<double> epsilon = std::nullopt) {
    if (fitness.empty()) {
        throw std::invalid_argument("roulette selection over an empty population");
    }
    auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
    double f_min = *lo, f_max = *hi;
    std::vector<double> weights(fitness.size(), 1.0);
    if (f_max == f_min) {
        return weights;
    }
    if (f_min > 0.0) {
        weights.assign(fitness.begin(), fitness.end());
        return weights;
    }
    double eps = epsilon.value_or(1e-9 * std::max(1.0, f_max - f_min));
    for (std::size_t i = 0; i < fitness.size(); i++) {
        weights[i] = fitness[i] - f_min + eps;
    }
    return weights;
}

inline std::vector<double> roulette_probabilities(std::span<const double> fitness,
                                                  std::optional<double> epsilon = std::nullopt) {
    auto weights = roulette_weights(fitness, epsilon);
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    for (double &w : weights) {
        w /= total;
    }
    return weights;
}

/// One spin of the wheel over precomputed weights.
inline std::size_t spin_roulette(std::span<const double> weights, RngStream &rng) {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    double u = rng.uniform01() * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); i++) {
        cumulative += weights[i];
        if (u < cumulative) {
            return i;
        }
    }
    return weights.size() - 1;
}

/// Two independent roulette draws (they may coincide). Returns indices.
inline std::pair<std::size_t, std::size_t> roulette_select(std::span<const Individual> population, RngStream &rng) {
    std::vector<double> fitness;
    fitness.reserve(population.size());
    for (const auto &ind : population) {
        fitness.push_back(ind.fitness);
    }
    auto weights = roulette_weights(fitness);
    std::size_t first = spin_roulette(weights, rng);
    std::size_t second = spin_roulette(weights, rng);
    return {first, second};
}

/// Keeps the `keep` fittest individuals; ties keep their current order.
inline void purge(std::vector<Individual> &population, std::size_t keep) {
    if (population.size() <= keep) {
        return;
    }
    std::stable_sort(population.begin(), population.end(),
                     [](const Individual &a, const Individual &b) { return a.fitness > b.fitness; });
    population.resize(keep);
}

/// Index of the fittest individual (first one on ties).
inline std::size_t best_index(std::span<const Individual> population) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); i++) {
        if (population[i].fitness > population[best].fitness) {
            best = i;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Traces.

struct TraceRow {
    std::size_t generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    std::size_t best_depth = 0;
    std::vector<double> best_phenotype;
};

struct RunTrace {
    std::vector<std::string> phenotype_columns;
    std::vector<TraceRow> rows;
    Individual best;
    std::size_t evaluations = 0;

    std::string to_csv() const {
        std::ostringstream out;
        out << "generation,best_fitness,mean_fitness,best_depth";
        for (const auto &c : phenotype_columns) {
            out << "," << c;
        }
        out << "\n";
        for (const auto &row : rows) {
            out << row.generation << "," << format_number(row.best_fitness) << ","
                << format_number(row.mean_fitness) << "," << row.best_depth;
            for (double v : row.best_phenotype) {
                out << "," << format_number(v);
            }
            out << "\n";
        }
        return out.str();
    }
};

// ---------------------------------------------------------------------------
// Genetic algorithm.

struct GaState {
    std::vector<Individual> population;
    std::size_t generation = 0;
    std::size_t evaluations = 0;
};

template <FitnessEvaluator E>
GaState initialize_population(const EvolutionConfig &config, const E &evaluator, RngStream &rng) {
    config.validate();
    GateSpace space = config.gate_space();
    GaState state;
    state.population.reserve(config.max_population + 2);
    for (std::size_t i = 0; i < config.population_size; i++) {
        Genome g = random_genome(space, config.initial_len_min(), config.initial_len_max(), rng);
        state.population.push_back(evaluate_individual(evaluator, std::move(g)));
        state.evaluations++;
    }
    return state;
}

/// One breeding cycle: roulette-select two parents, one-point crossover,
/// mutate each child, evaluate, append, and purge back to population_size
/// once the population exceeds max_population.
///
/// All random draws happen on this thread in a fixed order before any
/// evaluation, so the parallel mode yields the same trajectory.
template <FitnessEvaluator E>
void ga_step(GaState &state, const EvolutionConfig &config, const E &evaluator, RngStream &rng) {
    if (state.population.empty()) {
        throw std::logic_error("ga_step on an uninitialized population");
    }
    GateSpace space = config.gate_space();
    auto [ia, ib] = roulette_select(state.population, rng);
    auto [child1, child2] = crossover(state.population[ia].genome, state.population[ib].genome, rng);
    auto maybe_mutate = [&](Genome g) {
        if (config.mutation_probability >= 1.0 || rng.uniform01() < config.mutation_probability) {
            return mutate(g, rng, space);
        }
        return g;
    };
    child1 = maybe_mutate(std::move(child1));
    child2 = maybe_mutate(std::move(child2));

    Individual a, b;
    if (config.parallel_evaluation) {
        auto pending = std::async(std::launch::async, [&] { return evaluate_individual(evaluator, child2); });
        a = evaluate_individual(evaluator, std::move(child1));
        b = pending.get();
    } else {
        a = evaluate_individual(evaluator, std::move(child1));
        b = evaluate_individual(evaluator, std::move(child2));
    }
    state.population.push_back(std::move(a));
    state.population.push_back(std::move(b));
    state.evaluations += 2;
    state.generation++;
    if (state.population.size() > config.max_population) {
        purge(state.population, config.population_size);
    }
}

inline TraceRow summarize_population(std::size_t generation, std::span<const Individual> population) {
    const Individual &best = population[best_index(population)];
    double total = 0.0;
    for (const auto &ind : population) {
        total += ind.fitness;
    }
    return TraceRow{generation, best.fitness, total / static_cast<double>(population.size()), best.depth,
                    best.phenotype};
}

namespace detail {
// A target of -infinity means "no target", like an empty optional.
inline bool reached_target(const EvolutionConfig &config, double best) {
    return config.target_fitness && *config.target_fitness > -std::numeric_limits<double>::infinity() &&
           best >= *config.target_fitness;
}
}  // namespace detail

/// Runs the GA until max_generations steps or until the best fitness reaches
/// target_fitness (checked after every step). One trace row per generation.
template <FitnessEvaluator E>
RunTrace run_ga(const EvolutionConfig &config, const E &evaluator) {
    RngStream rng(config.seed);
    GaState state = initialize_population(config, evaluator, rng);
    RunTrace trace;
    trace.phenotype_columns = evaluator.phenotype_columns();
    trace.rows.reserve(config.max_generations);
    for (std::size_t gen = 1; gen <= config.max_generations; gen++) {
        ga_step(state, config, evaluator, rng);
        trace.rows.push_back(summarize_population(gen, state.population));
        if (detail::reached_target(config, trace.rows.back().best_fitness)) {
            break;
        }
    }
    trace.best = state.population[best_index(state.population)];
    trace.evaluations = state.evaluations;
    return trace;
}

// ---------------------------------------------------------------------------
// Random search baseline.

/// Draws two fresh random circuits per generation (the GA's per-generation
/// evaluation count) and keeps the best circuit ever seen.
template <FitnessEvaluator E>
RunTrace run_random_search(const EvolutionConfig &config, const E &evaluator) {
    config.validate();
    RngStream rng(config.seed);
    GateSpace space = config.gate_space();
    RunTrace trace;
    trace.phenotype_columns = evaluator.phenotype_columns();
    trace.rows.reserve(config.max_generations);
    std::optional<Individual> best;
    for (std::size_t gen = 1; gen <= config.max_generations; gen++) {
        Genome g1 = random_genome(space, config.initial_len_min(), config.initial_len_max(), rng);
        Genome g2 = random_genome(space, config.initial_len_min(), config.initial_len_max(), rng);
        Individual a, b;
        if (config.parallel_evaluation) {
            auto pending = std::async(std::launch::async, [&] { return evaluate_individual(evaluator, g2); });
            a = evaluate_individual(evaluator, std::move(g1));
            b = pending.get();
        } else {
            a = evaluate_individual(evaluator, std::move(g1));
            b = evaluate_individual(evaluator, std::move(g2));
        }
        trace.evaluations += 2;
        double mean = (a.fitness + b.fitness) / 2.0;
        for (Individual *candidate : {&a, &b}) {
            if (!best || candidate->fitness > best->fitness) {
                best = std::move(*candidate);
            }
        }
        trace.rows.push_back(TraceRow{gen, best->fitness, mean, best->depth, best->phenotype});
        if (detail::reached_target(config, best->fitness)) {
            break;
        }
    }
    if (best) {
        trace.best = std::move(*best);
    }
    return trace;
}

}  // namespace evoqc
