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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "evoqc/evolution.hpp"
#include "evoqc/genome.hpp"
#include "evoqc/tableau.hpp"

namespace evoqc {

/// Entanglement-per-depth landscape: fitness = <S> / D, with <S> the mean
/// bipartite entropy over all chain cuts and D the circuit depth.
struct ToyPhenotype {
    double mean_entropy = 0.0;
    std::size_t depth = 0;
    double fitness = 0.0;
};

inline ToyPhenotype toy_phenotype(const Genome &genome) {
    ToyPhenotype ph;
    ph.depth = depth(genome);
    if (ph.depth == 0) {
        return ph;
    }
    ph.mean_entropy = entropy_profile(simulate(genome)).mean;
    ph.fitness = ph.mean_entropy / static_cast<double>(ph.depth);
    return ph;
}

/// Best attainable toy fitness: <S> <= n/4 at depth 2, hence n/8. Even n only.
inline double toy_fitness_max(std::size_t n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("toy_fitness_max is defined for even n >= 2, got " + std::to_string(n));
    }
    return static_cast<double>(n) / 8.0;
}

class ToyEvaluator {
   public:
    Evaluation evaluate(const Genome &genome) const {
        ToyPhenotype ph = toy_phenotype(genome);
        return {ph.fitness, {ph.mean_entropy, static_cast<double>(ph.depth)}};
    }
    std::vector<std::string> phenotype_columns() const {
        return {"mean_entropy", "depth"};
    }
};

/// Depth-2 optimum: H on qubits 0..n/2-1, then CNOT k -> n-1-k. Pairs qubit k
/// with its mirror image so the cut entropy ramps 0, 1, ..., n/2, ..., 1.
inline Genome nested_bell_circuit(std::size_t n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("nested_bell_circuit needs an even qubit count");
    }
    std::vector<Gate> gates;
    for (std::size_t k = 0; k < n / 2; k++) {
        gates.push_back(Gate::h(static_cast<Qubit>(k)));
    }
    for (std::size_t k = 0; k < n / 2; k++) {
        gates.push_back(Gate::cnot(static_cast<Qubit>(k), static_cast<Qubit>(n - 1 - k)));
    }
    return Genome(n, std::move(gates));
}

}  // namespace evoqc
