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

#include "evoqc/genome.hpp"
#include "evoqc/gf2.hpp"
#include "evoqc/pauli.hpp"

namespace evoqc {

/// Replaces p by G p G^dagger for a single gate G (Aaronson-Gottesman rules).
inline void conjugate_in_place(PauliOperator &p, const Gate &gate) {
    std::size_t a = gate.q1;
    switch (gate.kind) {
        case GateKind::H: {
            bool x = p.x(a), z = p.z(a);
            if (x && z) {
                p.negate();
            }
            p.set(a, z, x);
            break;
        }
        case GateKind::P: {
            bool x = p.x(a), z = p.z(a);
            if (x && z) {
                p.negate();
            }
            p.set(a, x, z ^ x);
            break;
        }
        case GateKind::CNOT: {
            std::size_t b = gate.q2;
            bool xa = p.x(a), za = p.z(a), xb = p.x(b), zb = p.z(b);
            if (xa && zb && !(xb ^ za)) {
                p.negate();
            }
            p.set(b, xb ^ xa, zb);
            p.set(a, xa, za ^ zb);
            break;
        }
    }
}

/// U p U^dagger where U is the circuit encoded by `genome`.
inline PauliOperator conjugate_pauli(const Genome &genome, PauliOperator p) {
    if (p.num_qubits() != genome.num_qubits()) {
        throw std::invalid_argument("conjugate_pauli: operator has " + std::to_string(p.num_qubits()) +
                                    " qubits, circuit has " + std::to_string(genome.num_qubits()));
    }
    for (const auto &gate : genome.gates()) {
        conjugate_in_place(p, gate);
    }
    return p;
}

/// Stabilizer state on n qubits: n commuting, independent, signed stabilizer
/// generators plus paired destabilizers (row i anticommutes only with
/// stabilizer i).
class StabilizerTableau {
   public:
    StabilizerTableau() = default;

    /// |0...0>: stabilizers +Z_q, destabilizers +X_q.
    explicit StabilizerTableau(std::size_t num_qubits) : num_qubits_(num_qubits) {
        stabilizers_.reserve(num_qubits);
        destabilizers_.reserve(num_qubits);
        for (std::size_t q = 0; q < num_qubits; q++) {
            stabilizers_.push_back(PauliOperator::single(num_qubits, q, 'Z'));
            destabilizers_.push_back(PauliOperator::single(num_qubits, q, 'X'));
        }
    }

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<PauliOperator> &stabilizers() const {
        return stabilizers_;
    }
    const std::vector<PauliOperator> &destabilizers() const {
        return destabilizers_;
    }

    void apply(const Gate &gate) {
        validate_gate(gate, num_qubits_);
        for (auto &row : stabilizers_) {
            conjugate_in_place(row, gate);
        }
        for (auto &row : destabilizers_) {
            conjugate_in_place(row, gate);
        }
    }

   private:
    std::size_t num_qubits_ = 0;
    std::vector<PauliOperator> stabilizers_;
    std::vector<PauliOperator> destabilizers_;
};

/// Tableau of U|0...0> for the circuit U encoded by `genome`.
inline StabilizerTableau simulate(const Genome &genome, std::size_t num_qubits) {
    if (genome.num_qubits() > num_qubits) {
        throw std::out_of_range("simulate: genome declares more qubits than the register");
    }
    StabilizerTableau t(num_qubits);
    for (const auto &gate : genome.gates()) {
        t.apply(gate);
    }
    return t;
}

inline StabilizerTableau simulate(const Genome &genome) {
    return simulate(genome, genome.num_qubits());
}

/// Bipartite entanglement profile along a 1D chain.
///
/// cut(x), x in [1, n], is the entropy in bits of the qubits {x-1, ..., n-1}
/// (0-based), i.e. everything left of position x traced out. cut(1) is the
/// whole pure state and therefore 0.
struct EntropyProfile {
    std::vector<int> entropies;
    double mean = 0.0;

    int cut(std::size_t x) const {
        return entropies.at(x - 1);
    }
};

/// Entropy of the region [first, n) of a stabilizer state: the GF(2) rank of
/// the generators restricted to the region minus the region size.
inline int region_entropy(const StabilizerTableau &t, std::size_t first) {
    std::size_t n = t.num_qubits();
    std::size_t width = n - first;
    BinaryMatrix m(n, 2 * width);
    const auto &rows = t.stabilizers();
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t k = 0; k < width; k++) {
            m.set(i, k, rows[i].x(first + k));
            m.set(i, width + k, rows[i].z(first + k));
        }
    }
    return static_cast<int>(gf2_rank(std::move(m))) - static_cast<int>(width);
}

inline EntropyProfile entropy_profile(const StabilizerTableau &t) {
    EntropyProfile profile;
    std::size_t n = t.num_qubits();
    profile.entropies.resize(n);
    long total = 0;
    for (std::size_t x = 1; x <= n; x++) {
        int s = region_entropy(t, x - 1);
        profile.entropies[x - 1] = s;
        total += s;
    }
    profile.mean = n == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(n);
    return profile;
}

}  // namespace evoqc
