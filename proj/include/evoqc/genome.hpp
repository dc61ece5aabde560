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
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evoqc/rng.hpp"

namespace evoqc {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t { H, P, CNOT };

inline const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::P:
            return "P";
        case GateKind::CNOT:
            return "CNOT";
    }
    return "?";
}

/// One row of the genotype. For CNOT, q1 is the control and q2 the target;
/// single-qubit gates ignore q2 (kept at 0).
struct Gate {
    GateKind kind = GateKind::H;
    Qubit q1 = 0;
    Qubit q2 = 0;

    static Gate h(Qubit q) {
        return {GateKind::H, q, 0};
    }
    static Gate p(Qubit q) {
        return {GateKind::P, q, 0};
    }
    static Gate cnot(Qubit control, Qubit target) {
        return {GateKind::CNOT, control, target};
    }

    bool is_two_qubit() const {
        return kind == GateKind::CNOT;
    }

    bool operator==(const Gate &) const = default;
};

inline void validate_gate(const Gate &g, std::size_t num_qubits) {
    if (g.q1 >= num_qubits || (g.is_two_qubit() && g.q2 >= num_qubits)) {
        throw std::out_of_range(
            std::string(gate_name(g.kind)) + " acts on a qubit outside [0, " + std::to_string(num_qubits) + ")");
    }
    if (g.is_two_qubit() && g.q1 == g.q2) {
        throw std::invalid_argument("CNOT control and target coincide on qubit " + std::to_string(g.q1));
    }
}

/// A circuit as an ordered gate list (row order is application order).
class Genome {
   public:
    Genome() = default;
    explicit Genome(std::size_t num_qubits) : num_qubits_(num_qubits) {
    }
    Genome(std::size_t num_qubits, std::vector<Gate> gates) : num_qubits_(num_qubits), gates_(std::move(gates)) {
        for (const auto &g : gates_) {
            validate_gate(g, num_qubits_);
        }
    }

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    std::size_t size() const {
        return gates_.size();
    }
    bool empty() const {
        return gates_.empty();
    }
    const Gate &operator[](std::size_t i) const {
        return gates_[i];
    }

    bool operator==(const Genome &) const = default;

   private:
    std::size_t num_qubits_ = 0;
    std::vector<Gate> gates_;
};

/// Number of parallel layers under greedy (as-soon-as-possible) scheduling.
inline std::size_t depth(const Genome &g) {
    std::vector<std::size_t> layer(g.num_qubits(), 0);
    std::size_t deepest = 0;
    for (const auto &gate : g.gates()) {
        std::size_t at = layer[gate.q1];
        if (gate.is_two_qubit()) {
            at = std::max(at, layer[gate.q2]);
        }
        at++;
        layer[gate.q1] = at;
        if (gate.is_two_qubit()) {
            layer[gate.q2] = at;
        }
        deepest = std::max(deepest, at);
    }
    return deepest;
}

/// Where new gates may land. An empty edge list allows CNOT on every ordered
/// pair of distinct qubits; otherwise CNOTs are restricted to the listed
/// undirected edges (either orientation).
struct GateSpace {
    std::size_t num_qubits = 0;
    std::vector<std::pair<Qubit, Qubit>> cnot_edges;

    bool cnot_allowed() const {
        return cnot_edges.empty() ? num_qubits >= 2 : true;
    }

    Gate random_gate(GateKind kind, RngStream &rng) const {
        if (num_qubits == 0) {
            throw std::invalid_argument("cannot draw a gate on zero qubits");
        }
        if (kind != GateKind::CNOT) {
            return {kind, static_cast<Qubit>(rng.uniform_below(num_qubits)), 0};
        }
        if (!cnot_allowed()) {
            throw std::invalid_argument("CNOT requires at least two qubits");
        }
        if (cnot_edges.empty()) {
            auto control = static_cast<Qubit>(rng.uniform_below(num_qubits));
            auto target = static_cast<Qubit>(rng.uniform_below(num_qubits - 1));
            if (target >= control) {
                target++;
            }
            return Gate::cnot(control, target);
        }
        const auto &[a, b] = cnot_edges[rng.uniform_below(cnot_edges.size())];
        return rng.uniform_below(2) == 0 ? Gate::cnot(a, b) : Gate::cnot(b, a);
    }

    /// Gate kind uniform over {H, P, CNOT}, then fresh qubit indices.
    Gate random_gate(RngStream &rng) const {
        static constexpr GateKind kKinds[3] = {GateKind::H, GateKind::P, GateKind::CNOT};
        return random_gate(kKinds[rng.uniform_below(3)], rng);
    }
};

// ---------------------------------------------------------------------------
// Genetic operators.

/// One-point crossover with explicit split points.
inline std::pair<Genome, Genome> crossover_at(const Genome &a, const Genome &b, std::size_t split_a,
                                              std::size_t split_b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("crossover between genomes of different qubit counts");
    }
    if (split_a > a.size() || split_b > b.size()) {
        throw std::out_of_range("crossover split point beyond genome length");
    }
    const auto &ga = a.gates();
    const auto &gb = b.gates();
    std::vector<Gate> child1(ga.begin(), ga.begin() + static_cast<std::ptrdiff_t>(split_a));
    child1.insert(child1.end(), gb.begin() + static_cast<std::ptrdiff_t>(split_b), gb.end());
    std::vector<Gate> child2(gb.begin(), gb.begin() + static_cast<std::ptrdiff_t>(split_b));
    child2.insert(child2.end(), ga.begin() + static_cast<std::ptrdiff_t>(split_a), ga.end());
    return {Genome(a.num_qubits(), std::move(child1)), Genome(a.num_qubits(), std::move(child2))};
}

/// One-point crossover; split points uniform over {0..len(a)} then {0..len(b)}.
inline std::pair<Genome, Genome> crossover(const Genome &a, const Genome &b, RngStream &rng) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("crossover between genomes of different qubit counts");
    }
    std::size_t split_a = rng.uniform_below(a.size() + 1);
    std::size_t split_b = rng.uniform_below(b.size() + 1);
    return crossover_at(a, b, split_a, split_b);
}

/// Overwrites row `row`; std::nullopt stands for the identity and deletes it.
inline Genome mutate_replace(const Genome &g, std::size_t row, std::optional<Gate> replacement) {
    std::vector<Gate> gates = g.gates();
    if (row >= gates.size()) {
        throw std::out_of_range("mutation row beyond genome length");
    }
    if (replacement) {
        gates[row] = *replacement;
    } else {
        gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(row));
    }
    return Genome(g.num_qubits(), std::move(gates));
}

inline Genome mutate_insert(const Genome &g, std::size_t position, const Gate &gate) {
    std::vector<Gate> gates = g.gates();
    if (position > gates.size()) {
        throw std::out_of_range("insertion point beyond genome length");
    }
    gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(position), gate);
    return Genome(g.num_qubits(), std::move(gates));
}

/// Either modifies a uniformly chosen row (new kind uniform over
/// {I, H, P, CNOT}, I deleting the row) or inserts a gate uniform over
/// {H, P, CNOT} at a uniform position, each with probability 1/2.
/// An empty genome always takes the insertion branch.
inline Genome mutate(const Genome &g, RngStream &rng, const GateSpace &space) {
    bool modify = rng.uniform_below(2) == 0;
    if (modify && !g.empty()) {
        std::size_t row = rng.uniform_below(g.size());
        std::uint64_t choice = rng.uniform_below(4);
        if (choice == 0) {
            return mutate_replace(g, row, std::nullopt);
        }
        static constexpr GateKind kKinds[3] = {GateKind::H, GateKind::P, GateKind::CNOT};
        return mutate_replace(g, row, space.random_gate(kKinds[choice - 1], rng));
    }
    std::size_t position = rng.uniform_below(g.size() + 1);
    return mutate_insert(g, position, space.random_gate(rng));
}

inline Genome mutate(const Genome &g, RngStream &rng) {
    return mutate(g, rng, GateSpace{g.num_qubits(), {}});
}

/// Length uniform in [len_min, len_max], gates drawn by GateSpace::random_gate.
inline Genome random_genome(const GateSpace &space, std::size_t len_min, std::size_t len_max, RngStream &rng) {
    if (len_min < 1 || len_min > len_max) {
        throw std::invalid_argument("random_genome requires 1 <= len_min <= len_max");
    }
    if (!space.cnot_allowed()) {
        throw std::invalid_argument("random_genome: the gate set includes CNOT, which needs two or more qubits");
    }
    std::size_t length = rng.uniform_between(len_min, len_max);
    std::vector<Gate> gates;
    gates.reserve(length);
    for (std::size_t i = 0; i < length; i++) {
        gates.push_back(space.random_gate(rng));
    }
    return Genome(space.num_qubits, std::move(gates));
}

inline Genome random_genome(std::size_t num_qubits, std::size_t len_min, std::size_t len_max, RngStream &rng) {
    return random_genome(GateSpace{num_qubits, {}}, len_min, len_max, rng);
}

/// Relabels registers: qubit q becomes perm[q].
inline Genome permute_qubits(const Genome &g, const std::vector<Qubit> &perm) {
    if (perm.size() != g.num_qubits()) {
        throw std::invalid_argument("permutation size does not match qubit count");
    }
    std::vector<Gate> gates;
    gates.reserve(g.size());
    for (const auto &gate : g.gates()) {
        Gate moved = gate;
        moved.q1 = perm[gate.q1];
        if (gate.is_two_qubit()) {
            moved.q2 = perm[gate.q2];
        }
        gates.push_back(moved);
    }
    return Genome(g.num_qubits(), std::move(gates));
}

// ---------------------------------------------------------------------------
// Topology export.

/// Interaction graph in DOT syntax: a node per qubit, an undirected edge per
/// distinct pair of qubits joined by at least one CNOT.
inline std::string to_dot(const Genome &g, std::string_view name = "circuit") {
    std::set<std::pair<Qubit, Qubit>> edges;
    for (const auto &gate : g.gates()) {
        if (gate.is_two_qubit()) {
            edges.emplace(std::min(gate.q1, gate.q2), std::max(gate.q1, gate.q2));
        }
    }
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (std::size_t q = 0; q < g.num_qubits(); q++) {
        out << "  q" << q << ";\n";
    }
    for (const auto &[a, b] : edges) {
        out << "  q" << a << " -- q" << b << ";\n";
    }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Text format:
//
//   # comment
//   qubits 3
//   H 0
//   P 1
//   CNOT 0 2
//
// Indices are 0-based. Everything after '#' on a line is ignored.

class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, const std::string &reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {
    }
    std::size_t line() const {
        return line_;
    }

   private:
    std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            i++;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            i++;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

inline std::uint64_t parse_index(std::string_view token, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return value;
}

/// Calls fn(line_number, tokens) for every non-blank line with comments removed.
template <typename Fn>
void for_each_content_line(std::string_view text, Fn &&fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        line_no++;
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        std::string_view line = text.substr(pos, nl - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_tokens(line);
        if (!tokens.empty()) {
            fn(line_no, tokens);
        }
        pos = nl + 1;
    }
}

}  // namespace detail

inline Genome parse_genome(std::string_view text) {
    std::optional<std::size_t> num_qubits;
    std::vector<Gate> gates;
    auto qubit = [&](std::string_view token, std::size_t line) {
        std::uint64_t q = detail::parse_index(token, line);
        if (q >= *num_qubits) {
            throw ParseError(line, "qubit index " + std::string(token) + " out of range for " +
                                       std::to_string(*num_qubits) + " qubits");
        }
        return static_cast<Qubit>(q);
    };
    detail::for_each_content_line(text, [&](std::size_t line, const std::vector<std::string_view> &tok) {
        if (!num_qubits) {
            if (tok[0] != "qubits" || tok.size() != 2) {
                throw ParseError(line, "expected header 'qubits <n>'");
            }
            num_qubits = detail::parse_index(tok[1], line);
            if (*num_qubits > std::numeric_limits<Qubit>::max()) {
                throw ParseError(line, "qubit count too large");
            }
            return;
        }
        Gate gate;
        if (tok[0] == "H" || tok[0] == "P") {
            if (tok.size() != 2) {
                throw ParseError(line, std::string(tok[0]) + " takes exactly one qubit index");
            }
            gate = {tok[0] == "H" ? GateKind::H : GateKind::P, qubit(tok[1], line), 0};
        } else if (tok[0] == "CNOT") {
            if (tok.size() != 3) {
                throw ParseError(line, "CNOT takes a control and a target index");
            }
            gate = Gate::cnot(qubit(tok[1], line), qubit(tok[2], line));
        } else if (tok[0] == "qubits") {
            throw ParseError(line, "duplicate 'qubits' header");
        } else {
            throw ParseError(line, "unknown gate '" + std::string(tok[0]) + "'");
        }
        try {
            validate_gate(gate, *num_qubits);
        } catch (const std::exception &e) {
            throw ParseError(line, e.what());
        }
        gates.push_back(gate);
    });
    if (!num_qubits) {
        throw ParseError(1, "missing 'qubits <n>' header");
    }
    return Genome(*num_qubits, std::move(gates));
}

inline std::string serialize(const Genome &g) {
    std::ostringstream out;
    out << "qubits " << g.num_qubits() << "\n";
    for (const auto &gate : g.gates()) {
        out << gate_name(gate.kind) << " " << gate.q1;
        if (gate.is_two_qubit()) {
            out << " " << gate.q2;
        }
        out << "\n";
    }
    return out.str();
}

/// Reads a CNOT adjacency list for GateSpace: one edge "a b" per line, '#'
/// comments, duplicates (in either orientation) collapsed.
inline std::vector<std::pair<Qubit, Qubit>> parse_adjacency(std::string_view text, std::size_t num_qubits) {
    std::vector<std::pair<Qubit, Qubit>> edges;
    std::set<std::pair<Qubit, Qubit>> seen;
    detail::for_each_content_line(text, [&](std::size_t line, const std::vector<std::string_view> &tok) {
        if (tok.size() != 2) {
            throw ParseError(line, "expected an edge 'a b'");
        }
        std::uint64_t a64 = detail::parse_index(tok[0], line);
        std::uint64_t b64 = detail::parse_index(tok[1], line);
        if (a64 >= num_qubits || b64 >= num_qubits) {
            throw ParseError(line, "edge endpoint outside the register");
        }
        auto a = static_cast<Qubit>(a64), b = static_cast<Qubit>(b64);
        if (a == b) {
            throw ParseError(line, "self-loop edge");
        }
        if (seen.emplace(std::min(a, b), std::max(a, b)).second) {
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    });
    return edges;
}

}  // namespace evoqc
