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

// Error-correction landscape. A genome is read as an encoding circuit EC.
// The first codeword is |c0> = EC|0...0>; every nonzero bitstring b names a
// partner |c_b> = Xbar_b |c0>, where Xbar_b = EC (prod_{j in b} X_j) EC^dagger.
// Each pair {|c0>, |c_b>} defines a two-dimensional code whose stabilizer
// group (the n-1 common generators) drives a syndrome table over a fixed
// error set. The circuit is scored by its best pair.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evoqc/evolution.hpp"
#include "evoqc/genome.hpp"
#include "evoqc/gf2.hpp"
#include "evoqc/pauli.hpp"
#include "evoqc/tableau.hpp"

namespace evoqc {

// ---------------------------------------------------------------------------
// Error sets and overhead counting.

namespace detail {
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("error count overflows 64 bits");
    }
    return out;
}
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("error count overflows 64 bits");
    }
    return out;
}
inline void require_weight_range(std::size_t n, std::size_t t) {
    if (t < 1 || t > n) {
        throw std::invalid_argument("error weight t=" + std::to_string(t) + " outside [1, n=" + std::to_string(n) +
                                    "]");
    }
}
}  // namespace detail

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; i++) {
        // result * (n - k + i) is always divisible by i at this point.
        result = detail::checked_mul(result, n - k + i) / i;
    }
    return result;
}

/// Number of Pauli errors of weight exactly t on n qubits: C(n,t) 3^t.
inline std::uint64_t error_count(std::size_t n, std::size_t t) {
    detail::require_weight_range(n, t);
    std::uint64_t pow3 = 1;
    for (std::size_t i = 0; i < t; i++) {
        pow3 = detail::checked_mul(pow3, 3);
    }
    return detail::checked_mul(binomial(n, t), pow3);
}

/// Number of errors of weight 1..t.
inline std::uint64_t errors_up_to(std::size_t n, std::size_t t) {
    detail::require_weight_range(n, t);
    std::uint64_t total = 0;
    for (std::size_t i = 1; i <= t; i++) {
        total = detail::checked_add(total, error_count(n, i));
    }
    return total;
}

enum class OverheadStatus { Violated, Saturated, Satisfied };

inline const char *to_string(OverheadStatus s) {
    switch (s) {
        case OverheadStatus::Violated:
            return "violated";
        case OverheadStatus::Saturated:
            return "saturated";
        case OverheadStatus::Satisfied:
            return "satisfied with slack";
    }
    return "?";
}

/// Compares errors_up_to(n, t) + 1 against the 2^(n-1) available syndromes
/// of an n-1 generator code.
inline OverheadStatus overhead_status(std::size_t n, std::size_t t) {
    std::uint64_t needed = detail::checked_add(errors_up_to(n, t), 1);
    if (n - 1 >= 64) {
        return OverheadStatus::Satisfied;
    }
    std::uint64_t available = std::uint64_t{1} << (n - 1);
    if (needed > available) {
        return OverheadStatus::Violated;
    }
    return needed == available ? OverheadStatus::Saturated : OverheadStatus::Satisfied;
}

inline bool overhead_ok(std::size_t n, std::size_t t) {
    return overhead_status(n, t) != OverheadStatus::Violated;
}

/// All C(n,t) 3^t weight-t Paulis with sign +. Ordered by letter pattern
/// (X < Y < Z, first support qubit most significant), then by support in
/// lexicographic order; for t = 1 this lists X_0..X_{n-1}, Y_0.., Z_0...
inline std::vector<PauliOperator> enumerate_weight_t_errors(std::size_t n, std::size_t t) {
    detail::require_weight_range(n, t);
    std::vector<PauliOperator> out;
    out.reserve(static_cast<std::size_t>(error_count(n, t)));
    static constexpr char kLetters[3] = {'X', 'Y', 'Z'};
    std::vector<std::size_t> letters(t, 0);
    while (true) {
        std::vector<std::size_t> support(t);
        for (std::size_t i = 0; i < t; i++) {
            support[i] = i;
        }
        while (true) {
            PauliOperator p(n);
            for (std::size_t i = 0; i < t; i++) {
                p.set_letter(support[i], kLetters[letters[i]]);
            }
            out.push_back(std::move(p));
            // Next combination in lexicographic order.
            std::size_t i = t;
            while (i > 0 && support[i - 1] == n - t + (i - 1)) {
                i--;
            }
            if (i == 0) {
                break;
            }
            support[i - 1]++;
            for (std::size_t j = i; j < t; j++) {
                support[j] = support[j - 1] + 1;
            }
        }
        std::size_t i = t;
        while (i > 0 && letters[i - 1] == 2) {
            letters[i - 1] = 0;
            i--;
        }
        if (i == 0) {
            break;
        }
        letters[i - 1]++;
    }
    return out;
}

/// Every error of weight 1..t.
inline std::vector<PauliOperator> enumerate_errors_up_to(std::size_t n, std::size_t t) {
    detail::require_weight_range(n, t);
    std::vector<PauliOperator> out;
    for (std::size_t w = 1; w <= t; w++) {
        auto layer = enumerate_weight_t_errors(n, w);
        out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Codeword pairs.

/// Conjugated single-qubit X operators Xbar_j = EC X_j EC^dagger.
struct LogicalXFamily {
    std::vector<PauliOperator> generators;

    /// Xbar for bitstring `mask` (bit j selects Xbar_j): the signed product.
    PauliOperator combine(std::uint64_t mask) const {
        std::size_t n = generators.empty() ? 0 : generators[0].num_qubits();
        PauliOperator out(n);
        for (std::size_t j = 0; j < generators.size(); j++) {
            if ((mask >> j) & 1) {
                out = multiply(out, generators[j]);
            }
        }
        return out;
    }
};

inline LogicalXFamily logical_x_family(const Genome &genome) {
    LogicalXFamily family;
    std::size_t n = genome.num_qubits();
    family.generators.reserve(n);
    for (std::size_t j = 0; j < n; j++) {
        family.generators.push_back(conjugate_pauli(genome, PauliOperator::single(n, j, 'X')));
    }
    return family;
}

/// Generators of the subgroup of <c0_stabilizers> that commutes with xbar,
/// i.e. the joint stabilizer of |c0> and xbar|c0>.
///
/// The first generator anticommuting with xbar becomes the pivot; every other
/// anticommuting generator is multiplied by it and the pivot is dropped.
inline std::vector<PauliOperator> common_stabilizer(std::span<const PauliOperator> c0_stabilizers,
                                                    const PauliOperator &xbar) {
    std::optional<std::size_t> pivot;
    std::vector<bool> anticommutes(c0_stabilizers.size());
    for (std::size_t i = 0; i < c0_stabilizers.size(); i++) {
        anticommutes[i] = !commutes(c0_stabilizers[i], xbar);
        if (anticommutes[i] && !pivot) {
            pivot = i;
        }
    }
    if (!pivot) {
        throw std::logic_error("xbar " + xbar.str() +
                               " commutes with every stabilizer of c0, so it cannot map c0 to an orthogonal codeword");
    }
    std::vector<PauliOperator> out;
    out.reserve(c0_stabilizers.size() - 1);
    for (std::size_t i = 0; i < c0_stabilizers.size(); i++) {
        if (i == *pivot) {
            continue;
        }
        out.push_back(anticommutes[i] ? multiply(c0_stabilizers[i], c0_stabilizers[*pivot]) : c0_stabilizers[i]);
    }
    return out;
}

struct CodePair {
    std::uint64_t mask = 0;
    std::vector<PauliOperator> c0_stabilizers;
    PauliOperator xbar;
    std::vector<PauliOperator> common_generators;
};

inline CodePair make_code_pair(std::vector<PauliOperator> c0_stabilizers, PauliOperator xbar, std::uint64_t mask = 0) {
    CodePair pair;
    pair.mask = mask;
    pair.common_generators = common_stabilizer(c0_stabilizers, xbar);
    pair.c0_stabilizers = std::move(c0_stabilizers);
    pair.xbar = std::move(xbar);
    return pair;
}

// ---------------------------------------------------------------------------
// Syndromes.

/// Commute (0) / anticommute (1) outcome per syndrome operator; bit i belongs
/// to generator i and is printed at position i from the left.
struct Syndrome {
    std::vector<bool> bits;

    bool is_zero() const {
        return std::none_of(bits.begin(), bits.end(), [](bool b) { return b; });
    }
    std::string str() const {
        std::string s;
        s.reserve(bits.size());
        for (bool b : bits) {
            s.push_back(b ? '1' : '0');
        }
        return s;
    }
    auto operator<=>(const Syndrome &) const = default;
};

inline Syndrome syndrome_of(const PauliOperator &error, std::span<const PauliOperator> generators) {
    Syndrome s;
    s.bits.reserve(generators.size());
    for (const auto &g : generators) {
        s.bits.push_back(!commutes(error, g));
    }
    return s;
}

enum class ErrorClass { Correctable, Undetectable, Uncorrectable };

inline const char *to_string(ErrorClass c) {
    switch (c) {
        case ErrorClass::Correctable:
            return "correctable";
        case ErrorClass::Undetectable:
            return "undetectable";
        case ErrorClass::Uncorrectable:
            return "uncorrectable";
    }
    return "?";
}

struct ReportOptions {
    /// Do not count zero-syndrome errors that act as +1 on both codewords
    /// (members of the common stabilizer group) as undetectable.
    bool strict_undetectable = false;
};

struct SyndromeReport {
    std::vector<PauliOperator> errors;
    std::vector<Syndrome> syndromes;
    std::vector<ErrorClass> classes;
    std::size_t undetectable = 0;
    std::size_t uncorrectable = 0;
    double corrigibility = 0.0;

    /// "error,syndrome" table, errors as letter strings (qubit 0 leftmost).
    std::string to_csv() const {
        std::ostringstream out;
        out << "error,syndrome\n";
        for (std::size_t i = 0; i < errors.size(); i++) {
            std::string text = errors[i].str();
            out << (text.starts_with('+') ? text.substr(1) : text) << "," << syndromes[i].str() << "\n";
        }
        return out.str();
    }
};

/// Classifies every error of `errors` against the code defined by `pair`.
///
/// An all-zero syndrome is undetectable. Errors sharing a nonzero syndrome
/// form a class; the class is correctable when every pairwise product
/// E_i E_j lies in the common stabilizer group with sign +1 (it then acts
/// as the identity on both codewords). A failing class counts all of its
/// errors as uncorrectable. Corrigibility is (|E| - und - unc) / |E|.
inline SyndromeReport build_syndrome_report(const CodePair &pair, std::span<const PauliOperator> errors,
                                            const ReportOptions &options = {}) {
    SyndromeReport report;
    report.errors.assign(errors.begin(), errors.end());
    report.syndromes.reserve(errors.size());
    report.classes.assign(errors.size(), ErrorClass::Correctable);
    for (const auto &e : errors) {
        report.syndromes.push_back(syndrome_of(e, pair.common_generators));
    }

    std::optional<GeneratorBasis> basis;
    auto group = [&]() -> const GeneratorBasis & {
        if (!basis) {
            std::size_t n = pair.xbar.num_qubits();
            basis.emplace(pair.common_generators, n);
        }
        return *basis;
    };

    std::vector<std::size_t> order(errors.size());
    for (std::size_t i = 0; i < order.size(); i++) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return report.syndromes[a] < report.syndromes[b]; });

    for (std::size_t begin = 0; begin < order.size();) {
        std::size_t end = begin + 1;
        while (end < order.size() && report.syndromes[order[end]] == report.syndromes[order[begin]]) {
            end++;
        }
        if (report.syndromes[order[begin]].is_zero()) {
            for (std::size_t k = begin; k < end; k++) {
                std::size_t i = order[k];
                bool harmless =
                    options.strict_undetectable && group().membership(errors[i]) == Membership::MemberPlus;
                if (!harmless) {
                    report.classes[i] = ErrorClass::Undetectable;
                }
            }
        } else if (end - begin >= 2) {
            bool ok = true;
            for (std::size_t a = begin; a < end && ok; a++) {
                for (std::size_t b = a + 1; b < end && ok; b++) {
                    PauliOperator product = multiply(errors[order[a]], errors[order[b]]);
                    ok = group().membership(product) == Membership::MemberPlus;
                }
            }
            if (!ok) {
                for (std::size_t k = begin; k < end; k++) {
                    report.classes[order[k]] = ErrorClass::Uncorrectable;
                }
            }
        }
        begin = end;
    }

    for (ErrorClass c : report.classes) {
        report.undetectable += c == ErrorClass::Undetectable;
        report.uncorrectable += c == ErrorClass::Uncorrectable;
    }
    report.corrigibility =
        errors.empty() ? 0.0
                       : static_cast<double>(errors.size() - report.undetectable - report.uncorrectable) /
                             static_cast<double>(errors.size());
    return report;
}

// ---------------------------------------------------------------------------
// CSS degree.

/// Fraction of a generating set that can be made pure-X or pure-Z.
///
/// With m independent generators, the pure-Z subgroup has dimension
/// m - rank(X block) and the pure-X subgroup m - rank(Z block). They
/// intersect trivially, so their sum over m lies in [0, 1] and equals 1
/// exactly for CSS codes. Independent of the chosen generating set.
inline double css_degree(std::span<const PauliOperator> generators) {
    if (generators.empty()) {
        throw std::invalid_argument("css_degree of an empty generator set");
    }
    std::size_t m = generators.size();
    std::size_t n = generators[0].num_qubits();
    BinaryMatrix full = check_matrix(generators, n);
    if (gf2_rank(full) != m) {
        throw std::invalid_argument("css_degree: generators are not independent");
    }
    BinaryMatrix xs(m, n), zs(m, n);
    for (std::size_t i = 0; i < m; i++) {
        for (std::size_t q = 0; q < n; q++) {
            xs.set(i, q, generators[i].x(q));
            zs.set(i, q, generators[i].z(q));
        }
    }
    std::size_t pure_z = m - gf2_rank(std::move(xs));
    std::size_t pure_x = m - gf2_rank(std::move(zs));
    return static_cast<double>(pure_x + pure_z) / static_cast<double>(m);
}

// ---------------------------------------------------------------------------
// Fitness.

struct QeccOptions {
    double w = 1000.0;
    double w_prime = 1000.0;
    /// Adds w' * CSS to every pair score (color-code search).
    bool color = false;
    ReportOptions report;
};

struct QeccPhenotype {
    double corrigibility = 0.0;
    double css = 0.0;
    std::size_t depth = 0;
    std::uint64_t best_pair = 0;
    double fitness = 0.0;
};

inline constexpr std::size_t kMaxQeccQubits = 20;

/// Scores every pair {|c0>, Xbar_b|c0>}, b = 1..2^n-1, as
/// F_b = w C_b - D (+ w' CSS_b in color mode) and keeps the maximum; ties go
/// to the smallest b. The scan stops early once a pair reaches the upper
/// bound w (+ w') - D, which no later pair can exceed.
inline QeccPhenotype qecc_phenotype(const Genome &genome, const QeccOptions &options,
                                    std::span<const PauliOperator> errors) {
    std::size_t n = genome.num_qubits();
    if (n < 2) {
        throw std::invalid_argument("qecc fitness needs at least 2 qubits");
    }
    if (n > kMaxQeccQubits) {
        throw std::invalid_argument("qecc fitness scans 2^n codeword pairs; n=" + std::to_string(n) + " is too large");
    }
    QeccPhenotype best;
    best.depth = depth(genome);
    double d = static_cast<double>(best.depth);
    double ceiling = options.w + (options.color ? options.w_prime : 0.0) - d;

    StabilizerTableau tableau = simulate(genome);
    const auto &c0 = tableau.stabilizers();
    LogicalXFamily family = logical_x_family(genome);

    std::uint64_t count = std::uint64_t{1} << n;
    std::vector<PauliOperator> xbars(count);
    xbars[0] = PauliOperator(n);
    bool have_best = false;
    std::vector<PauliOperator> best_common;
    for (std::uint64_t b = 1; b < count; b++) {
        // The Xbar_j commute, so peeling off the lowest bit gives the same signed product.
        unsigned low = static_cast<unsigned>(std::countr_zero(b));
        xbars[b] = multiply(xbars[b & (b - 1)], family.generators[low]);

        std::vector<PauliOperator> common = common_stabilizer(c0, xbars[b]);
        CodePair pair{b, {}, xbars[b], std::move(common)};
        SyndromeReport report = build_syndrome_report(pair, errors, options.report);
        double score = options.w * report.corrigibility - d;
        double css = 0.0;
        if (options.color) {
            css = css_degree(pair.common_generators);
            score += options.w_prime * css;
        }
        if (!have_best || score > best.fitness) {
            have_best = true;
            best.fitness = score;
            best.corrigibility = report.corrigibility;
            best.css = css;
            best.best_pair = b;
            best_common = std::move(pair.common_generators);
            if (score >= ceiling) {
                break;
            }
        }
    }
    if (!options.color) {
        best.css = css_degree(best_common);
    }
    return best;
}

inline QeccPhenotype qecc_phenotype(const Genome &genome, const QeccOptions &options = {}) {
    auto errors = enumerate_weight_t_errors(genome.num_qubits(), 1);
    return qecc_phenotype(genome, options, errors);
}

/// The pair named by bitstring `mask` for the circuit, with its common
/// stabilizer generators.
inline CodePair code_pair_for(const Genome &genome, std::uint64_t mask) {
    std::size_t n = genome.num_qubits();
    if (mask == 0 || (n < 64 && mask >= (std::uint64_t{1} << n))) {
        throw std::out_of_range("pair bitstring out of range");
    }
    StabilizerTableau tableau = simulate(genome);
    return make_code_pair(tableau.stabilizers(), logical_x_family(genome).combine(mask), mask);
}

/// Bitstring of a pair index, qubit 0 leftmost.
inline std::string pair_bitstring(std::uint64_t mask, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t j = 0; j < n; j++) {
        if ((mask >> j) & 1) {
            s[j] = '1';
        }
    }
    return s;
}

class QeccEvaluator {
   public:
    QeccEvaluator(std::size_t num_qubits, QeccOptions options, std::size_t max_error_weight = 1)
        : options_(options), errors_(enumerate_errors_up_to(num_qubits, max_error_weight)) {
    }

    Evaluation evaluate(const Genome &genome) const {
        QeccPhenotype ph = qecc_phenotype(genome, options_, errors_);
        return {ph.fitness,
                {ph.corrigibility, ph.css, static_cast<double>(ph.depth), static_cast<double>(ph.best_pair)}};
    }
    std::vector<std::string> phenotype_columns() const {
        return {"C", "CSS", "depth", "best_pair"};
    }
    const QeccOptions &options() const {
        return options_;
    }
    const std::vector<PauliOperator> &errors() const {
        return errors_;
    }

   private:
    QeccOptions options_;
    std::vector<PauliOperator> errors_;
};

}  // namespace evoqc
