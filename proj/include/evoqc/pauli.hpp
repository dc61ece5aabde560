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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evoqc/gf2.hpp"

namespace evoqc {

/// Signed n-qubit Pauli operator i^phase_exp * P_0 (x) P_1 (x) ... (x) P_{n-1}.
///
/// Each qubit carries an (x, z) bit pair: (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.
/// The letter Y is the Hermitian Pauli Y, so an operator is Hermitian exactly
/// when phase_exp is even. Bits are packed 64 per word; padding bits stay zero.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(std::size_t num_qubits)
        : num_qubits_(num_qubits), xs_(words_for_bits(num_qubits), 0), zs_(words_for_bits(num_qubits), 0) {
    }

    /// Weight-one operator with `letter` in {I, X, Y, Z} on `qubit`.
    static PauliOperator single(std::size_t num_qubits, std::size_t qubit, char letter) {
        PauliOperator p(num_qubits);
        if (qubit >= num_qubits) {
            throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range");
        }
        p.set_letter(qubit, letter);
        return p;
    }

    /// Parses `[+|-|+i|-i]LETTERS`, qubit 0 leftmost, e.g. "-ZZI" or "+iXY".
    static PauliOperator from_string(std::string_view text) {
        std::uint8_t phase = 0;
        if (text.starts_with("+i")) {
            phase = 1;
            text.remove_prefix(2);
        } else if (text.starts_with("-i")) {
            phase = 3;
            text.remove_prefix(2);
        } else if (text.starts_with('+')) {
            text.remove_prefix(1);
        } else if (text.starts_with('-')) {
            phase = 2;
            text.remove_prefix(1);
        }
        PauliOperator p(text.size());
        for (std::size_t q = 0; q < text.size(); q++) {
            p.set_letter(q, text[q]);
        }
        p.phase_exp_ = phase;
        return p;
    }

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::uint8_t phase_exp() const {
        return phase_exp_;
    }
    void set_phase_exp(unsigned phase) {
        phase_exp_ = static_cast<std::uint8_t>(phase & 3);
    }
    void negate() {
        phase_exp_ = static_cast<std::uint8_t>((phase_exp_ + 2) & 3);
    }
    bool is_hermitian() const {
        return (phase_exp_ & 1) == 0;
    }

    bool x(std::size_t q) const {
        return (xs_[q / kWordBits] >> (q % kWordBits)) & 1;
    }
    bool z(std::size_t q) const {
        return (zs_[q / kWordBits] >> (q % kWordBits)) & 1;
    }
    void set(std::size_t q, bool x_bit, bool z_bit) {
        Word mask = Word{1} << (q % kWordBits);
        Word &xw = xs_[q / kWordBits];
        Word &zw = zs_[q / kWordBits];
        xw = x_bit ? (xw | mask) : (xw & ~mask);
        zw = z_bit ? (zw | mask) : (zw & ~mask);
    }

    char letter(std::size_t q) const {
        static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
        return kLetters[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
    }
    void set_letter(std::size_t q, char letter) {
        switch (letter) {
            case 'I':
            case '_':
                set(q, false, false);
                break;
            case 'X':
                set(q, true, false);
                break;
            case 'Y':
                set(q, true, true);
                break;
            case 'Z':
                set(q, false, true);
                break;
            default:
                throw std::invalid_argument(std::string("not a Pauli letter: '") + letter + "'");
        }
    }

    std::span<const Word> x_words() const {
        return xs_;
    }
    std::span<const Word> z_words() const {
        return zs_;
    }
    std::span<Word> x_words() {
        return xs_;
    }
    std::span<Word> z_words() {
        return zs_;
    }

    /// True when every qubit carries I (phase ignored).
    bool is_identity_letters() const {
        for (std::size_t k = 0; k < xs_.size(); k++) {
            if (xs_[k] | zs_[k]) {
                return false;
            }
        }
        return true;
    }

    /// Same letters on every qubit, ignoring the phase.
    bool same_letters(const PauliOperator &other) const {
        return num_qubits_ == other.num_qubits_ && xs_ == other.xs_ && zs_ == other.zs_;
    }

    std::string str() const {
        static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
        std::string out = kPrefix[phase_exp_];
        for (std::size_t q = 0; q < num_qubits_; q++) {
            out.push_back(letter(q));
        }
        return out;
    }

    bool operator==(const PauliOperator &other) const = default;

   private:
    std::size_t num_qubits_ = 0;
    std::vector<Word> xs_;
    std::vector<Word> zs_;
    std::uint8_t phase_exp_ = 0;
};

namespace detail {
inline void require_same_size(const PauliOperator &a, const PauliOperator &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "Pauli size mismatch: " + std::to_string(a.num_qubits()) + " vs " + std::to_string(b.num_qubits()));
    }
}
}  // namespace detail

/// True iff the symplectic product of a and b is even.
inline bool commutes(const PauliOperator &a, const PauliOperator &b) {
    detail::require_same_size(a, b);
    auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
    unsigned parity = 0;
    for (std::size_t k = 0; k < ax.size(); k++) {
        parity ^= std::popcount((ax[k] & bz[k]) ^ (az[k] & bx[k])) & 1;
    }
    return parity == 0;
}

/// Operator product a*b with exact phase tracking (mod 4 powers of i).
inline PauliOperator multiply(const PauliOperator &a, const PauliOperator &b) {
    detail::require_same_size(a, b);
    PauliOperator out(a.num_qubits());
    auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
    auto ox = out.x_words(), oz = out.z_words();
    int phase = a.phase_exp() + b.phase_exp();
    for (std::size_t k = 0; k < ax.size(); k++) {
        Word a_x = ax[k] & ~az[k], a_y = ax[k] & az[k], a_z = ~ax[k] & az[k];
        Word b_x = bx[k] & ~bz[k], b_y = bx[k] & bz[k], b_z = ~bx[k] & bz[k];
        // XY = iZ, YZ = iX, ZX = iY and the reversed orders pick up -i.
        Word plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
        Word minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
        phase += std::popcount(plus) - std::popcount(minus);
        ox[k] = ax[k] ^ bx[k];
        oz[k] = az[k] ^ bz[k];
    }
    out.set_phase_exp(static_cast<unsigned>(((phase % 4) + 4) % 4));
    return out;
}

/// Number of qubits carrying a non-identity letter.
inline std::size_t weight(const PauliOperator &p) {
    auto xs = p.x_words(), zs = p.z_words();
    std::size_t total = 0;
    for (std::size_t k = 0; k < xs.size(); k++) {
        total += static_cast<std::size_t>(std::popcount(xs[k] | zs[k]));
    }
    return total;
}

enum class Membership { NotMember, MemberPlus, MemberMinus };

inline const char *to_string(Membership m) {
    switch (m) {
        case Membership::NotMember:
            return "NotMember";
        case Membership::MemberPlus:
            return "MemberPlus";
        case Membership::MemberMinus:
            return "MemberMinus";
    }
    return "?";
}

/// Reduced basis of a commuting, independent set of Hermitian generators.
///
/// Answers group-membership queries (with sign) by solving the GF(2) system
/// once at construction and then reducing each query vector against it.
class GeneratorBasis {
   public:
    explicit GeneratorBasis(std::span<const PauliOperator> generators)
        : GeneratorBasis(generators, generators.empty() ? 0 : generators[0].num_qubits()) {
    }

    GeneratorBasis(std::span<const PauliOperator> generators, std::size_t num_qubits)
        : generators_(generators.begin(), generators.end()), num_qubits_(num_qubits) {
        std::size_t m = generators_.size();
        for (const auto &g : generators_) {
            if (g.num_qubits() != num_qubits_) {
                throw std::invalid_argument("generators have mismatched qubit counts");
            }
            if (!g.is_hermitian()) {
                throw std::invalid_argument("generator " + g.str() + " is not Hermitian");
            }
        }
        for (std::size_t i = 0; i < m; i++) {
            for (std::size_t j = i + 1; j < m; j++) {
                if (!commutes(generators_[i], generators_[j])) {
                    throw std::invalid_argument(
                        "generators " + generators_[i].str() + " and " + generators_[j].str() + " do not commute");
                }
            }
        }

        std::size_t n = num_qubits_;
        reduced_ = BinaryMatrix(m, 2 * n + m);
        for (std::size_t i = 0; i < m; i++) {
            for (std::size_t q = 0; q < n; q++) {
                reduced_.set(i, q, generators_[i].x(q));
                reduced_.set(i, n + q, generators_[i].z(q));
            }
            reduced_.set(i, 2 * n + i, true);
        }
        std::size_t rank = 0;
        for (std::size_t c = 0; c < 2 * n && rank < m; c++) {
            std::size_t pivot = rank;
            while (pivot < m && !reduced_.get(pivot, c)) {
                pivot++;
            }
            if (pivot == m) {
                continue;
            }
            reduced_.swap_rows(rank, pivot);
            for (std::size_t r = 0; r < m; r++) {
                if (r != rank && reduced_.get(r, c)) {
                    reduced_.xor_row(r, rank);
                }
            }
            pivots_.push_back(c);
            rank++;
        }
        if (rank != m) {
            throw std::invalid_argument(
                "generator set is dependent (rank " + std::to_string(rank) + " < " + std::to_string(m) + ")");
        }
    }

    std::size_t size() const {
        return generators_.size();
    }
    std::size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<PauliOperator> &generators() const {
        return generators_;
    }

    /// Fills `combination` with the indices of the generators whose product has
    /// p's letters. Returns false when no combination exists.
    bool decompose(const PauliOperator &p, std::vector<std::size_t> &combination) const {
        combination.clear();
        std::size_t n = num_qubits_;
        std::size_t m = generators_.size();
        BinaryMatrix v(1, 2 * n + m);
        for (std::size_t q = 0; q < n; q++) {
            v.set(0, q, p.x(q));
            v.set(0, n + q, p.z(q));
        }
        auto vrow = v.row(0);
        for (std::size_t r = 0; r < pivots_.size(); r++) {
            if (v.get(0, pivots_[r])) {
                auto rrow = reduced_.row(r);
                for (std::size_t k = 0; k < vrow.size(); k++) {
                    vrow[k] ^= rrow[k];
                }
            }
        }
        for (std::size_t c = 0; c < 2 * n; c++) {
            if (v.get(0, c)) {
                return false;
            }
        }
        for (std::size_t i = 0; i < m; i++) {
            if (v.get(0, 2 * n + i)) {
                combination.push_back(i);
            }
        }
        return true;
    }

    Membership membership(const PauliOperator &p) const {
        if (p.num_qubits() != num_qubits_) {
            throw std::invalid_argument("membership query size mismatch");
        }
        std::vector<std::size_t> combination;
        if (!decompose(p, combination)) {
            return Membership::NotMember;
        }
        PauliOperator product(p.num_qubits());
        for (std::size_t i : combination) {
            product = multiply(product, generators_[i]);
        }
        unsigned diff = (p.phase_exp() + 4u - product.phase_exp()) & 3u;
        if (diff == 0) {
            return Membership::MemberPlus;
        }
        if (diff == 2) {
            return Membership::MemberMinus;
        }
        // p = +-i * (group element): not Hermitian, so not in the group.
        return Membership::NotMember;
    }

   private:
    std::vector<PauliOperator> generators_;
    std::size_t num_qubits_ = 0;
    BinaryMatrix reduced_;
    std::vector<std::size_t> pivots_;
};

/// Whether p lies in the group generated by `generators`, and with which sign.
inline Membership membership_with_sign(const PauliOperator &p, std::span<const PauliOperator> generators) {
    return GeneratorBasis(generators, p.num_qubits()).membership(p);
}

/// Check matrix [X | Z] of a generator list, one row per generator.
inline BinaryMatrix check_matrix(std::span<const PauliOperator> generators, std::size_t num_qubits) {
    BinaryMatrix m(generators.size(), 2 * num_qubits);
    for (std::size_t i = 0; i < generators.size(); i++) {
        for (std::size_t q = 0; q < num_qubits; q++) {
            m.set(i, q, generators[i].x(q));
            m.set(i, num_qubits + q, generators[i].z(q));
        }
    }
    return m;
}

}  // namespace evoqc
