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
#include <utility>
#include <vector>

namespace evoqc {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for_bits(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
}

/// Dense row-major matrix over GF(2), one bit per entry, rows padded to whole words.
class BinaryMatrix {
   public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for_bits(cols)), bits_(rows * stride_, 0) {
    }

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    std::size_t stride() const {
        return stride_;
    }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool value) {
        Word &w = bits_[r * stride_ + c / kWordBits];
        Word mask = Word{1} << (c % kWordBits);
        w = value ? (w | mask) : (w & ~mask);
    }

    std::span<Word> row(std::size_t r) {
        return {bits_.data() + r * stride_, stride_};
    }
    std::span<const Word> row(std::size_t r) const {
        return {bits_.data() + r * stride_, stride_};
    }

    /// row(dst) ^= row(src)
    void xor_row(std::size_t dst, std::size_t src) {
        Word *d = bits_.data() + dst * stride_;
        const Word *s = bits_.data() + src * stride_;
        for (std::size_t k = 0; k < stride_; k++) {
            d[k] ^= s[k];
        }
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) {
            return;
        }
        for (std::size_t k = 0; k < stride_; k++) {
            std::swap(bits_[a * stride_ + k], bits_[b * stride_ + k]);
        }
    }

    bool operator==(const BinaryMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> bits_;
};

/// In-place reduction to row echelon form. Returns the rank.
inline std::size_t row_reduce(BinaryMatrix &m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); c++) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && !m.get(pivot, c)) {
            pivot++;
        }
        if (pivot == m.rows()) {
            continue;
        }
        m.swap_rows(rank, pivot);
        for (std::size_t r = 0; r < m.rows(); r++) {
            if (r != rank && m.get(r, c)) {
                m.xor_row(r, rank);
            }
        }
        rank++;
    }
    return rank;
}

inline std::size_t gf2_rank(BinaryMatrix m) {
    return row_reduce(m);
}

}  // namespace evoqc
