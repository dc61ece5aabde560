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


#include "evoqc/pauli.hpp"

#include <vector>

#include "gtest/gtest.h"

#include "evoqc/gf2.hpp"
#include "evoqc/tableau.hpp"
#include "support/dense_state.hpp"
#include "support/test_util.hpp"

using namespace evoqc;
using evoqc::testing::random_pauli;

namespace {

PauliOperator P(const char *text) {
    return PauliOperator::from_string(text);
}

// Rank of a 0/1 int matrix mod 2, plain elimination over ints.
std::size_t int_rank_mod2(std::vector<std::vector<int>> a) {
    std::size_t rank = 0;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; c++) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] % 2 == 0) {
            piv++;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(a[rank], a[piv]);
        for (std::size_t r = 0; r < rows; r++) {
            if (r != rank && a[r][c] % 2 != 0) {
                for (std::size_t k = 0; k < cols; k++) {
                    a[r][k] = (a[r][k] + a[rank][k]) % 2;
                }
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace

TEST(pauli, from_string_round_trip) {
    for (const char *s : {"+XYZI", "-ZZI", "+iX", "-iYY", "+"}) {
        EXPECT_EQ(P(s).str(), s);
    }
    EXPECT_EQ(P("ZZ").phase_exp(), 0);
    EXPECT_EQ(P("_X").letter(0), 'I');
    EXPECT_THROW(P("XQ"), std::invalid_argument);
}

TEST(pauli, commutes_examples) {
    EXPECT_FALSE(commutes(PauliOperator::single(1, 0, 'X'), PauliOperator::single(1, 0, 'Z')));
    EXPECT_TRUE(commutes(P("XII"), P("IZZ")));
    EXPECT_FALSE(commutes(P("IXI"), P("ZZI")));
    EXPECT_TRUE(commutes(P("-XX"), P("+iZZ")));
    EXPECT_THROW(commutes(P("X"), P("XX")), std::invalid_argument);
}

TEST(pauli, multiply_examples) {
    auto xx = multiply(P("X"), P("X"));
    EXPECT_EQ(xx.str(), "+I");
    auto xz = multiply(P("X"), P("Z"));
    EXPECT_EQ(xz.letter(0), 'Y');
    EXPECT_EQ(xz.phase_exp(), 3);
    auto zx = multiply(P("Z"), P("X"));
    EXPECT_EQ(zx.phase_exp(), 1);
    EXPECT_EQ(multiply(P("ZZI"), P("IZZ")).str(), "+ZIZ");
    EXPECT_EQ(multiply(P("XY"), P("YX")).str(), "+ZZ");
    EXPECT_EQ(multiply(P("-Y"), P("-Y")).str(), "+I");
    EXPECT_THROW(multiply(P("X"), P("XX")), std::invalid_argument);
}

TEST(pauli, weight_examples) {
    EXPECT_EQ(weight(PauliOperator(5)), 0u);
    EXPECT_EQ(weight(P("XIY")), 2u);
    for (std::size_t q = 0; q < 7; q++) {
        for (char c : {'X', 'Y', 'Z'}) {
            EXPECT_EQ(weight(PauliOperator::single(7, q, c)), 1u);
        }
    }
    PauliOperator wide(130);
    wide.set_letter(0, 'X');
    wide.set_letter(64, 'Y');
    wide.set_letter(129, 'Z');
    EXPECT_EQ(weight(wide), 3u);
}

TEST(pauli, membership_examples) {
    std::vector<PauliOperator> gens = {P("ZZI"), P("IZZ")};
    EXPECT_EQ(membership_with_sign(P("ZZI"), gens), Membership::MemberPlus);
    EXPECT_EQ(membership_with_sign(P("ZIZ"), gens), Membership::MemberPlus);
    EXPECT_EQ(membership_with_sign(P("-ZIZ"), gens), Membership::MemberMinus);
    EXPECT_EQ(membership_with_sign(P("XII"), gens), Membership::NotMember);
    EXPECT_EQ(membership_with_sign(P("+iZIZ"), gens), Membership::NotMember);
    EXPECT_EQ(membership_with_sign(P("III"), gens), Membership::MemberPlus);
    EXPECT_EQ(membership_with_sign(P("-III"), gens), Membership::MemberMinus);
}

TEST(pauli, membership_rejects_bad_generators) {
    std::vector<PauliOperator> dependent = {P("ZZI"), P("IZZ"), P("ZIZ")};
    EXPECT_THROW(membership_with_sign(P("ZZI"), dependent), std::invalid_argument);
    std::vector<PauliOperator> anticommuting = {P("XI"), P("ZI")};
    EXPECT_THROW(membership_with_sign(P("XI"), anticommuting), std::invalid_argument);
    std::vector<PauliOperator> non_hermitian = {P("+iZI")};
    EXPECT_THROW(membership_with_sign(P("ZI"), non_hermitian), std::invalid_argument);
}

TEST(pauli, membership_empty_group) {
    std::vector<PauliOperator> none;
    EXPECT_EQ(membership_with_sign(P("II"), none), Membership::MemberPlus);
    EXPECT_EQ(membership_with_sign(P("XI"), none), Membership::NotMember);
}

TEST(pauli, multiply_is_associative) {
    RngStream rng(11);
    for (int trial = 0; trial < 1000; trial++) {
        std::size_t n = 1 + rng.uniform_below(70);
        auto a = random_pauli(n, rng), b = random_pauli(n, rng), c = random_pauli(n, rng);
        EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
    }
}

TEST(pauli, hermitian_squares_to_identity) {
    RngStream rng(12);
    for (int trial = 0; trial < 1000; trial++) {
        std::size_t n = 1 + rng.uniform_below(70);
        auto a = random_pauli(n, rng, true);
        EXPECT_EQ(multiply(a, a), PauliOperator(n));
    }
}

TEST(pauli, commutation_is_symmetric_and_bilinear) {
    RngStream rng(13);
    for (int trial = 0; trial < 1000; trial++) {
        std::size_t n = 1 + rng.uniform_below(70);
        auto a = random_pauli(n, rng), b = random_pauli(n, rng), c = random_pauli(n, rng);
        EXPECT_EQ(commutes(a, b), commutes(b, a));
        bool anti = !commutes(a, b) ^ !commutes(a, c);
        EXPECT_EQ(!commutes(a, multiply(b, c)), anti);
        // Sign of the product flips exactly when the pair anticommutes.
        auto ab = multiply(a, b), ba = multiply(b, a);
        EXPECT_EQ((ab.phase_exp() - ba.phase_exp()) & 3, commutes(a, b) ? 0 : 2);
    }
}

TEST(pauli, membership_agrees_with_dense_state) {
    RngStream rng(14);
    for (int trial = 0; trial < 300; trial++) {
        std::size_t n = 2 + rng.uniform_below(4);
        Genome g = random_genome(n, 1, 12, rng);
        auto tableau = simulate(g);
        auto state = evoqc::testing::dense_simulate(g, n);
        const auto &gens = tableau.stabilizers();

        // Random element of the group with a random sign, or a random Pauli.
        PauliOperator query(n);
        if (rng.uniform_below(2)) {
            for (const auto &s : gens) {
                if (rng.uniform_below(2)) {
                    query = multiply(query, s);
                }
            }
            if (rng.uniform_below(2)) {
                query.negate();
            }
        } else {
            query = random_pauli(n, rng, true);
        }
        auto m = membership_with_sign(query, gens);
        auto expect = state.expectation(query);
        EXPECT_NEAR(expect.imag(), 0.0, 1e-9);
        switch (m) {
            case Membership::MemberPlus:
                EXPECT_NEAR(expect.real(), 1.0, 1e-9) << query.str();
                break;
            case Membership::MemberMinus:
                EXPECT_NEAR(expect.real(), -1.0, 1e-9) << query.str();
                break;
            case Membership::NotMember:
                EXPECT_NEAR(expect.real(), 0.0, 1e-9) << query.str();
                break;
        }
    }
}

TEST(gf2, rank_examples) {
    EXPECT_EQ(gf2_rank(BinaryMatrix(3, 4)), 0u);
    BinaryMatrix id(4, 4);
    for (std::size_t i = 0; i < 4; i++) {
        id.set(i, i, true);
    }
    EXPECT_EQ(gf2_rank(id), 4u);
    BinaryMatrix m(3, 3);
    const int rows[3][3] = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    for (std::size_t r = 0; r < 3; r++) {
        for (std::size_t c = 0; c < 3; c++) {
            m.set(r, c, rows[r][c]);
        }
    }
    BinaryMatrix before = m;
    EXPECT_EQ(gf2_rank(m), 2u);
    EXPECT_EQ(m, before);
}

TEST(gf2, rank_matches_integer_elimination) {
    RngStream rng(15);
    for (int trial = 0; trial < 2000; trial++) {
        std::size_t rows = 1 + rng.uniform_below(32), cols = 1 + rng.uniform_below(32);
        // Bias some instances towards low rank.
        bool sparse = rng.uniform_below(2);
        BinaryMatrix m(rows, cols);
        std::vector<std::vector<int>> a(rows, std::vector<int>(cols, 0));
        for (std::size_t r = 0; r < rows; r++) {
            for (std::size_t c = 0; c < cols; c++) {
                bool bit = sparse ? rng.uniform_below(8) == 0 : rng.uniform_below(2) == 1;
                m.set(r, c, bit);
                a[r][c] = bit;
            }
        }
        EXPECT_EQ(gf2_rank(m), int_rank_mod2(a));
    }
}
