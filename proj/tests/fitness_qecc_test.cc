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


#include "evoqc/fitness_qecc.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "gtest/gtest.h"

#include "support/dense_qecc.hpp"
#include "support/test_util.hpp"

using namespace evoqc;
using evoqc::testing::DenseCodePair;
using evoqc::testing::load_circuit;

namespace {

PauliOperator P(const char *text) {
    return PauliOperator::from_string(text);
}

std::vector<PauliOperator> Ps(std::initializer_list<const char *> texts) {
    std::vector<PauliOperator> out;
    for (const char *t : texts) {
        out.push_back(P(t));
    }
    return out;
}

bool same_group(std::span<const PauliOperator> a, std::span<const PauliOperator> b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (const auto &p : a) {
        if (membership_with_sign(p, b) != Membership::MemberPlus) {
            return false;
        }
    }
    return true;
}

// Random GF(2) recombination of a generator list (invertible row operations).
std::vector<PauliOperator> mix(std::vector<PauliOperator> gens, RngStream &rng) {
    for (int step = 0; step < 20; step++) {
        std::size_t i = rng.uniform_below(gens.size()), j = rng.uniform_below(gens.size());
        if (i != j) {
            gens[i] = multiply(gens[i], gens[j]);
        } else {
            std::swap(gens[i], gens[(i + 1) % gens.size()]);
        }
    }
    return gens;
}

double max_corrigibility(const Genome &g) {
    QeccOptions opts;
    opts.w = 1.0;
    return qecc_phenotype(g, opts).corrigibility;
}

}  // namespace

TEST(overhead, counts) {
    for (std::size_t n = 3; n <= 11; n++) {
        EXPECT_EQ(error_count(n, 1), 3 * n);
    }
    EXPECT_EQ(error_count(9, 2), 324u);
    EXPECT_EQ(error_count(2, 2), 9u);
    EXPECT_EQ(errors_up_to(5, 1), 15u);
    EXPECT_EQ(errors_up_to(5, 2), 15u + 90u);
    EXPECT_EQ(binomial(60, 30), 118264581564861424ull);
    EXPECT_THROW(error_count(3, 4), std::invalid_argument);
    EXPECT_THROW(error_count(3, 0), std::invalid_argument);
    EXPECT_THROW(error_count(64, 40), std::overflow_error);
}

TEST(overhead, status) {
    EXPECT_TRUE(overhead_ok(5, 1));
    EXPECT_EQ(overhead_status(5, 1), OverheadStatus::Saturated);
    EXPECT_FALSE(overhead_ok(4, 1));
    EXPECT_EQ(overhead_status(4, 1), OverheadStatus::Violated);
    EXPECT_EQ(overhead_status(9, 1), OverheadStatus::Satisfied);
    EXPECT_STREQ(to_string(overhead_status(9, 1)), "satisfied with slack");
    EXPECT_STREQ(to_string(overhead_status(5, 1)), "saturated");
    EXPECT_STREQ(to_string(overhead_status(4, 1)), "violated");
    for (std::size_t n = 2; n <= 4; n++) {
        EXPECT_FALSE(overhead_ok(n, 1));
    }
    for (std::size_t n = 6; n <= 30; n++) {
        EXPECT_EQ(overhead_status(n, 1), OverheadStatus::Satisfied);
    }
}

TEST(errors, enumeration) {
    auto e31 = enumerate_weight_t_errors(3, 1);
    std::vector<std::string> names;
    for (const auto &e : e31) {
        names.push_back(e.str());
    }
    EXPECT_EQ(names, (std::vector<std::string>{"+XII", "+IXI", "+IIX", "+YII", "+IYI", "+IIY", "+ZII", "+IZI",
                                               "+IIZ"}));
    EXPECT_EQ(enumerate_weight_t_errors(2, 2).size(), 9u);
    for (std::size_t n = 1; n <= 7; n++) {
        for (std::size_t t = 1; t <= n; t++) {
            auto errs = enumerate_weight_t_errors(n, t);
            EXPECT_EQ(errs.size(), error_count(n, t));
            std::set<std::string> distinct;
            for (const auto &e : errs) {
                EXPECT_EQ(weight(e), t);
                EXPECT_EQ(e.phase_exp(), 0);
                distinct.insert(e.str());
            }
            EXPECT_EQ(distinct.size(), errs.size());
        }
        EXPECT_EQ(enumerate_errors_up_to(n, n).size(), errors_up_to(n, n));
    }
}

TEST(logical_x, family_examples) {
    auto id = logical_x_family(Genome(3));
    EXPECT_EQ(id.generators, Ps({"XII", "IXI", "IIX"}));
    auto h = logical_x_family(Genome(2, {Gate::h(0)}));
    EXPECT_EQ(h.generators[0].str(), "+ZI");

    RngStream rng(61);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t n = 2 + rng.uniform_below(6);
        Genome g = random_genome(n, 1, 20, rng);
        auto fam = logical_x_family(g);
        std::uint64_t j1 = rng.uniform_below(n), j2 = (j1 + 1 + rng.uniform_below(n - 1)) % n;
        EXPECT_EQ(fam.combine((1ull << j1) | (1ull << j2)), multiply(fam.generators[j1], fam.generators[j2]));
        EXPECT_EQ(fam.combine(1ull << j1), fam.generators[j1]);
        EXPECT_TRUE(fam.combine(0).is_identity_letters());
    }
}

TEST(common_stabilizer, examples) {
    auto c0 = Ps({"ZII", "IZI", "IIZ"});
    auto common = common_stabilizer(c0, P("XXX"));
    EXPECT_EQ(common, Ps({"ZZI", "ZIZ"}));
    EXPECT_TRUE(same_group(common, Ps({"ZZI", "IZZ"})));

    EXPECT_EQ(common_stabilizer(Ps({"ZI", "IZ"}), P("XI")), Ps({"IZ"}));
    EXPECT_THROW(common_stabilizer(Ps({"ZI", "IZ"}), P("ZI")), std::logic_error);
}

TEST(common_stabilizer, invariants_on_random_circuits) {
    RngStream rng(62);
    for (int trial = 0; trial < 300; trial++) {
        std::size_t n = 2 + rng.uniform_below(6);
        Genome g = random_genome(n, 1, 4 * n, rng);
        auto c0 = simulate(g).stabilizers();
        auto fam = logical_x_family(g);
        for (int k = 0; k < 5; k++) {
            std::uint64_t b = 1 + rng.uniform_below((1ull << n) - 1);
            auto xbar = fam.combine(b);
            EXPECT_TRUE(std::any_of(c0.begin(), c0.end(), [&](const auto &s) { return !commutes(s, xbar); }));
            auto common = common_stabilizer(c0, xbar);
            ASSERT_EQ(common.size(), n - 1);
            for (std::size_t i = 0; i < common.size(); i++) {
                EXPECT_TRUE(commutes(common[i], xbar));
                EXPECT_EQ(membership_with_sign(common[i], c0), Membership::MemberPlus);
                for (std::size_t j = 0; j < common.size(); j++) {
                    EXPECT_TRUE(commutes(common[i], common[j]));
                }
            }
            // Also stabilizes the partner codeword: xbar S xbar^dagger = S.
            auto partner = c0;
            for (auto &s : partner) {
                if (!commutes(s, xbar)) {
                    s.negate();
                }
            }
            for (const auto &s : common) {
                EXPECT_EQ(membership_with_sign(s, partner), Membership::MemberPlus);
            }
        }
    }
}

TEST(syndrome, table_examples) {
    auto gens = Ps({"ZZI", "IZZ"});
    EXPECT_EQ(syndrome_of(P("XII"), gens).str(), "10");
    EXPECT_EQ(syndrome_of(P("IXI"), gens).str(), "11");
    EXPECT_EQ(syndrome_of(P("IIX"), gens).str(), "01");
    EXPECT_EQ(syndrome_of(P("ZII"), gens).str(), "00");
    EXPECT_TRUE(syndrome_of(P("IZI"), gens).is_zero());
}

TEST(syndrome_report, repetition_code) {
    Genome rep = load_circuit("repetition3.circ");
    // Xbar_0 = XXX for this encoder; mask 0b111 would give X_0 instead.
    CodePair pair = code_pair_for(rep, 0b001);
    EXPECT_EQ(pair.xbar.str(), "+XXX");
    EXPECT_EQ(code_pair_for(rep, 0b111).xbar.str(), "+XII");
    EXPECT_TRUE(same_group(pair.common_generators, Ps({"ZZI", "IZZ"})));

    // Under the stated correctability rule, X_i and Y_i share a syndrome while
    // X_i Y_i = i Z_i flips the relative codeword phase: every X/Y class fails.
    auto all = enumerate_weight_t_errors(3, 1);
    auto report = build_syndrome_report(pair, all);
    EXPECT_EQ(report.undetectable, 3u);
    EXPECT_EQ(report.uncorrectable, 6u);
    EXPECT_EQ(report.corrigibility, 0.0);
    auto dense = DenseCodePair(rep, 0b001).report(all);
    EXPECT_EQ(dense.undetectable, 3u);
    EXPECT_EQ(dense.uncorrectable, 6u);

    // Bit and phase flips only.
    auto xz = Ps({"XII", "IXI", "IIX", "ZII", "IZI", "IIZ"});
    auto xz_report = build_syndrome_report(pair, xz);
    EXPECT_EQ(xz_report.undetectable, 3u);
    EXPECT_EQ(xz_report.uncorrectable, 0u);
    EXPECT_EQ(xz_report.corrigibility, 0.5);
    EXPECT_EQ(xz_report.to_csv(), "error,syndrome\nXII,11\nIXI,10\nIIX,01\nZII,00\nIZI,00\nIIZ,00\n");
}

TEST(syndrome_report, strict_mode_skips_harmless_errors) {
    // |000> with partner X_0|000>: Z_1 and Z_2 are stabilizers of both codewords.
    CodePair pair = code_pair_for(Genome(3), 0b001);
    auto errors = enumerate_weight_t_errors(3, 1);
    auto literal = build_syndrome_report(pair, errors);
    auto strict = build_syndrome_report(pair, errors, ReportOptions{true});
    EXPECT_EQ(literal.undetectable, strict.undetectable + 2);
    EXPECT_GE(strict.corrigibility, literal.corrigibility);
}

TEST(syndrome_report, shor_degenerate_class) {
    Genome shor = load_circuit("shor9.circ");
    EXPECT_EQ(depth(shor), 5u);
    auto ph = qecc_phenotype(shor);
    EXPECT_EQ(ph.corrigibility, 1.0);
    EXPECT_EQ(ph.css, 1.0);
    EXPECT_EQ(ph.depth, 5u);
    EXPECT_EQ(ph.fitness, 995.0);

    CodePair pair = code_pair_for(shor, ph.best_pair);
    auto z0 = PauliOperator::single(9, 0, 'Z'), z1 = PauliOperator::single(9, 1, 'Z');
    EXPECT_EQ(syndrome_of(z0, pair.common_generators), syndrome_of(z1, pair.common_generators));
    EXPECT_FALSE(syndrome_of(z0, pair.common_generators).is_zero());
    EXPECT_EQ(membership_with_sign(multiply(z0, z1), pair.common_generators), Membership::MemberPlus);
    auto report = build_syndrome_report(pair, enumerate_weight_t_errors(9, 1));
    EXPECT_EQ(report.undetectable, 0u);
    EXPECT_EQ(report.uncorrectable, 0u);
    EXPECT_EQ(css_degree(pair.common_generators), 1.0);
}

TEST(syndrome_report, five_qubit_code) {
    Genome five = load_circuit("five_qubit.circ");
    // The encoder prepares |0_L> of the cyclic XZZXI code.
    auto state = evoqc::testing::dense_simulate(five, 5);
    for (const char *s : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ", "ZZZZZ"}) {
        EXPECT_NEAR(state.expectation(P(s)).real(), 1.0, 1e-9) << s;
    }
    auto ph = qecc_phenotype(five);
    EXPECT_EQ(ph.corrigibility, 1.0);
    EXPECT_EQ(ph.css, 0.0);
    EXPECT_EQ(ph.depth, depth(five));
    EXPECT_EQ(ph.fitness, 1000.0 - static_cast<double>(depth(five)));
    auto dense = DenseCodePair(five, ph.best_pair).report(enumerate_weight_t_errors(5, 1));
    EXPECT_EQ(dense.corrigibility, 1.0);
}

TEST(syndrome_report, matches_dense_oracle) {
    RngStream rng(63);
    for (int trial = 0; trial < 300; trial++) {
        std::size_t n = 2 + rng.uniform_below(4);
        Genome g = random_genome(n, 1, 5 * n, rng);
        std::uint64_t b = 1 + rng.uniform_below((1ull << n) - 1);
        auto errors = trial % 3 == 0 ? enumerate_errors_up_to(n, 2) : enumerate_weight_t_errors(n, 1);
        auto report = build_syndrome_report(code_pair_for(g, b), errors);
        auto dense = DenseCodePair(g, b).report(errors);
        EXPECT_EQ(report.undetectable, dense.undetectable) << serialize(g) << " b=" << b;
        EXPECT_EQ(report.uncorrectable, dense.uncorrectable) << serialize(g) << " b=" << b;
        EXPECT_EQ(report.corrigibility, dense.corrigibility);
        EXPECT_GE(report.corrigibility, 0.0);
        EXPECT_LE(report.corrigibility, 1.0);
        EXPECT_EQ(report.corrigibility == 1.0, report.undetectable == 0 && report.uncorrectable == 0);
    }
}

TEST(css_degree, examples) {
    EXPECT_EQ(css_degree(Ps({"ZZI", "IZZ"})), 1.0);
    EXPECT_EQ(css_degree(Ps({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"})), 0.0);
    EXPECT_EQ(css_degree(Ps({"XXXX", "ZZZZ", "XXII"})), 1.0);
    EXPECT_EQ(css_degree(Ps({"XXI", "YYI"})), 1.0);  // YYI = -XXI * ZZI
    EXPECT_EQ(css_degree(Ps({"ZZII", "XXYY"})), 0.5);
    EXPECT_THROW(css_degree(Ps({"ZZI", "IZZ", "ZIZ"})), std::invalid_argument);
    EXPECT_THROW(css_degree(std::vector<PauliOperator>{}), std::invalid_argument);
}

TEST(css_degree, generator_set_invariance) {
    RngStream rng(64);
    for (int trial = 0; trial < 1000; trial++) {
        std::size_t n = 2 + rng.uniform_below(8);
        Genome g = random_genome(n, 1, 4 * n, rng);
        auto gens = simulate(g).stabilizers();
        gens.resize(1 + rng.uniform_below(n));
        double base = css_degree(gens);
        EXPECT_GE(base, 0.0);
        EXPECT_LE(base, 1.0);
        EXPECT_EQ(css_degree(mix(gens, rng)), base);
    }
}

TEST(qecc_fitness, identity_circuit) {
    // Oracle first: best corrigibility over all 31 pairs by statevector.
    Genome id(5);
    auto errors = enumerate_weight_t_errors(5, 1);
    double best = 0.0;
    for (std::uint64_t b = 1; b < 32; b++) {
        best = std::max(best, DenseCodePair(id, b).report(errors).corrigibility);
    }
    EXPECT_EQ(best, 0.0);
    auto ph = qecc_phenotype(id);
    EXPECT_EQ(ph.fitness, 0.0);
    EXPECT_EQ(ph.corrigibility, 0.0);
    EXPECT_EQ(ph.best_pair, 1u);
    EXPECT_LT(ph.fitness, 1000.0);
}

TEST(qecc_fitness, matches_exhaustive_pair_scan) {
    RngStream rng(65);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t n = 2 + rng.uniform_below(4);
        Genome g = random_genome(n, 1, 5 * n, rng);
        bool color = trial % 2;
        QeccOptions opts;
        opts.color = color;
        auto ph = qecc_phenotype(g, opts);

        auto errors = enumerate_weight_t_errors(n, 1);
        double d = static_cast<double>(depth(g));
        double best = -1e300;
        std::uint64_t arg = 0;
        for (std::uint64_t b = 1; b < (1ull << n); b++) {
            CodePair pair = code_pair_for(g, b);
            double c = DenseCodePair(g, b).report(errors).corrigibility;
            double f = 1000.0 * c - d + (color ? 1000.0 * css_degree(pair.common_generators) : 0.0);
            if (f > best) {
                best = f;
                arg = b;
            }
        }
        EXPECT_EQ(ph.fitness, best);
        EXPECT_EQ(ph.best_pair, arg);
        EXPECT_LE(ph.fitness, 1000.0 + (color ? 1000.0 : 0.0) - d);
    }
}

TEST(qecc_fitness, small_registers_never_reach_full_corrigibility) {
    RngStream rng(66);
    for (int trial = 0; trial < 1500; trial++) {
        std::size_t n = 2 + rng.uniform_below(3);
        Genome g = random_genome(n, 1, 6 * n, rng);
        EXPECT_LT(max_corrigibility(g), 1.0);
    }
}

TEST(qecc_fitness, relabeling_invariance) {
    RngStream rng(67);
    for (int trial = 0; trial < 1000; trial++) {
        std::size_t n = 3 + rng.uniform_below(3);
        Genome g = random_genome(n, n, 4 * n, rng);
        std::vector<Qubit> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = n - 1; i > 0; i--) {
            std::swap(perm[i], perm[rng.uniform_below(i + 1)]);
        }
        Genome h = permute_qubits(g, perm);
        auto a = qecc_phenotype(g), b = qecc_phenotype(h);
        EXPECT_EQ(a.corrigibility, b.corrigibility);
        EXPECT_EQ(a.fitness, b.fitness);
        // Color scores can tie across different (C, CSS) splits, so only F is compared.
        QeccOptions color;
        color.color = true;
        EXPECT_EQ(qecc_phenotype(g, color).fitness, qecc_phenotype(h, color).fitness);
    }
}

TEST(qecc_fitness, evaluator) {
    QeccEvaluator eval(5, QeccOptions{});
    EXPECT_EQ(eval.phenotype_columns(), (std::vector<std::string>{"C", "CSS", "depth", "best_pair"}));
    EXPECT_EQ(eval.errors().size(), 15u);
    auto ev = eval.evaluate(load_circuit("five_qubit.circ"));
    EXPECT_EQ(ev.phenotype[0], 1.0);
    EXPECT_EQ(ev.phenotype[1], 0.0);
    EXPECT_EQ(QeccEvaluator(4, QeccOptions{}, 2).errors().size(), errors_up_to(4, 2));
    EXPECT_EQ(pair_bitstring(0b110, 4), "0110");
    EXPECT_THROW(code_pair_for(Genome(3), 0), std::out_of_range);
    EXPECT_THROW(code_pair_for(Genome(3), 8), std::out_of_range);
    EXPECT_THROW(qecc_phenotype(Genome(1)), std::invalid_argument);
}
