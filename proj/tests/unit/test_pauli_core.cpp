// Copyright 2026 The pauli-lre Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "pauli_lre/pauli_core.hpp"

using namespace pauli_lre;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

TEST(Gamma, ExamplesFromProjectorDecomposition) {
    EXPECT_EQ(gamma_single_qubit(Axis::X, +1), (std::array<double, 4>{kS, kS, 0, 0}));
    EXPECT_EQ(gamma_single_qubit(Axis::Z, -1), (std::array<double, 4>{kS, 0, 0, -kS}));
    EXPECT_EQ(gamma_single_qubit(Axis::Y, +1), (std::array<double, 4>{kS, 0, kS, 0}));
}

TEST(Gamma, MatchesDenseTrace) {
    for (int axis = 1; axis <= 3; ++axis) {
        for (int bit = 0; bit < 2; ++bit) {
            const auto g = gamma_single_qubit(static_cast<Axis>(axis), bit ? -1 : 1);
            const auto p = oracle::projector(1, static_cast<std::uint64_t>(axis - 1), static_cast<std::uint64_t>(bit));
            for (int i = 0; i < 4; ++i) {
                EXPECT_NEAR(g[i], (p * oracle::omega(1, i)).trace().real(), 1e-15);
            }
        }
    }
}

TEST(Gamma, RejectsBadSign) { EXPECT_THROW(gamma_single_qubit(Axis::X, 0), ValidationError); }

TEST(QubitCount, Bounds) {
    EXPECT_THROW(QubitCount(0), ValidationError);
    EXPECT_THROW(QubitCount(17), ValidationError);
    const QubitCount n(16);
    EXPECT_EQ(n.basis_size(), 1ULL << 32);
    EXPECT_EQ(n.setting_count(), 43046721ULL);
    EXPECT_EQ(QubitCount(3).projector_count(), 216ULL);
}

TEST(Indices, BasisDigitsRoundTrip) {
    const QubitCount n(3);
    for (std::uint64_t i = 0; i < n.basis_size(); ++i) {
        const auto digits = basis_digits(n, i);
        EXPECT_EQ(encode_basis(n, digits), i);
    }
    EXPECT_EQ(basis_digits(QubitCount(2), 4), (std::vector<int>{1, 0}));
    EXPECT_THROW(basis_digits(QubitCount(2), 16), ValidationError);
}

TEST(Indices, SettingLabels) {
    const QubitCount n(2);
    EXPECT_EQ(setting_label(n, 0), "XX");
    EXPECT_EQ(setting_label(n, 2), "XZ");
    EXPECT_EQ(setting_label(n, 8), "ZZ");
    for (std::uint64_t w = 0; w < QubitCount(4).setting_count(); ++w) {
        EXPECT_EQ(parse_setting_label(setting_label(QubitCount(4), w)), w);
    }
    EXPECT_THROW(parse_setting_label("XQ"), ValidationError);
    EXPECT_THROW(parse_setting_label(""), ValidationError);
}

TEST(Indices, ZeroCount) {
    EXPECT_EQ(zero_count(QubitCount(2), 0), 2);
    EXPECT_EQ(zero_count(QubitCount(2), 4), 1);
    EXPECT_EQ(zero_count(QubitCount(2), 15), 0);
    const QubitCount n(5);
    for (std::uint64_t i = 0; i < n.basis_size(); ++i) {
        const auto digits = basis_digits(n, i);
        EXPECT_EQ(zero_count(n, i), std::count(digits.begin(), digits.end(), 0));
    }
}

TEST(NonzeroLocations, Examples) {
    EXPECT_EQ(nonzero_locations(QubitCount(1), 2), (std::vector<std::uint64_t>{0, 3}));
    const std::vector<Axis> xz{Axis::X, Axis::Z};
    EXPECT_EQ(nonzero_locations(QubitCount(2), encode_setting(xz)), (std::vector<std::uint64_t>{0, 3, 4, 7}));
    const std::vector<Axis> yy{Axis::Y, Axis::Y};
    EXPECT_EQ(nonzero_locations(QubitCount(2), encode_setting(yy)), (std::vector<std::uint64_t>{0, 2, 8, 10}));
}

// Every dense Gamma^{(w,s)} is nonzero exactly at nonzeroLocations(w), with
// value 2^{-n/2} sign(s, t).
TEST(NonzeroLocations, MatchDenseGammaVectors) {
    for (int nv = 1; nv <= 3; ++nv) {
        const QubitCount n(nv);
        const Eigen::MatrixXd x = oracle::design_matrix(nv);
        const double scale = std::pow(2.0, -nv / 2.0);
        for (std::uint64_t w = 0; w < n.setting_count(); ++w) {
            const auto loc = nonzero_locations(n, w);
            for (std::uint64_t s = 0; s < n.dim(); ++s) {
                Eigen::VectorXd expected = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n.basis_size()));
                for (std::uint64_t t = 0; t < n.dim(); ++t) expected(loc[t]) = scale * outcome_sign(s, t);
                EXPECT_LT((x.row(w * n.dim() + s).transpose() - expected).cwiseAbs().maxCoeff(), 1e-14)
                    << "n=" << nv << " w=" << w << " s=" << s;
            }
        }
    }
}

TEST(Xtx, DiagonalExamples) {
    EXPECT_EQ(xtx_diagonal(QubitCount(1), 0), 3.0);
    for (std::uint64_t i = 1; i < 4; ++i) EXPECT_EQ(xtx_diagonal(QubitCount(1), i), 1.0);
    EXPECT_EQ(xtx_diagonal(QubitCount(2), 0), 9.0);
    EXPECT_EQ(xtx_diagonal(QubitCount(2), 4), 3.0);
}

TEST(Xtx, DenseGramIsDiagonal) {
    for (int nv = 1; nv <= 2; ++nv) {
        const Eigen::MatrixXd x = oracle::design_matrix(nv);
        Eigen::MatrixXd g = x.transpose() * x;
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            EXPECT_NEAR(g(i, i), xtx_diagonal(QubitCount(nv), static_cast<std::uint64_t>(i)), 1e-12);
            g(i, i) = 0.0;
        }
        EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Omega, EntryFactorExamples) {
    auto e = omega_entry_factor(3, 1);
    EXPECT_EQ(e.value, std::complex<double>(-1, 0));
    EXPECT_EQ(e.column_bit, 1);
    e = omega_entry_factor(2, 0);
    EXPECT_EQ(e.value, std::complex<double>(0, -1));
    EXPECT_EQ(e.column_bit, 1);
    e = omega_entry_factor(0, 0);
    EXPECT_EQ(e.value, std::complex<double>(1, 0));
    EXPECT_EQ(e.column_bit, 0);
    EXPECT_THROW(omega_entry_factor(4, 0), ValidationError);
}

TEST(Omega, EntryFactorMatchesPauliMatrices) {
    for (int digit = 0; digit < 4; ++digit) {
        const auto p = oracle::pauli(digit);
        for (int r = 0; r < 2; ++r) {
            const auto e = omega_entry_factor(digit, r);
            EXPECT_EQ(p(r, e.column_bit), e.value);
            EXPECT_EQ(p(r, 1 - e.column_bit), std::complex<double>(0, 0));
        }
    }
}

TEST(Omega, PatternMatchesDenseOmega) {
    const int nv = 3;
    const QubitCount n(nv);
    const double scale = std::pow(2.0, nv / 2.0);
    for (std::uint64_t i = 0; i < n.basis_size(); ++i) {
        const oracle::Mat dense = oracle::omega(nv, i) * scale;
        const auto pat = omega_pattern(n, i);
        for (std::uint64_t r = 0; r < n.dim(); ++r) {
            const std::complex<double> v = pat.phase * static_cast<double>(outcome_sign(r, pat.sign_mask));
            EXPECT_LT(std::abs(dense(r, r ^ pat.flip_mask) - v), 1e-14);
            EXPECT_NEAR(dense.row(r).cwiseAbs().sum(), 1.0, 1e-14);
        }
    }
}

TEST(Wht, Examples) {
    EXPECT_EQ(walsh_hadamard_transformed(std::vector<double>{1, 0}), (std::vector<double>{1, 1}));
    EXPECT_EQ(walsh_hadamard_transformed(std::vector<double>{0.75, 0.25}), (std::vector<double>{1.0, 0.5}));
    EXPECT_EQ(walsh_hadamard_transformed(std::vector<double>{1, 0, 0, 0}), (std::vector<double>{1, 1, 1, 1}));
}

TEST(Wht, RejectsNonPowerOfTwo) {
    EXPECT_THROW(walsh_hadamard_transformed(std::vector<double>{1, 2, 3}), ValidationError);
    EXPECT_THROW(walsh_hadamard_transformed(std::vector<double>{}), ValidationError);
}

TEST(Wht, TwiceIsScaledIdentity) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (int nv = 1; nv <= 10; ++nv) {
        std::vector<double> v(1u << nv);
        for (auto &x : v) x = g(rng);
        const auto twice = walsh_hadamard_transformed(walsh_hadamard_transformed(v));
        for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(twice[k], v.size() * v[k], 1e-10 * v.size());
    }
}

TEST(Wht, MatchesDirectSignMatrix) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int nv = 1; nv <= 6; ++nv) {
        const std::size_t len = 1u << nv;
        std::vector<double> v(len);
        for (auto &x : v) x = g(rng);
        const auto fast = walsh_hadamard_transformed(v);
        double worst = 0.0, norm = 0.0;
        for (std::size_t t = 0; t < len; ++t) {
            double direct = 0.0;
            for (std::size_t s = 0; s < len; ++s) direct += outcome_sign(s, t) * v[s];
            worst = std::max(worst, std::abs(direct - fast[t]));
            norm = std::max(norm, std::abs(direct));
        }
        EXPECT_LE(worst, 1e-12 * norm);
    }
}

TEST(Wht, ComplexElements) {
    std::vector<std::complex<double>> v{{1, 1}, {0, 2}};
    walsh_hadamard_transform(std::span<std::complex<double>>(v));
    EXPECT_EQ(v[0], std::complex<double>(1, 3));
    EXPECT_EQ(v[1], std::complex<double>(1, -1));
}

}  // namespace
