// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "test_support.hpp"

#include <dicke/angular.hpp>
#include <dicke/spin_basis.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace dicke;
using dicke::testing::ket;

namespace {

constexpr double kTol = 1e-12;

void expect_state_near(const FullState& a, const FullState& b, double tol = kTol) {
    ASSERT_EQ(a.q, b.q);
    EXPECT_LT(max_abs_diff(a, b), tol);
}

} // namespace

TEST(ProductState, TwoRowConvention) {
    const FullState s11 = product_state({1, 1});
    EXPECT_EQ(s11.q, 2);
    EXPECT_EQ(s11[0b01], cplx(1.0));
    EXPECT_DOUBLE_EQ(norm(s11), 1.0);

    const FullState s02 = product_state({0, 2});
    EXPECT_EQ(s02[0b00], cplx(1.0));
    EXPECT_DOUBLE_EQ(norm(s02), 1.0);

    const FullState s22 = product_state({2, 2});
    EXPECT_EQ(s22[0b0011], cplx(1.0));
    EXPECT_DOUBLE_EQ(norm(s22), 1.0);
}

TEST(ProductState, CapacityAndArguments) {
    EXPECT_THROW(product_state({13, 12}), CapacityError);
    EXPECT_THROW(product_state({2, 3}, 4), CapacityError);
    EXPECT_THROW(product_state({-1, 3}), ArgumentError);
}

TEST(BasisState, MagnetizationFromPopcount) {
    EXPECT_DOUBLE_EQ((BasisState{0b011, 3}).m_tot(), 0.5);
    EXPECT_DOUBLE_EQ((BasisState{0, 3}).m_tot(), -1.5);
    EXPECT_FALSE((BasisState{0b1000, 3}).is_valid());
}

TEST(Lowering, Examples) {
    expect_state_near(apply_lowering(ket("ud")), ket("dd"));
    const FullState singlet = (1.0 / std::sqrt(2.0)) * (ket("ud") - ket("du"));
    EXPECT_LT(max_abs(apply_lowering(singlet)), kTol);
    expect_state_near(apply_lowering(ket("uu")), ket("du") + ket("ud"));
}

TEST(Raising, Examples) {
    expect_state_near(apply_raising(ket("dd")), ket("ud") + ket("du"));
    EXPECT_LT(max_abs(apply_raising(ket("uu"))), kTol);
}

TEST(Sz, Examples) {
    EXPECT_LT(max_abs(apply_sz(ket("ud"))), kTol);
    expect_state_near(apply_sz(ket("uu")), ket("uu"));
    expect_state_near(apply_sz(ket("ddd")), -1.5 * ket("ddd"));
}

TEST(SSquared, Examples) {
    const FullState singlet = (1.0 / std::sqrt(2.0)) * (ket("ud") - ket("du"));
    EXPECT_LT(max_abs(apply_s_squared(singlet)), kTol);
    expect_state_near(apply_s_squared(ket("uu")), 2.0 * ket("uu"));
}

// Oracle: dense 16x16 S^2 from Kronecker products; every P=4 Dicke state has eigenvalue 6.
TEST(SSquared, SymmetricFourSpinStatesAgainstDenseOracle) {
    const auto ops = dicke::testing::dense_spin_ops(4);
    for (int k = 0; k <= 4; ++k) {
        const FullState d = symmetric_dicke_state(4, k, Row::top, {4, 0});
        const Eigen::VectorXcd dense = ops.s2 * dicke::testing::to_eigen(d);
        EXPECT_LT((dense - 6.0 * dicke::testing::to_eigen(d)).cwiseAbs().maxCoeff(), kTol);
        expect_state_near(apply_s_squared(d), 6.0 * d);
    }
}

TEST(InnerProduct, Basics) {
    EXPECT_EQ(inner_product(ket("ud"), ket("ud")), cplx(1.0));
    EXPECT_EQ(inner_product(ket("ud"), ket("du")), cplx(0.0));
    EXPECT_THROW(normalize(FullState::zeros(3)), ArgumentError);
    EXPECT_THROW(inner_product(ket("ud"), ket("udd")), ArgumentError);
}

TEST(CollectiveOperators, MatchDenseOracleOnRandomStates) {
    for (int q = 1; q <= 7; ++q) {
        const auto ops = dicke::testing::dense_spin_ops(q);
        const FullState psi = dicke::testing::random_state(q, 100 + q);
        const Eigen::VectorXcd v = dicke::testing::to_eigen(psi);
        EXPECT_LT((dicke::testing::to_eigen(apply_raising(psi)) - ops.raise * v).norm(), kTol);
        EXPECT_LT((dicke::testing::to_eigen(apply_lowering(psi)) - ops.lower * v).norm(), kTol);
        EXPECT_LT((dicke::testing::to_eigen(apply_sz(psi)) - ops.sz * v).norm(), kTol);
        EXPECT_LT((dicke::testing::to_eigen(apply_s_squared(psi)) - ops.s2 * v).norm(), 1e-11);
    }
}

TEST(CollectiveOperators, Adjointness) {
    for (int q = 1; q <= 10; ++q)
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const FullState psi = dicke::testing::random_state(q, 2 * seed + 17 * q);
            const FullState phi = dicke::testing::random_state(q, 2 * seed + 1 + 17 * q);
            const cplx lhs = inner_product(phi, apply_lowering(psi));
            const cplx rhs = std::conj(inner_product(psi, apply_raising(phi)));
            EXPECT_LT(std::abs(lhs - rhs), kTol) << "q=" << q;
        }
}

TEST(CollectiveOperators, RaisingLoweringCommutator) {
    for (int q = 1; q <= 10; ++q) {
        const FullState psi = dicke::testing::random_state(q, 900 + q);
        const FullState comm = apply_raising(apply_lowering(psi)) - apply_lowering(apply_raising(psi));
        EXPECT_LT(max_abs_diff(comm, 2.0 * apply_sz(psi)), kTol) << "q=" << q;
    }
}

TEST(CollectiveOperators, SSquaredCommutesWithTranspositions) {
    std::mt19937_64 rng(5);
    for (int q = 2; q <= 9; ++q)
        for (int trial = 0; trial < 4; ++trial) {
            std::uniform_int_distribution<int> pick(0, q - 1);
            const int a = pick(rng);
            int b = pick(rng);
            while (b == a) b = pick(rng);
            const FullState psi = dicke::testing::random_state(q, rng());
            EXPECT_LT(max_abs_diff(apply_s_squared(apply_transposition(psi, a, b)),
                                   apply_transposition(apply_s_squared(psi), a, b)),
                      1e-11);
        }
}

TEST(CollectiveOperators, PopcountSectors) {
    // Start from a state supported on popcount 3 of 6 spins.
    FullState psi = FullState::zeros(6);
    for (std::uint64_t b = 0; b < psi.dim(); ++b)
        if (std::popcount(b) == 3) psi[b] = cplx(std::sin(1.0 + b), std::cos(2.0 * b));
    const FullState z = apply_sz(psi), low = apply_lowering(psi);
    for (std::uint64_t b = 0; b < psi.dim(); ++b) {
        if (std::popcount(b) != 3) {
            EXPECT_EQ(z[b], cplx(0.0));
        }
        if (std::popcount(b) != 2) {
            EXPECT_EQ(low[b], cplx(0.0));
        }
    }
    EXPECT_GT(norm(low), 0.0);
}

TEST(TensorRows, CombinesRowStates) {
    const RowSplit split{1, 2};
    const FullState top = symmetric_dicke_state(1, 0, Row::top, split);     // top up
    const FullState bottom = symmetric_dicke_state(2, 1, Row::bottom, split);  // one bottom up
    const FullState t = tensor_rows(top, bottom, split);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(t[0b011].real(), h, kTol);
    EXPECT_NEAR(t[0b101].real(), h, kTol);
    EXPECT_NEAR(norm(t), 1.0, kTol);
}
