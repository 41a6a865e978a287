// Copyright 2026 The qfridge Authors
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

#include "qfridge/qmat.h"

#include <cmath>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace qfridge;
using qfridge::testing::matrices_near;
using qfridge::testing::random_matrix;
using qfridge::testing::random_state;

namespace {

ComplexMatrix sigma_x() {
    return ComplexMatrix(2, 2, {0, 1, 1, 0});
}

}  // namespace

TEST(ComplexMatrix, ShapeMismatchThrows) {
    EXPECT_THROW(ComplexMatrix(2, 3, std::vector<Complex>(5)), DimensionError);
    EXPECT_THROW(ComplexMatrix(2, 2) * ComplexMatrix(3, 3), DimensionError);
    EXPECT_THROW(ComplexMatrix(2, 2) + ComplexMatrix(2, 3), DimensionError);
    EXPECT_THROW(ComplexMatrix(2, 3).trace(), DimensionError);
    EXPECT_THROW(matrix_power(ComplexMatrix(2, 3), 2), DimensionError);
}

TEST(ComplexMatrix, AdjointOfAdjointIsIdentity) {
    std::mt19937_64 rng(1);
    const auto m = random_matrix(rng, 3, 5);
    EXPECT_EQ(m.adjoint().adjoint(), m);
    EXPECT_EQ(m.adjoint().rows(), 5u);
}

TEST(Kron, IdentityCase) {
    EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(Kron, TraceIsMultiplicative) {
    const double t[] = {1 / 1.3, 0.3 / 1.3};
    const auto g = ComplexMatrix::diagonal(std::span<const double>(t));
    EXPECT_NEAR(kron(g, g).trace().real(), 1.0, 1e-15);
}

TEST(Kron, SigmaXSquaredIsIdentity) {
    const auto xx = kron(sigma_x(), sigma_x());
    EXPECT_EQ(xx * xx, ComplexMatrix::identity(4));
    EXPECT_EQ(xx(0, 3), Complex(1));
    EXPECT_EQ(xx(1, 2), Complex(1));
    EXPECT_EQ(xx(0, 0), Complex(0));
}

TEST(Kron, MixedProductAndAssociativity) {
    std::mt19937_64 rng(2);
    for (size_t d = 1; d <= 3; d++) {
        const auto a = random_matrix(rng, d, d + 1), b = random_matrix(rng, 2, 3);
        const auto c = random_matrix(rng, d + 1, d), e = random_matrix(rng, 3, 2);
        EXPECT_TRUE(matrices_near(kron(a, b) * kron(c, e), kron(a * c, b * e), 1e-12));
        EXPECT_TRUE(matrices_near(kron(kron(a, b), c), kron(a, kron(b, c)), 1e-12));
    }
}

TEST(PartialTrace, ProductStateFactorizes) {
    std::mt19937_64 rng(3);
    for (size_t da = 1; da <= 8; da++) {
        for (size_t db : {1, 2, 3, 8}) {
            const auto a = random_matrix(rng, da, da), b = random_matrix(rng, db, db);
            const size_t first[] = {0}, second[] = {1};
            EXPECT_TRUE(matrices_near(partial_trace(kron(a, b), {{da, db}}, first), a * b.trace(), 1e-12));
            EXPECT_TRUE(matrices_near(partial_trace(kron(a, b), {{da, db}}, second), b * a.trace(), 1e-12));
        }
    }
}

TEST(PartialTrace, EverythingTracedIsScalarOne) {
    std::mt19937_64 rng(4);
    const auto rho = random_state(rng, 6);
    const auto s = partial_trace(rho.matrix(), {{2, 3}}, {});
    ASSERT_EQ(s.rows(), 1u);
    EXPECT_NEAR(s(0, 0).real(), 1.0, 1e-14);
}

TEST(PartialTrace, BellStateHalvesAreMaximallyMixed) {
    ComplexMatrix bell(4, 4);
    for (size_t i : {0, 3}) {
        for (size_t j : {0, 3}) {
            bell(i, j) = 0.5;
        }
    }
    const auto half = ComplexMatrix::identity(2) * Complex(0.5);
    const size_t first[] = {0}, second[] = {1};
    EXPECT_EQ(partial_trace(bell, {{2, 2}}, first), half);
    EXPECT_EQ(partial_trace(bell, {{2, 2}}, second), half);
}

TEST(PartialTrace, MiddleSubsystemOfThree) {
    std::mt19937_64 rng(5);
    const auto a = random_matrix(rng, 2, 2), b = random_matrix(rng, 3, 3), c = random_matrix(rng, 2, 2);
    const size_t keep[] = {1};
    EXPECT_TRUE(matrices_near(partial_trace(kron(kron(a, b), c), {{2, 3, 2}}, keep), b * (a.trace() * c.trace()),
                              1e-12));
    const size_t outer[] = {0, 2};
    EXPECT_TRUE(matrices_near(partial_trace(kron(kron(a, b), c), {{2, 3, 2}}, outer), kron(a, c) * b.trace(), 1e-12));
}

TEST(PartialTrace, BadShapesThrow) {
    const size_t keep[] = {0};
    EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), {{2, 3}}, keep), DimensionError);
    const size_t out_of_range[] = {2};
    EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), {{2, 2}}, out_of_range), DimensionError);
}

TEST(ReplaceSubsystem, SwapsOneFactor) {
    std::mt19937_64 rng(6);
    const auto a = random_state(rng, 2).matrix(), b = random_state(rng, 3).matrix(), c = random_state(rng, 2).matrix();
    const auto r = random_state(rng, 3).matrix();
    EXPECT_TRUE(matrices_near(replace_subsystem(kron(kron(a, b), c), {{2, 3, 2}}, 1, r), kron(kron(a, r), c), 1e-12));
    EXPECT_THROW(replace_subsystem(kron(a, b), {{2, 3}}, 1, a), DimensionError);
    EXPECT_THROW(replace_subsystem(kron(a, b), {{2, 3}}, 2, b), DimensionError);
}

TEST(PauliBasis, QubitIsIXYZ) {
    const auto p = pauli_basis(2);
    ASSERT_EQ(p.size(), 4u);
    EXPECT_EQ(p[0], ComplexMatrix::identity(2));
    EXPECT_EQ(p[1], sigma_x());
    EXPECT_EQ(p[2], ComplexMatrix(2, 2, {0, Complex(0, -1), Complex(0, 1), 0}));
    EXPECT_EQ(p[3], ComplexMatrix(2, 2, {1, 0, 0, -1}));
}

TEST(PauliBasis, TwirlGivesTraceTimesIdentity) {
    std::mt19937_64 rng(7);
    for (size_t d : {2, 3, 4}) {
        const auto t = random_matrix(rng, d, d);
        ComplexMatrix sum(d, d);
        for (const auto &u : pauli_basis(d)) {
            sum += sandwich(u, t);
        }
        EXPECT_TRUE(matrices_near(sum, ComplexMatrix::identity(d) * (Complex(double(d)) * t.trace()), 1e-12)) << d;
    }
}

TEST(PauliBasis, OrthogonalAndUnitary) {
    for (size_t d : {3, 5}) {
        const auto p = pauli_basis(d);
        ASSERT_EQ(p.size(), d * d);
        for (size_t i = 0; i < p.size(); i++) {
            EXPECT_TRUE(matrices_near(p[i] * p[i].adjoint(), ComplexMatrix::identity(d), 1e-12));
            for (size_t j = 0; j < p.size(); j++) {
                EXPECT_NEAR(std::abs((p[i].adjoint() * p[j]).trace() - Complex(i == j ? double(d) : 0.0)), 0, 1e-12);
            }
        }
    }
    EXPECT_THROW(pauli_basis(1), DimensionError);
}

TEST(MatrixPower, MatchesRepeatedProduct) {
    std::mt19937_64 rng(8);
    const auto m = random_matrix(rng, 3, 3);
    EXPECT_EQ(matrix_power(m, 0), ComplexMatrix::identity(3));
    EXPECT_TRUE(matrices_near(matrix_power(m, 5), m * m * m * m * m, 1e-10));
}

TEST(SqrtDiagonal, SquaresBack) {
    const double v[] = {0.25, 0.0, 0.49};
    const auto d = ComplexMatrix::diagonal(std::span<const double>(v));
    const auto s = sqrt_diagonal(d);
    EXPECT_EQ(s(0, 0), Complex(0.5));
    EXPECT_TRUE(matrices_near(s * s, d, 1e-15));
    const double neg[] = {1.0, -0.1};
    EXPECT_THROW(sqrt_diagonal(ComplexMatrix::diagonal(std::span<const double>(neg))), std::domain_error);
    EXPECT_THROW(sqrt_diagonal(ComplexMatrix(2, 2, {1, 1, 0, 1})), DimensionError);
}

TEST(Predicates, HermitianAndDiagonal) {
    EXPECT_TRUE(is_hermitian(sigma_x()));
    EXPECT_FALSE(is_hermitian(ComplexMatrix(2, 2, {0, 1, 0, 0})));
    EXPECT_TRUE(is_diagonal(ComplexMatrix::identity(3)));
    EXPECT_FALSE(is_diagonal(sigma_x()));
}

TEST(DensityMatrix, Validation) {
    EXPECT_NO_THROW(DensityMatrix(ComplexMatrix::identity(2) * Complex(0.5)));
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix(2, 2, {0.5, 0.3, 0.1, 0.5})), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix(2, 3)), DimensionError);
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(4) * Complex(0.25), {{2, 3}}), DimensionError);
    EXPECT_THROW(DensityMatrix::normalized(ComplexMatrix(2, 2)), std::invalid_argument);
}

TEST(DensityMatrix, DefaultShapeIsSingleFactor) {
    const DensityMatrix rho(ComplexMatrix::identity(3) * Complex(1.0 / 3));
    EXPECT_EQ(rho.shape().dims, std::vector<size_t>{3});
    EXPECT_EQ(rho.shape().total(), 3u);
    EXPECT_DOUBLE_EQ(rho.population(2), 1.0 / 3);
}
