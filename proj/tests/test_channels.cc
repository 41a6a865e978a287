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

#include "qfridge/channels.h"

#include <cmath>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace qfridge;
using qfridge::testing::matrices_near;
using qfridge::testing::random_state;

TEST(Depolarizing, PureStateGoesToMaximallyMixed) {
    const DensityMatrix zero(ComplexMatrix(2, 2, {1, 0, 0, 0}));
    EXPECT_TRUE(matrices_near(apply_channel(depolarizing_kraus(2), zero).matrix(),
                              ComplexMatrix::identity(2) * Complex(0.5), 1e-15));
}

TEST(Depolarizing, MaximallyMixedIsFixed) {
    const auto mixed = ComplexMatrix::identity(3) * Complex(1.0 / 3);
    EXPECT_TRUE(matrices_near(apply_channel(depolarizing_kraus(3), mixed), mixed, 1e-15));
}

TEST(Depolarizing, RandomQutritGoesToIdentityOverThree) {
    std::mt19937_64 rng(1);
    EXPECT_TRUE(matrices_near(apply_channel(depolarizing_kraus(3), random_state(rng, 3)).matrix(),
                              ComplexMatrix::identity(3) * Complex(1.0 / 3), 1e-12));
}

TEST(Thermalizing, AnyInputGivesGibbs) {
    std::mt19937_64 rng(2);
    const auto spec = ThermalSpec::Qubit(0.3);
    const auto k = thermalizing_kraus(spec);
    const double p[] = {1 / 1.3, 0.3 / 1.3};
    const auto expect = ComplexMatrix::diagonal(std::span<const double>(p));
    for (int i = 0; i < 100; i++) {
        EXPECT_TRUE(matrices_near(apply_channel(k, random_state(rng, 2)).matrix(), expect, 1e-12));
    }
    EXPECT_TRUE(matrices_near(apply_channel(k, gibbs_state(spec)).matrix(), expect, 1e-15));
}

TEST(Thermalizing, InputIndependentForQutritsAndNondegenerateLevels) {
    std::mt19937_64 rng(3);
    for (const auto &spec : {ThermalSpec::Degenerate(3, 0.6), ThermalSpec({1.0, 2.0}, {0.5, 0.25})}) {
        const auto k = thermalizing_kraus(spec);
        const auto first = apply_channel(k, random_state(rng, 3)).matrix();
        for (int i = 0; i < 100; i++) {
            EXPECT_TRUE(matrices_near(apply_channel(k, random_state(rng, 3)).matrix(), first, 1e-12));
        }
        EXPECT_TRUE(matrices_near(first, gibbs_state(spec).matrix(), 1e-12));
    }
}

TEST(Thermalizing, CompletenessAndStructure) {
    for (size_t d : {2, 3}) {
        for (double r : {0.01, 0.4, 1.0}) {
            const auto k = thermalizing_kraus(ThermalSpec::Degenerate(d, r));
            EXPECT_EQ(k.operators.size(), d * d);
            EXPECT_EQ(k.dim(), d);
            EXPECT_LE(k.completeness_error(), 1e-12);
            EXPECT_NO_THROW(k.validate());
        }
    }
    const auto a = sqrt_diagonal(gibbs_state(ThermalSpec::Qubit(0.5)).matrix());
    EXPECT_TRUE(matrices_near(thermalizing_kraus(ThermalSpec::Qubit(0.5)).operators[0], a * Complex(1 / std::sqrt(2.0)),
                              1e-15));
}

TEST(ApplyChannel, IdentityKrausLeavesStateAlone) {
    std::mt19937_64 rng(4);
    const auto rho = random_state(rng, 2);
    const KrausSet id{{ComplexMatrix::identity(2)}, "identity"};
    EXPECT_EQ(apply_channel(id, rho).matrix(), rho.matrix());
}

TEST(ApplyChannel, ThermalizingIsIdempotent) {
    std::mt19937_64 rng(5);
    const auto k = thermalizing_kraus(ThermalSpec::Degenerate(3, 0.2));
    const auto once = apply_channel(k, random_state(rng, 3));
    EXPECT_TRUE(matrices_near(apply_channel(k, once).matrix(), once.matrix(), 1e-12));
}

TEST(ApplyChannel, Errors) {
    EXPECT_THROW(apply_channel(KrausSet{}, ComplexMatrix::identity(2)), std::invalid_argument);
    EXPECT_THROW(apply_channel(depolarizing_kraus(2), ComplexMatrix::identity(3)), DimensionError);
}

TEST(KrausSet, ValidateRejectsBrokenSets) {
    EXPECT_THROW(KrausSet{}.validate(), std::invalid_argument);
    EXPECT_THROW((KrausSet{{ComplexMatrix::identity(2), ComplexMatrix::identity(3)}, "mixed"}.validate()),
                 DimensionError);
    EXPECT_THROW((KrausSet{{ComplexMatrix::identity(2) * Complex(0.5)}, "lossy"}.validate()), std::invalid_argument);
}

TEST(TransformationMatrix, GroundEnvironmentGivesScaledAmplitudeDamping) {
    const auto spec = ThermalSpec::Qubit(0.4);
    const auto k = thermalizing_kraus(spec);
    const Complex overlaps[] = {1, 0, 0, 0};
    const auto m = transformation_matrix(k, overlaps);
    const auto a = sqrt_diagonal(gibbs_state(spec).matrix());
    EXPECT_TRUE(matrices_near(m.m, a * Complex(1 / std::sqrt(2.0)), 1e-15));
    EXPECT_TRUE(m.obtainable);
}

TEST(TransformationMatrix, OrthogonalEnvironmentGivesZero) {
    const auto k = thermalizing_kraus(ThermalSpec::Qubit(0.4));
    const Complex overlaps[] = {0, 0, 0, 0};
    const auto m = transformation_matrix(k, overlaps);
    EXPECT_EQ(m.m, ComplexMatrix(2, 2));
    EXPECT_EQ(m.constraint_value, 0.0);
    EXPECT_TRUE(m.obtainable);
}

TEST(TransformationMatrix, ConstraintIsHalfTraceOfTSquared) {
    for (int i = 1; i <= 20; i++) {
        const double r = i / 20.0;
        const auto spec = ThermalSpec::Qubit(r);
        const Complex overlaps[] = {1, 0, 0, 0};
        const auto m = transformation_matrix(thermalizing_kraus(spec), overlaps);
        const auto t = gibbs_state(spec).matrix();
        EXPECT_NEAR(m.constraint_value, 0.5 * (t * t).trace().real(), 1e-15);
        EXPECT_LE(m.constraint_value, 0.5);
        if (r < 1) {
            EXPECT_LT(m.constraint_value, 0.5);
        }
    }
}

TEST(TransformationMatrix, OverNormalizedOrBoundBreakingOverlapsAreFlagged) {
    const auto k = thermalizing_kraus(ThermalSpec::Qubit(0.01));
    const Complex too_long[] = {1, 1, 0, 0};
    EXPECT_FALSE(transformation_matrix(k, too_long).obtainable);
    // Normalized, yet concentrated on the ground level: tr(M^dag T M) = p0^2 > 1/2.
    const Complex concentrated[] = {1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)};
    const auto m = transformation_matrix(k, concentrated);
    EXPECT_FALSE(m.obtainable);
    EXPECT_NEAR(m.constraint_value, std::pow(1 / 1.01, 2), 1e-12);
    const Complex wrong_count[] = {1, 0};
    EXPECT_THROW(transformation_matrix(k, wrong_count), DimensionError);
}

TEST(Json, MatrixRoundTrip) {
    std::mt19937_64 rng(6);
    const auto m = qfridge::testing::random_matrix(rng, 2, 3);
    const auto j = matrix_to_json(m);
    EXPECT_EQ(j[0], 2);
    EXPECT_EQ(j[1], 3);
    EXPECT_EQ(matrix_from_json(j), m);
    EXPECT_THROW(matrix_from_json(nlohmann::json::parse("[2, 2, [1, 0]]")), DimensionError);
    EXPECT_THROW(matrix_from_json(nlohmann::json::parse("{\"a\": 1}")), std::invalid_argument);
}

TEST(Json, KrausRoundTrip) {
    const auto k = thermalizing_kraus(ThermalSpec::Degenerate(3, 0.3));
    const auto back = kraus_from_json(kraus_to_json(k));
    EXPECT_EQ(back.label, k.label);
    ASSERT_EQ(back.operators.size(), k.operators.size());
    for (size_t i = 0; i < k.operators.size(); i++) {
        EXPECT_EQ(back.operators[i], k.operators[i]);
    }
}
