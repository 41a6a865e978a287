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

#include "qfridge/measurement.h"

#include <cmath>

#include "gtest/gtest.h"

#include "oracle_values.h"
#include "qfridge/nswitch.h"
#include "test_util.h"

using namespace qfridge;
using qfridge::testing::matrices_near;
using qfridge::testing::random_state;

TEST(BuildBasis, TwoIsPlusMinus) {
    const auto b = build_basis(2);
    const double s = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(b.vectors[0][0] - Complex(s)), 0, 1e-15);
    EXPECT_NEAR(std::abs(b.vectors[0][1] - Complex(s)), 0, 1e-15);
    EXPECT_NEAR(std::abs(b.vectors[1][0] - Complex(s)), 0, 1e-15);
    EXPECT_NEAR(std::abs(b.vectors[1][1] + Complex(s)), 0, 1e-15);
}

TEST(BuildBasis, ThreeMatchesHelmertRows) {
    const auto b = build_basis(3);
    const double a = 1 / std::sqrt(2.0), c = 1 / std::sqrt(6.0);
    const std::vector<Complex> phi1 = {a, -a, 0}, phi2 = {c, c, -2 * c};
    for (size_t i = 0; i < 3; i++) {
        EXPECT_NEAR(std::abs(b.vectors[1][i] - phi1[i]), 0, 1e-15);
        EXPECT_NEAR(std::abs(b.vectors[2][i] - phi2[i]), 0, 1e-15);
    }
}

TEST(BuildBasis, GramAndCompletenessUpTo64) {
    for (size_t n = 2; n <= 64; n++) {
        const auto b = build_basis(n);
        EXPECT_TRUE(matrices_near(b.gram(), ComplexMatrix::identity(n), 1e-12)) << n;
        EXPECT_TRUE(matrices_near(b.completeness(), ComplexMatrix::identity(n), 1e-12)) << n;
    }
    EXPECT_THROW(build_basis(1), std::invalid_argument);
}

TEST(HadamardBasis, SignsAndOrthonormality) {
    const auto b = hadamard_basis(3);
    EXPECT_EQ(b.n, 8u);
    EXPECT_TRUE(matrices_near(b.gram(), ComplexMatrix::identity(8), 1e-12));
    // entry (x=3, y=5): x.y = popcount(011 & 101) = 1.
    EXPECT_NEAR(b.vectors[3][5].real(), -1 / std::sqrt(8.0), 1e-15);
    EXPECT_THROW(hadamard_basis(0), std::invalid_argument);
}

TEST(MeasureControl, TwoChannelsTenPercent) {
    const auto t = gibbs_state(ThermalSpec::Qubit(0.1));
    const auto m = measure_control(switch_closed_form(2, t, t), build_basis(2));
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].label, BranchLabel::cooling);
    EXPECT_EQ(m[1].label, BranchLabel::heating);
    EXPECT_NEAR(m[1].probability, 3 * 0.1 / (2 * 1.21), 1e-12);
    EXPECT_NEAR(m[1].probability, oracle::kPerHeatingN2R01, 1e-12);
    const auto tm = t.matrix();
    EXPECT_TRUE(matrices_near(m[0].state->matrix(), DensityMatrix::normalized(tm + tm * tm * tm).matrix(), 1e-12));
}

TEST(MeasureControl, InfiniteTemperatureStatesAreMixed) {
    const auto t = gibbs_state(ThermalSpec::Qubit(1.0));
    for (const auto &o : measure_control(switch_closed_form(3, t, t), build_basis(3))) {
        EXPECT_TRUE(matrices_near(o.state->matrix(), ComplexMatrix::identity(2) * Complex(0.5), 1e-12));
    }
}

TEST(MeasureControl, HeatingStateMatchesBranchStats) {
    const auto spec = ThermalSpec::Qubit(0.5);
    const auto t = gibbs_state(spec);
    const auto m = measure_control(switch_closed_form(5, t, t), build_basis(5));
    EXPECT_TRUE(matrices_near(m[1].state->matrix(), branch_stats(5, spec).rho_h.matrix(), 1e-12));
    const auto tm = t.matrix();
    EXPECT_TRUE(matrices_near(m[1].state->matrix(), DensityMatrix::normalized(tm - tm * tm * tm).matrix(), 1e-12));
}

TEST(MeasureControl, DimensionMismatchThrows) {
    const auto t = gibbs_state(ThermalSpec::Qubit(0.5));
    EXPECT_THROW(measure_control(switch_closed_form(3, t, t), build_basis(4)), DimensionError);
}

TEST(MeasureControlFine, HeatingOutcomesAreIdentical) {
    std::mt19937_64 rng(1);
    for (size_t n : {3, 6, 11}) {
        const auto out = switch_closed_form(n, random_state(rng, 3), gibbs_state(ThermalSpec::Degenerate(3, 0.4)));
        const auto fine = measure_control_fine(out, build_basis(n));
        ASSERT_EQ(fine.size(), n);
        double total = 0;
        for (const auto &o : fine) {
            total += o.probability;
            if (o.index > 0) {
                EXPECT_EQ(o.label, BranchLabel::heating);
                EXPECT_TRUE(matrices_near(o.state->matrix(), fine[1].state->matrix(), 1e-12));
                EXPECT_NEAR(o.probability, fine[1].probability, 1e-12);
            }
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(MeasureControlFine, ZeroProbabilityOutcomesHaveNoState) {
    // Zero temperature with a ground input: every heating outcome vanishes.
    const DensityMatrix ground(ComplexMatrix(2, 2, {1, 0, 0, 0}));
    const auto out = switch_closed_form(3, ground, ground);
    const auto fine = measure_control_fine(out, build_basis(3));
    EXPECT_NEAR(fine[0].probability, 1.0, 1e-15);
    EXPECT_FALSE(fine[1].state.has_value());
}

TEST(PovmAncilla, SingleQubitIsPlusMinus) {
    const auto t = gibbs_state(ThermalSpec::Qubit(0.3));
    const auto out = switch_closed_form(2, t, t);
    const auto p = povm_ancilla_scheme(1, out);
    const auto m = measure_control(out, build_basis(2));
    EXPECT_NEAR(p.cooling.probability, m[0].probability, 1e-12);
    EXPECT_TRUE(matrices_near(p.heating.state->matrix(), m[1].state->matrix(), 1e-12));
}

TEST(PovmAncilla, TwoQubitsMatchFourOutcomeBasis) {
    const auto t = gibbs_state(ThermalSpec::Qubit(0.5));
    const auto out = switch_closed_form(4, t, t);
    const auto p = povm_ancilla_scheme(2, out);
    const auto m = measure_control(out, build_basis(4));
    EXPECT_NEAR(p.cooling.probability, m[0].probability, 1e-12);
    EXPECT_NEAR(p.heating.probability, m[1].probability, 1e-12);
    EXPECT_THROW(povm_ancilla_scheme(3, out), std::invalid_argument);
}

TEST(PovmAncilla, EntropyIdentity) {
    for (size_t m = 1; m <= 4; m++) {
        for (double r : {0.2, 0.7}) {
            const size_t n = size_t{1} << m;
            const auto t = gibbs_state(ThermalSpec::Qubit(r));
            const auto e = povm_ancilla_scheme(m, switch_closed_form(n, t, t)).entropies;
            EXPECT_NEAR(e.full, e.ancilla + e.p_H * e.control, 1e-10);
            EXPECT_NEAR(e.control, std::log(double(n - 1)), 1e-10);
        }
    }
}

TEST(ShannonEntropy, Basics) {
    EXPECT_EQ(shannon_entropy({1.0, 0.0}), 0.0);
    EXPECT_NEAR(shannon_entropy({0.5, 0.5}), std::log(2.0), 1e-15);
    EXPECT_NEAR(shannon_entropy({0.625, 0.375}), oracle::kRegisterEntropyN2R1, 1e-15);
}

TEST(BasisJson, ListsVectors) {
    const auto j = basis_json(build_basis(3));
    ASSERT_EQ(j.size(), 3u);
    EXPECT_NEAR(j[2][2][0].get<double>(), -2 / std::sqrt(6.0), 1e-15);
    EXPECT_EQ(j[2][2][1].get<double>(), 0.0);
}
