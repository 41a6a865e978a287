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

#include "qfridge/cswap.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gtest/gtest.h"

#include "oracle_values.h"
#include "qfridge/nswitch.h"
#include "test_util.h"

using namespace qfridge;
using qfridge::testing::matrices_near;

namespace {

double excited(const ComplexMatrix &m) {
    return m(1, 1).real() / m.trace().real();
}

CswapBranches measured(size_t n, double r) {
    return cswap_branches(cswap_evolve(n, r), build_basis(n));
}

}  // namespace

TEST(CswapEvolve, ShapeAndInvariants) {
    const auto s = cswap_evolve(3, 0.4);
    EXPECT_TRUE(s.has_control());
    EXPECT_EQ(s.qubit_count(), 4u);
    EXPECT_EQ(s.joint.shape().dims, (std::vector<size_t>{3, 2, 2, 2, 2}));
    EXPECT_NEAR(s.joint.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_hermitian(s.joint.matrix()));
}

TEST(CswapEvolve, LocalMarginalsStayThermal) {
    const auto t = gibbs_state(ThermalSpec::Qubit(0.3)).matrix();
    const auto s = cswap_evolve(4, 0.3);
    for (size_t q = 0; q < 5; q++) {
        EXPECT_TRUE(matrices_near(qubit_marginal(s, q), t, 1e-12)) << q;
    }
}

TEST(CswapEvolve, InfiniteTemperatureQubitsMaximallyMixed) {
    const auto s = cswap_evolve(2, 1.0);
    const size_t qubits[] = {1, 2, 3};
    EXPECT_TRUE(matrices_near(partial_trace(s.joint.matrix(), s.joint.shape(), qubits),
                              ComplexMatrix::identity(8) * Complex(0.125), 1e-12));
}

TEST(CswapEvolve, RejectsOutOfRangeN) {
    EXPECT_THROW(cswap_evolve(1, 0.3), std::invalid_argument);
    EXPECT_THROW(cswap_evolve(kCswapMaxReservoirs + 1, 0.3), std::invalid_argument);
}

TEST(CswapBranches, TargetMarginalMatchesSwitchCoolingBranch) {
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.1, 0.5, 0.9}) {
            const auto br = measured(n, r);
            const auto s = branch_stats(n, ThermalSpec::Qubit(r));
            EXPECT_TRUE(matrices_near(qubit_marginal(br.cooling, 0), s.rho_c.matrix(), 1e-10));
            EXPECT_NEAR(br.p_c, s.p_c, 1e-12);
            EXPECT_NEAR(br.p_H, s.p_H, 1e-12);
            EXPECT_FALSE(br.cooling.has_control());
            EXPECT_EQ(br.cooling.branch, CswapBranch::cooling);
            EXPECT_EQ(br.heating.branch, CswapBranch::heating);
        }
    }
}

TEST(CswapBranches, TwoReservoirsShareTheTargetMarginal) {
    const auto br = measured(2, 0.3);
    EXPECT_TRUE(matrices_near(qubit_marginal(br.cooling, 1), qubit_marginal(br.cooling, 0), 1e-12));
    const auto t = gibbs_state(ThermalSpec::Qubit(0.3)).matrix();
    EXPECT_TRUE(
        matrices_near(qubit_marginal(br.cooling, 0), DensityMatrix::normalized(t + t * t * t).matrix(), 1e-12));
}

TEST(CswapBranches, ClosedFormMarginals) {
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.2, 0.5}) {
            const auto br = measured(n, r);
            const Complex inv(1 / br.p_c);
            EXPECT_TRUE(
                matrices_near(qubit_marginal(br.cooling, 0), target_cooling_marginal_closed_form(n, r) * inv, 1e-10));
            for (size_t q = 1; q <= n; q++) {
                EXPECT_TRUE(matrices_near(qubit_marginal(br.cooling, q),
                                          reservoir_cooling_marginal_closed_form(n, r) * inv, 1e-10));
            }
        }
    }
}

TEST(CswapBranches, ThreeReservoirsHalfTemperature) {
    const auto br = measured(3, 0.5);
    EXPECT_NEAR(br.p_c, oracle::kCswapN3R05Pc, 1e-12);
    EXPECT_NEAR(excited(qubit_marginal(br.cooling, 0)), oracle::kCswapN3R05TargetExcited, 1e-12);
    EXPECT_NEAR(excited(qubit_marginal(br.cooling, 2)), oracle::kCswapN3R05ReservoirExcited, 1e-12);
}

TEST(CswapBranches, Errors) {
    const auto br = measured(2, 0.3);
    EXPECT_THROW(cswap_branches(br.cooling, build_basis(2)), std::invalid_argument);
    EXPECT_THROW(cswap_branches(cswap_evolve(3, 0.3), build_basis(2)), DimensionError);
    EXPECT_THROW(qubit_marginal(br.cooling, 3), std::invalid_argument);
}

TEST(CswapEnergyIdentity, HoldsAcrossGrid) {
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.1, 0.4, 0.9}) {
            const auto e = cswap_energy_identity(n, r);
            EXPECT_NEAR(e.lhs, e.rhs, 1e-10) << n << " " << r;
        }
    }
    const auto hot = cswap_energy_identity(3, 1.0);
    EXPECT_NEAR(hot.lhs, 0, 1e-15);
    EXPECT_NEAR(hot.rhs, 0, 1e-15);
}

TEST(CswapTripling, SimulatedAndClosedForm) {
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.1, 0.3, 0.6, 0.9}) {
            const auto shifts = cswap_weighted_shifts(n, r);
            ASSERT_EQ(shifts.size(), n + 1);
            const double total = std::accumulate(shifts.begin(), shifts.end(), 0.0);
            EXPECT_NEAR(total / shifts[0], 3.0, 3e-9);
            EXPECT_NEAR(cswap_total_weighted_energy(n, r) / weighted_energy(n, 2, r).heating, 3.0, 3e-9);
            EXPECT_NEAR(-shifts[0], weighted_energy(n, 2, r).heating, 1e-12);
        }
    }
}

TEST(SequentialDiscard, CumulativeHeatTriplesTargetDeficit) {
    const double r = 0.5;
    const auto spec = ThermalSpec::Qubit(r);
    const auto br = measured(3, r);
    const size_t order[] = {0, 1, 2, 3};
    const auto snaps = sequential_discard(br.cooling, order, spec);
    double total = 0;
    for (const auto &s : snaps) {
        total += s.heat;
    }
    EXPECT_NEAR(total / snaps[0].heat, 3.0, 1e-9);
}

TEST(SequentialDiscard, EveryOrderGivesTheSameMarginalsAndHeat) {
    for (size_t n = 2; n <= 4; n++) {
        const double r = 0.35;
        const auto spec = ThermalSpec::Qubit(r);
        const double t1 = spec.populations()[1];
        const auto br = measured(n, r);
        std::vector<double> initial;
        for (size_t q = 0; q <= n; q++) {
            initial.push_back(excited(qubit_marginal(br.cooling, q)));
        }
        std::vector<size_t> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        double reference = std::nan("");
        do {
            const auto snaps = sequential_discard(br.cooling, order, spec);
            std::vector<bool> gone(n + 1, false);
            double total = 0;
            for (const auto &s : snaps) {
                gone[s.qubit] = true;
                total += s.heat;
                for (size_t q = 0; q <= n; q++) {
                    EXPECT_NEAR(s.p_excited[q], gone[q] ? t1 : initial[q], 1e-10);
                }
            }
            if (std::isnan(reference)) {
                reference = total;
            }
            EXPECT_NEAR(total, reference, 1e-12);
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST(SequentialDiscard, InfiniteTemperatureMovesNoHeat) {
    const auto br = measured(2, 1.0);
    const size_t order[] = {2, 0, 1};
    for (const auto &s : sequential_discard(br.cooling, order, ThermalSpec::Qubit(1.0))) {
        EXPECT_NEAR(s.heat, 0.0, 1e-15);
    }
}

TEST(SequentialDiscard, Errors) {
    const auto spec = ThermalSpec::Qubit(0.3);
    const auto br = measured(2, 0.3);
    const size_t repeated[] = {0, 0};
    const size_t out_of_range[] = {3};
    EXPECT_THROW(sequential_discard(br.cooling, repeated, spec), std::invalid_argument);
    EXPECT_THROW(sequential_discard(br.cooling, out_of_range, spec), std::invalid_argument);
    const size_t ok[] = {0};
    EXPECT_THROW(sequential_discard(cswap_evolve(2, 0.3), ok, spec), std::invalid_argument);
    EXPECT_THROW(sequential_discard(br.cooling, ok, ThermalSpec::Degenerate(3, 0.3)), DimensionError);
}

TEST(DiscardCsv, HeaderAndRows) {
    const auto br = measured(2, 0.3);
    const size_t order[] = {1, 0, 2};
    const auto csv = discard_csv(sequential_discard(br.cooling, order, ThermalSpec::Qubit(0.3)));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
    EXPECT_EQ(csv.rfind("step,qubit,", 0), 0u);
}
