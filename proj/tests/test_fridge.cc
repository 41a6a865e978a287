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

#include "qfridge/fridge.h"

#include <cmath>

#include "gtest/gtest.h"

#include "oracle_values.h"
#include "qfridge/cswap.h"
#include "qfridge/measurement.h"
#include "qfridge/nswitch.h"

using namespace qfridge;

namespace {

CycleOptions asymptote_options(double scale) {
    CycleOptions opt;
    opt.r_floor = 1e-4;
    opt.traj_scale = scale;
    opt.max_cycles = ~0ULL;
    opt.record_every = ~0ULL;
    return opt;
}

}  // namespace

TEST(Scheme, ParseAndPrint) {
    for (Scheme s : {Scheme::ico, Scheme::cswap, Scheme::traj}) {
        EXPECT_EQ(parse_scheme(to_string(s)), s);
    }
    EXPECT_THROW(parse_scheme("switch"), std::invalid_argument);
}

TEST(DiagonalBranches, IcoMatchesSwitchBranches) {
    const auto spec = ThermalSpec::Degenerate(3, 0.4);
    const auto t = spec.populations();
    const std::vector<double> input = {0.5, 0.3, 0.2};
    const auto d = diagonal_branches(Scheme::ico, 4, t, input);
    const double in[] = {0.5, 0.3, 0.2};
    const auto s = switch_branches(4, gibbs_state(spec), DensityMatrix(ComplexMatrix::diagonal(std::span<const double>(in))));
    EXPECT_NEAR(d.p_c, s.p_c, 1e-12);
    for (size_t i = 0; i < 3; i++) {
        EXPECT_NEAR(d.cooling[i], s.rho_c.population(i), 1e-12);
        EXPECT_NEAR(d.heating[i], s.rho_h.population(i), 1e-12);
    }
    EXPECT_THROW(diagonal_branches(Scheme::ico, 4, t, {0.5, 0.5}), DimensionError);
    EXPECT_THROW(diagonal_branches(Scheme::ico, 1, t, input), std::invalid_argument);
}

TEST(BranchEnergetics, FirstLawAcrossSchemes) {
    for (Scheme s : {Scheme::ico, Scheme::traj}) {
        for (size_t n : {2, 5}) {
            for (double r : {0.1, 0.6}) {
                const auto e = branch_energetics(s, n, 2, r);
                EXPECT_NEAR(e.p_c * e.e_c + e.p_H * e.e_h, e.e_t, 1e-14);
            }
        }
    }
}

TEST(HeatingEnergy, ClosedFormsAtReferencePoints) {
    EXPECT_NEAR(heating_energy(Scheme::traj, 2, 0.1), oracle::kTrajN2R01HeatingExcited, 1e-14);
    EXPECT_NEAR(heating_energy(Scheme::traj, 2, 0.5, 1.0), 0.5, 1e-15);
    EXPECT_NEAR(heating_energy(Scheme::traj, 2, 0.0, 1.0), 0.5, 1e-15);
    EXPECT_NEAR(heating_energy(Scheme::ico, 2, 0.3), branch_stats(2, ThermalSpec::Qubit(0.3)).rho_h.population(1), 1e-14);
}

TEST(RegisterEntropy, ReferenceValues) {
    EXPECT_NEAR(register_entropy(2, ThermalSpec::Qubit(1.0), Scheme::ico), oracle::kRegisterEntropyN2R1, 1e-12);
    EXPECT_NEAR(register_entropy(2, ThermalSpec::Qubit(1e-12), Scheme::ico), 0.0, 1e-9);
    const auto spec = ThermalSpec::Qubit(0.4);
    const auto s = branch_stats(8, spec);
    const double coarse = -s.p_c * std::log(s.p_c) - s.p_H * std::log(s.p_H);
    EXPECT_NEAR(register_entropy(8, spec, Scheme::ico), coarse + s.p_H * std::log(7.0), 1e-12);
}

TEST(WorkCost, Landauer) {
    EXPECT_EQ(work_cost(0, 1), 0.0);
    EXPECT_NEAR(work_cost(std::log(2.0), 1), std::log(2.0), 1e-15);
    EXPECT_NEAR(work_cost(oracle::kRegisterEntropyN2R1, 1), 0.6616, 1e-4);
    EXPECT_THROW(work_cost(-1, 1), std::invalid_argument);
    EXPECT_THROW(work_cost(1, 0), std::invalid_argument);
}

TEST(Cop, ReferenceValues) {
    EXPECT_NEAR(cop_normalized(4, 2, 0.3, 0.3, Scheme::ico), oracle::kIcoCopN4R03, 1e-12);
    EXPECT_NEAR(cop_normalized(4, 2, 0.3, 0.2, Scheme::ico), oracle::kIcoCopN4R03Hot02, 1e-12);
    EXPECT_NEAR(cop_normalized(4, 2, 0.3, 0.3, Scheme::cswap), oracle::kCswapCopN4R03, 1e-12);
    EXPECT_NEAR(cop_normalized(4, 2, 0.3, 0.3, Scheme::traj), oracle::kTrajCopN4R03, 1e-12);
    EXPECT_NEAR(cop(4, 2, 0.3, 0.3, 2.5, Scheme::ico), 2.5 * oracle::kIcoCopN4R03, 1e-12);
    EXPECT_THROW(cop(4, 2, 0.3, 0.3, 0, Scheme::ico), std::invalid_argument);
    EXPECT_THROW(cop_normalized(4, 3, 0.3, 0.3, Scheme::cswap), DimensionError);
}

TEST(Cop, ZeroAtHeatingEffectiveRatio) {
    for (Scheme s : {Scheme::ico, Scheme::cswap, Scheme::traj}) {
        for (size_t n : {2, 3, 6}) {
            for (double r : {0.05, 0.3, 0.7}) {
                EXPECT_NEAR(cop_normalized(n, 2, r, heating_effective_r(s, n, 2, r), s), 0.0, 1e-10);
            }
        }
    }
    EXPECT_NEAR(cop_normalized(3, 4, 0.3, heating_effective_r(Scheme::ico, 3, 4, 0.3), Scheme::ico), 0.0, 1e-10);
}

TEST(Cop, NonnegativeBelowWorkingRatioAndZeroAtInfiniteTemperature) {
    for (Scheme s : {Scheme::ico, Scheme::cswap, Scheme::traj}) {
        for (double f : {0.1, 0.5, 1.0}) {
            EXPECT_GE(cop(3, 2, 0.5, 0.5 * f, 1.0, s), 0.0);
        }
        EXPECT_NEAR(cop(3, 2, 1.0, 1.0, 1.0, s), 0.0, 1e-12);
    }
}

TEST(Cop, CswapTriplesIco) {
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.1, 0.3, 0.8}) {
            EXPECT_NEAR(cop_normalized(n, 2, r, r, Scheme::cswap) / cop_normalized(n, 2, r, r, Scheme::ico), 3.0, 3e-9);
        }
    }
}

TEST(HeatingEffectiveR, CswapAveragesAllMediums) {
    const double r = 0.3;
    const size_t n = 3;
    const double x = ThermalSpec::Qubit(r).populations()[1];
    const auto e = branch_energetics(Scheme::ico, n, 2, r);
    const double extracted = cswap_total_weighted_energy(n, r);
    const double target = x + extracted / (double(n + 1) * e.p_H);
    EXPECT_NEAR(degenerate_excited_population(2, heating_effective_r(Scheme::cswap, n, 2, r)), target, 1e-12);
}

TEST(LowestR, ClosedFormReferencePoints) {
    EXPECT_NEAR(lowest_r(Scheme::ico, 0.2, 1), 0.0, 1e-15);
    EXPECT_NEAR(lowest_r(Scheme::ico, 0.6, 1e6), (1 - 2 * 0.6) / (0.6 - 2), 1e-5);
    EXPECT_NEAR(lowest_r(Scheme::ico, 0.6, 1e6), 0.142857, 1e-3);
    EXPECT_EQ(lowest_r(Scheme::traj, 0.25, 1), 0.0);
    for (double r : {0.1, 0.5, 0.95}) {
        EXPECT_EQ(lowest_r(Scheme::traj, r, 1e6), 0.0);
    }
    EXPECT_NEAR(lowest_r(Scheme::ico, 0.6, 1), oracle::kIcoFixedPointK1R06, 1e-12);
    EXPECT_THROW(lowest_r(Scheme::cswap, 0.5, 1), std::invalid_argument);
    EXPECT_THROW(lowest_r(Scheme::ico, 0.5, 0), std::invalid_argument);
    EXPECT_THROW(lowest_r(Scheme::ico, 1.5, 1), std::invalid_argument);
}

TEST(LowestR, FixedPointAgreesWithClosedFormsAtUnitScale) {
    for (Scheme s : {Scheme::ico, Scheme::traj}) {
        for (double k : {0.5, 1.0, 5.0, 100.0}) {
            for (double r : {0.05, 0.35, 0.65, 0.95}) {
                EXPECT_NEAR(lowest_r_fixed_point(s, r, k, 2, 1.0), lowest_r(s, r, k), 1e-9);
            }
        }
    }
    EXPECT_NEAR(lowest_r_fixed_point(Scheme::ico, 0.8, 5), oracle::kIcoFixedPointK5R08, 1e-9);
    EXPECT_NEAR(lowest_r_fixed_point(Scheme::traj, 0.8, 5, 2, 1.0), oracle::kTrajUnitFixedPointK5R08, 1e-9);
}

TEST(LowestR, CertifiedScaleFixedPoints) {
    EXPECT_NEAR(lowest_r_fixed_point(Scheme::traj, 0.8, 5), oracle::kTrajHalfFixedPointK5R08, 1e-9);
    EXPECT_NEAR(lowest_r_fixed_point(Scheme::traj, 0.6, 100), oracle::kTrajHalfFixedPointK100R06, 1e-9);
}

TEST(RunCycles, IcoConvergesToClosedForm) {
    const auto trace = run_cycles(Scheme::ico, {1e10, 1e10, 0.2, 0.2}, 2, 2, 1, asymptote_options(1.0));
    EXPECT_NEAR(trace.final_state.r_cold, lowest_r(Scheme::ico, 0.2, 1), 1e-3);
}

TEST(RunCycles, AsymptotesMatchClosedFormsOnGrid) {
    for (Scheme s : {Scheme::ico, Scheme::traj}) {
        for (double k : {0.5, 5.0, 100.0}) {
            for (double r : {0.15, 0.55, 0.85}) {
                const auto trace = run_cycles(s, {1e10, k * 1e10, r, r}, 2, 2, 3, asymptote_options(1.0));
                EXPECT_NEAR(trace.final_state.r_cold, lowest_r(s, r, k), 1e-3) << to_string(s) << " k=" << k << " r=" << r;
            }
        }
    }
}

TEST(RunCycles, TrajBeatsIcoAtUnitScaleButNotAtCertifiedScale) {
    const auto ico = run_cycles(Scheme::ico, {1e10, 5e10, 0.8, 0.8}, 2, 2, 1, asymptote_options(1.0));
    const auto unit = run_cycles(Scheme::traj, {1e10, 5e10, 0.8, 0.8}, 2, 2, 1, asymptote_options(1.0));
    const auto half = run_cycles(Scheme::traj, {1e10, 5e10, 0.8, 0.8}, 2, 2, 1, asymptote_options(0.5));
    EXPECT_LT(unit.final_state.r_cold, ico.final_state.r_cold);
    EXPECT_GT(half.final_state.r_cold, ico.final_state.r_cold);
    EXPECT_NEAR(half.final_state.r_cold, oracle::kTrajHalfFixedPointK5R08, 1e-3);
}

TEST(RunCycles, InfiniteTemperatureDoesNothing) {
    const auto trace = run_cycles(Scheme::ico, {1e6, 1e6, 1.0, 1.0}, 2, 2, 1);
    EXPECT_EQ(trace.stop, StopReason::tolerance);
    EXPECT_EQ(trace.cycles, 0u);
    EXPECT_NEAR(trace.final_state.r_cold, 1.0, 1e-10);
}

TEST(RunCycles, BudgetStopAndSingleCycleBranches) {
    CycleOptions opt;
    opt.batch_fraction = 0;
    opt.max_cycles = 50;
    const auto trace = run_cycles(Scheme::ico, {1e4, 1e4, 0.5, 0.5}, 3, 2, 9, opt);
    EXPECT_EQ(trace.stop, StopReason::budget);
    EXPECT_EQ(trace.cycles, 50u);
    ASSERT_EQ(trace.records.size(), 50u);
    double work = 0;
    for (const auto &rec : trace.records) {
        EXPECT_TRUE(rec.branch == "cooling" || rec.branch == "heating");
        EXPECT_NEAR(rec.medium_heat, rec.heat_cold + rec.heat_hot, 1e-10);
        EXPECT_GE(rec.work, work);
        work = rec.work;
    }
}

TEST(RunCycles, BookkeepingClosesForBatches) {
    CycleOptions opt;
    opt.max_cycles = 1'000'000;
    const auto trace = run_cycles(Scheme::traj, {1e5, 3e5, 0.4, 0.3}, 2, 2, 4, opt);
    ASSERT_FALSE(trace.records.empty());
    for (const auto &rec : trace.records) {
        EXPECT_NEAR(rec.medium_heat, rec.heat_cold + rec.heat_hot, 1e-10 * std::max(1.0, std::abs(rec.medium_heat)));
    }
}

TEST(RunCycles, DeterministicInSeed) {
    CycleOptions opt;
    opt.max_cycles = 100'000;
    const ReservoirEnsemble ens{1e4, 2e4, 0.5, 0.5};
    const auto a = run_cycles(Scheme::ico, ens, 2, 2, 17, opt);
    const auto b = run_cycles(Scheme::ico, ens, 2, 2, 17, opt);
    const auto c = run_cycles(Scheme::ico, ens, 2, 2, 18, opt);
    EXPECT_EQ(a.csv(), b.csv());
    EXPECT_NE(a.csv(), c.csv());
}

TEST(RunCycles, RecordEveryKeepsFirstAndLast) {
    CycleOptions opt;
    opt.batch_fraction = 0;
    opt.max_cycles = 25;
    opt.record_every = 10;
    const auto trace = run_cycles(Scheme::ico, {1e4, 1e4, 0.5, 0.5}, 2, 2, 2, opt);
    ASSERT_EQ(trace.records.size(), 4u);
    EXPECT_EQ(trace.records.front().cycle, 1u);
    EXPECT_EQ(trace.records.back().cycle, 25u);
    EXPECT_EQ(trace.csv().rfind("cycle,branch,r_cold,r_hot,heat_cold,heat_hot,work,entropy\n", 0), 0u);
}

TEST(RunCycles, FloorStopAndErrors) {
    CycleOptions opt;
    opt.r_floor = 0.19;
    const auto trace = run_cycles(Scheme::ico, {1e6, 1e6, 0.2, 0.2}, 2, 2, 1, opt);
    EXPECT_EQ(trace.stop, StopReason::floor);
    EXPECT_LE(trace.final_state.r_cold, 0.19);
    EXPECT_THROW(run_cycles(Scheme::cswap, {1e6, 1e6, 0.2, 0.2}, 2, 2, 1), std::invalid_argument);
    EXPECT_THROW(run_cycles(Scheme::ico, {0, 1e6, 0.2, 0.2}, 2, 2, 1), std::invalid_argument);
    EXPECT_THROW(run_cycles(Scheme::ico, {1e6, 1e6, 0.0, 0.2}, 2, 2, 1), std::invalid_argument);
    EXPECT_STREQ(to_string(StopReason::floor), "floor");
}

TEST(ReservoirEnsemble, RatioK) {
    EXPECT_DOUBLE_EQ((ReservoirEnsemble{2e3, 5e3, 0.1, 0.1}.k()), 2.5);
}
