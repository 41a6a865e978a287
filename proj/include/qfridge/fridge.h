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

#ifndef QFRIDGE_FRIDGE_H
#define QFRIDGE_FRIDGE_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qfridge/thermal.h"
#include "qfridge/trajectories.h"

namespace qfridge {

enum class Scheme { ico, cswap, traj };

Scheme parse_scheme(std::string_view name);
const char *to_string(Scheme scheme);

/// Branch populations of a diagonal input fed through N thermalizing channels with Gibbs populations
/// `t`. The interference term is t*u*t for ico/cswap (target qubit) and traj_scale * t*u for traj.
struct DiagonalBranches {
    double p_c;
    double p_H;
    std::vector<double> cooling;
    std::vector<double> heating;
};
DiagonalBranches diagonal_branches(
    Scheme scheme, size_t n, const std::vector<double> &t, const std::vector<double> &input,
    double traj_scale = kCertifiedInterferenceScale);

/// Closed-form branch energetics of a degenerate D-level medium fed with its own Gibbs state.
/// Energies are mean energies of the normalized branch states (gap = 1).
struct BranchEnergetics {
    double p_c;
    double p_H;
    double e_t;
    double e_c;
    double e_h;
};
BranchEnergetics branch_energetics(
    Scheme scheme, size_t n, size_t dim, double r, double traj_scale = kCertifiedInterferenceScale);

/// Mean energy of the normalized heating state; finite at r = 0.
double heating_energy(Scheme scheme, size_t dim, double r, double traj_scale = kCertifiedInterferenceScale);

/// -p_c ln p_c - (N-1) p_h ln p_h in nats.
double register_entropy(
    size_t n, const ThermalSpec &spec, Scheme scheme, double traj_scale = kCertifiedInterferenceScale);

/// Landauer cost S / beta_R.
double work_cost(double entropy, double beta_r);

/// Average heat extracted per cycle minus heat dumped in the hot reservoir, divided by the register
/// entropy (the coefficient of performance in units of 1 / beta_R). cswap counts all N+1 mediums.
double cop_normalized(
    size_t n, size_t dim, double r, double r_hot, Scheme scheme, double traj_scale = kCertifiedInterferenceScale);
double cop(size_t n, size_t dim, double r, double r_hot, double beta_r, Scheme scheme,
           double traj_scale = kCertifiedInterferenceScale);

/// Hot-reservoir ratio at which the fridge stops: its Gibbs energy equals the heating-branch energy
/// (averaged over the N+1 mediums for cswap). May exceed 1 when the heating state is inverted.
double heating_effective_r(
    Scheme scheme, size_t n, size_t dim, double r, double traj_scale = kCertifiedInterferenceScale);

/// Closed-form lowest reachable cold ratio for a hot/cold size ratio k, clamped to [0, r_start].
/// ico: (k - (2k+3) r) / (k r - 3 - 2k); traj: (k - (k+2) r) / (k r - 2 - k).
double lowest_r(Scheme scheme, double r_start, double k);

/// Root of the energy balance x(r) - x(r') = k (h(r') - x(r)) on [0, r_start] by bisection,
/// for any dimension and interference scale. Returns 0 when the balance cannot be met.
double lowest_r_fixed_point(
    Scheme scheme, double r_start, double k, size_t dim = 2, double traj_scale = kCertifiedInterferenceScale);

/// Mean-field cold and hot reservoirs.
struct ReservoirEnsemble {
    double n_c;
    double n_H;
    double r_cold;
    double r_hot;

    double k() const {
        return n_H / n_c;
    }
};

struct CycleOptions {
    uint64_t max_cycles = 1'000'000'000'000'000'000ULL;
    /// Upper bound on the relative change of the reservoir gap per batch; 0 runs one cycle per batch.
    double batch_fraction = 1e-3;
    /// Record every this many batches (the final batch is always recorded).
    uint64_t record_every = 1;
    /// Stop once r_cold falls to this value.
    double r_floor = 0;
    double beta_r = 1;
    double traj_scale = kCertifiedInterferenceScale;
    /// Stop when the heating-branch excited population is within this of the hot reservoir's.
    double tolerance = 1e-6;
};

struct CycleRecord {
    uint64_t cycle;
    /// "cooling" / "heating" for single-cycle batches, "mixed" otherwise.
    std::string branch;
    double r_cold;
    double r_hot;
    double heat_cold;
    double heat_hot;
    /// Cumulative Landauer work.
    double work;
    /// Register entropy per cycle at this batch's operating point.
    double entropy;
    /// Heat released by the mediums while being reset; equals heat_cold + heat_hot.
    double medium_heat;
};

enum class StopReason { tolerance, budget, floor };
const char *to_string(StopReason reason);

struct CycleTrace {
    std::vector<CycleRecord> records;
    StopReason stop = StopReason::budget;
    ReservoirEnsemble final_state{};
    uint64_t cycles = 0;

    std::string csv() const;
};

/// Runs the fridge against finite mean-field reservoirs. Each batch freezes the branch statistics,
/// draws the number of cooling outcomes binomially, and updates both reservoirs. Deterministic in seed.
CycleTrace run_cycles(
    Scheme scheme, ReservoirEnsemble ensemble, size_t n, size_t dim, uint64_t seed, const CycleOptions &options = {});

}  // namespace qfridge

#endif
