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

#ifndef QFRIDGE_CSWAP_H
#define QFRIDGE_CSWAP_H

#include <span>
#include <string>
#include <vector>

#include "qfridge/measurement.h"
#include "qfridge/qmat.h"
#include "qfridge/thermal.h"

namespace qfridge {

enum class CswapBranch { unmeasured, cooling, heating };

/// Control (dim N) (x) target qubit (x) N reservoir qubits before measurement; after measurement
/// the control is dropped and only the N+1 qubits remain. Qubit 0 is the target.
struct CswapState {
    DensityMatrix joint;
    size_t n = 0;
    CswapBranch branch = CswapBranch::unmeasured;

    bool has_control() const {
        return branch == CswapBranch::unmeasured;
    }
    size_t qubit_count() const {
        return n + 1;
    }
};

inline constexpr size_t kCswapMaxReservoirs = 8;

/// Applies sum_k |k><k| (x) SWAP(target, reservoir k) to (uniform control) (x) T^{(x)(N+1)}.
CswapState cswap_evolve(size_t n, double r);

struct CswapBranches {
    CswapState cooling;
    double p_c;
    CswapState heating;
    double p_H;
};

/// Projects the control onto basis.vectors[0] and its complement; both states normalized.
CswapBranches cswap_branches(const CswapState &state, const MeasurementBasis &basis);

/// Single-qubit reduced state (qubit 0 = target).
ComplexMatrix qubit_marginal(const CswapState &state, size_t qubit);

/// Unnormalized cooling-branch marginal of any one reservoir qubit:
/// T/N + ((N-1)/N) [ (2/N) T^3 + ((N-2)/N) tr(T^3) T ].
ComplexMatrix reservoir_cooling_marginal_closed_form(size_t n, double r);
/// Unnormalized cooling-branch target marginal (T + (N-1) T^3) / N.
ComplexMatrix target_cooling_marginal_closed_form(size_t n, double r);

struct EnergyIdentity {
    /// N times the reservoir qubit's excited-population shift.
    double lhs;
    /// Twice the target's excited-population shift.
    double rhs;
};

/// Both sides evaluated on simulated, normalized cooling-branch marginals.
EnergyIdentity cswap_energy_identity(size_t n, double r);

struct DiscardSnapshot {
    size_t step;
    size_t qubit;
    /// Excited population of every qubit after this step.
    std::vector<double> p_excited;
    /// Energy deposited into the reservoir by thermalizing this qubit; negative when the reservoir cools.
    double heat;
};

/// Thermalizes the listed qubits one at a time (replace by T) and records every marginal.
std::vector<DiscardSnapshot> sequential_discard(
    const CswapState &state, std::span<const size_t> order, const ThermalSpec &spec);

/// Weighted energy shift of each medium in the cooling branch, p_c (E(rho_q) - E(T)), from simulation.
std::vector<double> cswap_weighted_shifts(size_t n, double r);
/// Heating-side weighted energy summed over all N+1 mediums, built from the closed-form cooling marginals.
double cswap_total_weighted_energy(size_t n, double r);

std::string discard_csv(const std::vector<DiscardSnapshot> &snapshots);

}  // namespace qfridge

#endif
