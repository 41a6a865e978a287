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

#ifndef QFRIDGE_NSWITCH_H
#define QFRIDGE_NSWITCH_H

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "qfridge/qmat.h"
#include "qfridge/thermal.h"

namespace qfridge {

/// Thrown when an exhaustive enumeration would exceed its size budget.
class BudgetError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Causal orders indexed 0..n-1; each order lists channels in application order.
struct OrderSet {
    size_t n = 0;
    std::vector<std::vector<size_t>> orders;

    /// orders[k] = (k, k+1, ..., k-1 mod n).
    static OrderSet cyclic(size_t n);
    /// Throws unless every order is a permutation of 0..n-1.
    void validate() const;

    /// JSON uses 1-based channel labels.
    nlohmann::json to_json() const;
    static OrderSet from_json(const nlohmann::json &j);
};

/// Joint control (x) target state; control dimension first.
struct SwitchOutput {
    DensityMatrix joint;

    size_t control_dim() const {
        return joint.shape().dims.at(0);
    }
    size_t target_dim() const {
        return joint.shape().dims.at(1);
    }
    /// Target operator <i|_c joint |j>_c.
    ComplexMatrix block(size_t i, size_t j) const;
    /// Tr_c of the joint state.
    ComplexMatrix target_marginal() const;
};

/// Builds a SwitchOutput from control blocks.
SwitchOutput switch_from_blocks(const std::vector<std::vector<ComplexMatrix>> &blocks);

/// (1/N)[I (x) T + sum_{i != j} |i><j| (x) T rho T].
SwitchOutput switch_closed_form(size_t n, const DensityMatrix &rho, const DensityMatrix &t);

/// Direct Kraus summation over all (d^2)^N index tuples of the thermalizing implementation,
/// control prepared in the uniform superposition. Refuses above kBruteforceBudget tuples.
inline constexpr double kBruteforceBudget = 1e6;
SwitchOutput switch_bruteforce(const OrderSet &orders, const DensityMatrix &rho, const ThermalSpec &spec);

struct BranchStats {
    size_t n = 0;
    double p_c = 0;
    /// Probability of one particular heating outcome, p_H / (N - 1).
    double p_h = 0;
    double p_H = 0;
    DensityMatrix rho_c;
    DensityMatrix rho_h;
};

/// Cooling ~ T + (N-1) T rho T and heating ~ T - T rho T for an arbitrary input rho.
BranchStats switch_branches(size_t n, const DensityMatrix &t, const DensityMatrix &rho);
/// switch_branches at the operating point rho = T.
BranchStats branch_stats(size_t n, const ThermalSpec &spec);
/// Degenerate D-level working system; heating probability from its closed form.
BranchStats qudit_branch_stats(size_t n, size_t dim, double r);

/// ((N-1)/N) {1 - (1 + (D-1) r^3) / (1 + (D-1) r)^3}.
double qudit_heating_probability(size_t n, size_t dim, double r);
/// (1 - r^2) r / (1 + (D-1) r)^4 * (N-1)/N * (D-1).
double qudit_weighted_energy_closed_form(size_t n, size_t dim, double r);

struct WeightedEnergy {
    double heating;
    double cooling;
};

/// p_H (tr(rho_h H) - tr(T H)) evaluated by traces; cooling is its negative.
WeightedEnergy weighted_energy(size_t n, size_t dim, double r);

nlohmann::json switch_output_json(const SwitchOutput &out);

}  // namespace qfridge

#endif
