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

#ifndef QFRIDGE_THERMAL_H
#define QFRIDGE_THERMAL_H

#include <cstddef>
#include <vector>

#include "qfridge/qmat.h"

namespace qfridge {

/// Spectrum plus Boltzmann factors r_i = exp(-beta * gap_i) of a D-level working system.
/// Level 0 sits at energy 0; gaps[i - 1] is the energy of level i.
class ThermalSpec {
   public:
    ThermalSpec(std::vector<double> gaps, std::vector<double> r_list);

    static ThermalSpec Qubit(double r);
    /// D levels, every excited level at energy 1 with the same ratio r.
    static ThermalSpec Degenerate(size_t dim, double r);
    static ThermalSpec FromGaps(std::vector<double> gaps, double beta);

    size_t dim() const {
        return gaps_.size() + 1;
    }
    const std::vector<double> &gaps() const {
        return gaps_;
    }
    const std::vector<double> &r_list() const {
        return r_list_;
    }
    bool is_degenerate() const;

    /// Unnormalized Boltzmann weights (1, r_1, ..., r_{D-1}).
    std::vector<double> weights() const;
    /// Normalized Gibbs populations.
    std::vector<double> populations() const;

   private:
    std::vector<double> gaps_;
    std::vector<double> r_list_;
};

/// Diagonal Hamiltonian; energies[0] is the ground level.
struct Hamiltonian {
    std::vector<double> energies;

    static Hamiltonian from_spec(const ThermalSpec &spec);
    size_t dim() const {
        return energies.size();
    }
    ComplexMatrix matrix() const;
};

DensityMatrix gibbs_state(const ThermalSpec &spec);

/// tr(rho H), real part.
double mean_energy(const DensityMatrix &rho, const Hamiltonian &h);
/// Same for an unnormalized operator; useful for weighted branch contributions.
double mean_energy(const ComplexMatrix &m, const Hamiltonian &h);

struct EffectiveR {
    double r;
    bool negative_temperature;
};

/// Qubit populations p1/p0, or the inversion flag when p1 > p0 (r is then reported as p1/p0 > 1).
EffectiveR effective_r(const DensityMatrix &rho);

/// Excited weight of the degenerate D-level Gibbs state: (D-1)r / (1 + (D-1)r).
double degenerate_excited_population(size_t dim, double r);
/// Inverse of degenerate_excited_population.
double degenerate_r_from_excited_population(size_t dim, double excited);

}  // namespace qfridge

#endif
