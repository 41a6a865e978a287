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

#include "qfridge/thermal.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qfridge {

ThermalSpec::ThermalSpec(std::vector<double> gaps, std::vector<double> r_list)
    : gaps_(std::move(gaps)), r_list_(std::move(r_list)) {
    if (gaps_.empty()) {
        throw std::invalid_argument("ThermalSpec needs at least one excited level");
    }
    if (gaps_.size() != r_list_.size()) {
        throw DimensionError(
            "ThermalSpec: " + std::to_string(gaps_.size()) + " gaps but " + std::to_string(r_list_.size()) +
            " Boltzmann factors");
    }
    for (size_t i = 0; i < r_list_.size(); i++) {
        double r = r_list_[i];
        if (!(r > 0.0 && r <= 1.0)) {
            throw std::invalid_argument(
                "ThermalSpec: r[" + std::to_string(i) + "] = " + std::to_string(r) + " is outside (0, 1]");
        }
        if (!(gaps_[i] >= 0.0) || !std::isfinite(gaps_[i])) {
            throw std::invalid_argument("ThermalSpec: gap " + std::to_string(i) + " must be finite and >= 0");
        }
    }
}

ThermalSpec ThermalSpec::Qubit(double r) {
    return ThermalSpec({1.0}, {r});
}

ThermalSpec ThermalSpec::Degenerate(size_t dim, double r) {
    if (dim < 2) {
        throw std::invalid_argument("ThermalSpec::Degenerate needs dim >= 2");
    }
    return ThermalSpec(std::vector<double>(dim - 1, 1.0), std::vector<double>(dim - 1, r));
}

ThermalSpec ThermalSpec::FromGaps(std::vector<double> gaps, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("ThermalSpec::FromGaps: beta must be finite and >= 0");
    }
    std::vector<double> r(gaps.size());
    for (size_t i = 0; i < gaps.size(); i++) {
        r[i] = std::exp(-beta * gaps[i]);
    }
    return ThermalSpec(std::move(gaps), std::move(r));
}

bool ThermalSpec::is_degenerate() const {
    for (size_t i = 1; i < gaps_.size(); i++) {
        if (gaps_[i] != gaps_[0] || r_list_[i] != r_list_[0]) {
            return false;
        }
    }
    return true;
}

std::vector<double> ThermalSpec::weights() const {
    std::vector<double> w{1.0};
    w.insert(w.end(), r_list_.begin(), r_list_.end());
    return w;
}

std::vector<double> ThermalSpec::populations() const {
    auto w = weights();
    double z = 0;
    for (double v : w) {
        z += v;
    }
    for (double &v : w) {
        v /= z;
    }
    return w;
}

Hamiltonian Hamiltonian::from_spec(const ThermalSpec &spec) {
    Hamiltonian h{{0.0}};
    h.energies.insert(h.energies.end(), spec.gaps().begin(), spec.gaps().end());
    return h;
}

ComplexMatrix Hamiltonian::matrix() const {
    return ComplexMatrix::diagonal(std::span<const double>(energies));
}

DensityMatrix gibbs_state(const ThermalSpec &spec) {
    auto p = spec.populations();
    return DensityMatrix(ComplexMatrix::diagonal(std::span<const double>(p)));
}

double mean_energy(const ComplexMatrix &m, const Hamiltonian &h) {
    if (!m.is_square() || m.rows() != h.dim()) {
        throw DimensionError(
            "mean_energy: operator is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
            ", Hamiltonian has " + std::to_string(h.dim()) + " levels");
    }
    double e = 0;
    for (size_t i = 0; i < h.dim(); i++) {
        e += m(i, i).real() * h.energies[i];
    }
    return e;
}

double mean_energy(const DensityMatrix &rho, const Hamiltonian &h) {
    return mean_energy(rho.matrix(), h);
}

EffectiveR effective_r(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw DimensionError("effective_r is defined for qubits, got dimension " + std::to_string(rho.dim()));
    }
    double p0 = rho.population(0);
    double p1 = rho.population(1);
    if (p1 > p0) {
        return {p1 / p0, true};
    }
    return {p1 / p0, false};
}

double degenerate_excited_population(size_t dim, double r) {
    double m = static_cast<double>(dim - 1) * r;
    return m / (1.0 + m);
}

double degenerate_r_from_excited_population(size_t dim, double excited) {
    if (!(excited >= 0.0 && excited < 1.0)) {
        throw std::invalid_argument("excited population must lie in [0, 1)");
    }
    return excited / (static_cast<double>(dim - 1) * (1.0 - excited));
}

}  // namespace qfridge
