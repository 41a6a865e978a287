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

#include <sstream>

#include "qfridge/nswitch.h"

namespace qfridge {

namespace {

// Bit position of qubit q inside the qubit index; qubit 0 is the most significant.
size_t bit_of(size_t qubit, size_t qubits) {
    return qubits - 1 - qubit;
}

size_t swap_bits(size_t x, size_t a, size_t b) {
    size_t ba = (x >> a) & 1;
    size_t bb = (x >> b) & 1;
    if (ba != bb) {
        x ^= (size_t{1} << a) | (size_t{1} << b);
    }
    return x;
}

double excited(const ComplexMatrix &m) {
    return m(1, 1).real();
}

SubsystemShape qubit_shape(size_t qubits) {
    return SubsystemShape{std::vector<size_t>(qubits, 2)};
}

}  // namespace

CswapState cswap_evolve(size_t n, double r) {
    if (n < 2 || n > kCswapMaxReservoirs) {
        throw std::invalid_argument(
            "cswap_evolve supports 2 <= N <= " + std::to_string(kCswapMaxReservoirs) + ", got " +
            std::to_string(n));
    }
    const auto pops = ThermalSpec::Qubit(r).populations();
    const size_t qubits = n + 1;
    const size_t q = size_t{1} << qubits;
    std::vector<double> p(q);
    for (size_t x = 0; x < q; x++) {
        double v = 1;
        for (size_t b = 0; b < qubits; b++) {
            v *= pops[(x >> b) & 1];
        }
        p[x] = v;
    }
    // Control k swaps the target with reservoir qubit k + 1.
    std::vector<std::vector<size_t>> image(n, std::vector<size_t>(q));
    const size_t target_bit = bit_of(0, qubits);
    for (size_t k = 0; k < n; k++) {
        const size_t res_bit = bit_of(k + 1, qubits);
        for (size_t x = 0; x < q; x++) {
            image[k][x] = swap_bits(x, target_bit, res_bit);
        }
    }
    const size_t dim = n * q;
    ComplexMatrix joint(dim, dim);
    const double w = 1.0 / static_cast<double>(n);
    for (size_t k = 0; k < n; k++) {
        for (size_t kp = 0; kp < n; kp++) {
            for (size_t x = 0; x < q; x++) {
                joint(k * q + image[k][x], kp * q + image[kp][x]) += p[x] * w;
            }
        }
    }
    std::vector<size_t> dims{n};
    dims.insert(dims.end(), qubits, 2);
    return CswapState{DensityMatrix(std::move(joint), SubsystemShape{dims}), n, CswapBranch::unmeasured};
}

CswapBranches cswap_branches(const CswapState &state, const MeasurementBasis &basis) {
    if (!state.has_control()) {
        throw std::invalid_argument("cswap_branches needs an unmeasured state");
    }
    if (basis.n != state.n) {
        throw DimensionError(
            "cswap_branches: basis dimension " + std::to_string(basis.n) + " vs control dimension " +
            std::to_string(state.n));
    }
    const size_t n = state.n;
    const size_t q = size_t{1} << state.qubit_count();
    const auto &m = state.joint.matrix();
    const auto &phi = basis.vectors[0];
    ComplexMatrix cool(q, q);
    ComplexMatrix all(q, q);
    for (size_t k = 0; k < n; k++) {
        for (size_t kp = 0; kp < n; kp++) {
            const Complex w = std::conj(phi[k]) * phi[kp];
            for (size_t x = 0; x < q; x++) {
                for (size_t y = 0; y < q; y++) {
                    const Complex v = m(k * q + x, kp * q + y);
                    if (v == Complex(0)) {
                        continue;
                    }
                    cool(x, y) += w * v;
                    if (k == kp) {
                        all(x, y) += v;
                    }
                }
            }
        }
    }
    ComplexMatrix heat = all - cool;
    const double p_c = cool.trace().real();
    const double p_H = heat.trace().real();
    const auto shape = qubit_shape(state.qubit_count());
    return CswapBranches{
        CswapState{DensityMatrix::normalized(cool, shape), n, CswapBranch::cooling},
        p_c,
        CswapState{DensityMatrix::normalized(heat, shape), n, CswapBranch::heating},
        p_H,
    };
}

ComplexMatrix qubit_marginal(const CswapState &state, size_t qubit) {
    if (qubit >= state.qubit_count()) {
        throw std::invalid_argument(
            "qubit index " + std::to_string(qubit) + " out of range for " + std::to_string(state.qubit_count()) +
            " qubits");
    }
    const size_t keep[] = {qubit + (state.has_control() ? 1 : 0)};
    return partial_trace(state.joint.matrix(), state.joint.shape(), keep);
}

ComplexMatrix target_cooling_marginal_closed_form(size_t n, double r) {
    const auto t = gibbs_state(ThermalSpec::Qubit(r)).matrix();
    const double nn = static_cast<double>(n);
    return (t + matrix_power(t, 3) * Complex(nn - 1)) * Complex(1.0 / nn);
}

ComplexMatrix reservoir_cooling_marginal_closed_form(size_t n, double r) {
    const auto t = gibbs_state(ThermalSpec::Qubit(r)).matrix();
    const auto t3 = matrix_power(t, 3);
    const double nn = static_cast<double>(n);
    const double tr3 = t3.trace().real();
    ComplexMatrix inner = t3 * Complex(2.0 / nn) + t * Complex((nn - 2) / nn * tr3);
    return t * Complex(1.0 / nn) + inner * Complex((nn - 1) / nn);
}

EnergyIdentity cswap_energy_identity(size_t n, double r) {
    const auto branches = cswap_branches(cswap_evolve(n, r), build_basis(n));
    const double t1 = ThermalSpec::Qubit(r).populations()[1];
    const double target = excited(qubit_marginal(branches.cooling, 0));
    const double reservoir = excited(qubit_marginal(branches.cooling, 1));
    return {static_cast<double>(n) * (reservoir - t1), 2.0 * (target - t1)};
}

std::vector<DiscardSnapshot> sequential_discard(
    const CswapState &state, std::span<const size_t> order, const ThermalSpec &spec) {
    if (state.has_control()) {
        throw std::invalid_argument("sequential_discard needs a measured (control-free) state");
    }
    if (spec.dim() != 2) {
        throw DimensionError("sequential_discard works on qubits");
    }
    const ComplexMatrix t = gibbs_state(spec).matrix();
    const Hamiltonian h = Hamiltonian::from_spec(spec);
    const double e_t = mean_energy(t, h);
    std::vector<bool> used(state.qubit_count(), false);
    ComplexMatrix current = state.joint.matrix();
    const SubsystemShape &shape = state.joint.shape();
    std::vector<DiscardSnapshot> out;
    for (size_t step = 0; step < order.size(); step++) {
        const size_t q = order[step];
        if (q >= state.qubit_count() || used[q]) {
            throw std::invalid_argument("sequential_discard: invalid or repeated qubit index " + std::to_string(q));
        }
        used[q] = true;
        const size_t keep[] = {q};
        const double before = mean_energy(partial_trace(current, shape, keep), h);
        current = replace_subsystem(current, shape, q, t);
        DiscardSnapshot snap{step, q, {}, before - e_t};
        for (size_t j = 0; j < state.qubit_count(); j++) {
            const size_t kj[] = {j};
            snap.p_excited.push_back(excited(partial_trace(current, shape, kj)));
        }
        out.push_back(std::move(snap));
    }
    return out;
}

std::vector<double> cswap_weighted_shifts(size_t n, double r) {
    const auto branches = cswap_branches(cswap_evolve(n, r), build_basis(n));
    const double t1 = ThermalSpec::Qubit(r).populations()[1];
    std::vector<double> shifts;
    for (size_t q = 0; q < branches.cooling.qubit_count(); q++) {
        shifts.push_back(branches.p_c * (excited(qubit_marginal(branches.cooling, q)) - t1));
    }
    return shifts;
}

double cswap_total_weighted_energy(size_t n, double r) {
    const auto target = target_cooling_marginal_closed_form(n, r);
    const auto reservoir = reservoir_cooling_marginal_closed_form(n, r);
    const double p_c = target.trace().real();
    const double t1 = ThermalSpec::Qubit(r).populations()[1];
    const double shift = (excited(target) - p_c * t1) + static_cast<double>(n) * (excited(reservoir) - p_c * t1);
    return -shift;
}

std::string discard_csv(const std::vector<DiscardSnapshot> &snapshots) {
    std::ostringstream out;
    out.precision(17);
    out << "step,qubit,heat";
    const size_t qubits = snapshots.empty() ? 0 : snapshots.front().p_excited.size();
    for (size_t j = 0; j < qubits; j++) {
        out << ",p_excited_" << j;
    }
    out << "\n";
    for (const auto &s : snapshots) {
        out << s.step << "," << s.qubit << "," << s.heat;
        for (double p : s.p_excited) {
            out << "," << p;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace qfridge
