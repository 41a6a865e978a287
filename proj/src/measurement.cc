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

#include <bit>
#include <cmath>
#include <string>

namespace qfridge {

namespace {

ComplexMatrix project(const SwitchOutput &out, const std::vector<Complex> &phi) {
    const size_t n = out.control_dim();
    const size_t d = out.target_dim();
    ComplexMatrix acc(d, d);
    for (size_t i = 0; i < n; i++) {
        if (phi[i] == Complex(0)) {
            continue;
        }
        for (size_t j = 0; j < n; j++) {
            if (phi[j] == Complex(0)) {
                continue;
            }
            acc += out.block(i, j) * (std::conj(phi[i]) * phi[j]);
        }
    }
    return acc;
}

BranchOutcome make_outcome(BranchLabel label, size_t index, ComplexMatrix unnormalized) {
    BranchOutcome o{label, index, unnormalized.trace().real(), std::move(unnormalized), std::nullopt};
    if (o.probability > 0) {
        o.state = DensityMatrix::normalized(o.unnormalized);
    }
    return o;
}

void require_dim(const SwitchOutput &out, const MeasurementBasis &basis) {
    if (basis.n != out.control_dim()) {
        throw DimensionError(
            "measurement basis has dimension " + std::to_string(basis.n) + ", control has " +
            std::to_string(out.control_dim()));
    }
}

}  // namespace

ComplexMatrix MeasurementBasis::gram() const {
    ComplexMatrix g(vectors.size(), vectors.size());
    for (size_t a = 0; a < vectors.size(); a++) {
        for (size_t b = 0; b < vectors.size(); b++) {
            Complex s = 0;
            for (size_t i = 0; i < n; i++) {
                s += std::conj(vectors[a][i]) * vectors[b][i];
            }
            g(a, b) = s;
        }
    }
    return g;
}

ComplexMatrix MeasurementBasis::completeness() const {
    ComplexMatrix c(n, n);
    for (const auto &v : vectors) {
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < n; j++) {
                c(i, j) += v[i] * std::conj(v[j]);
            }
        }
    }
    return c;
}

MeasurementBasis build_basis(size_t n) {
    if (n < 2) {
        throw std::invalid_argument("build_basis needs n >= 2");
    }
    MeasurementBasis basis{n, {}};
    basis.vectors.emplace_back(n, Complex(1.0 / std::sqrt(static_cast<double>(n))));
    for (size_t i = 1; i < n; i++) {
        const double fi = static_cast<double>(i);
        const double norm = std::sqrt(fi + fi * fi);
        std::vector<Complex> v(n, 0.0);
        for (size_t j = 0; j < i; j++) {
            v[j] = 1.0 / norm;
        }
        v[i] = -fi / norm;
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

MeasurementBasis hadamard_basis(size_t m) {
    if (m < 1 || m > 20) {
        throw std::invalid_argument("hadamard_basis needs 1 <= m <= 20 qubits");
    }
    const size_t n = size_t{1} << m;
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    MeasurementBasis basis{n, {}};
    for (size_t x = 0; x < n; x++) {
        std::vector<Complex> v(n);
        for (size_t y = 0; y < n; y++) {
            v[y] = (std::popcount(x & y) % 2 == 0) ? s : -s;
        }
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

const char *to_string(BranchLabel label) {
    return label == BranchLabel::cooling ? "cooling" : "heating";
}

std::vector<BranchOutcome> measure_control(const SwitchOutput &out, const MeasurementBasis &basis) {
    require_dim(out, basis);
    ComplexMatrix cool = project(out, basis.vectors[0]);
    ComplexMatrix heat = out.target_marginal() - cool;
    std::vector<BranchOutcome> result;
    result.push_back(make_outcome(BranchLabel::cooling, 0, std::move(cool)));
    result.push_back(make_outcome(BranchLabel::heating, 0, std::move(heat)));
    return result;
}

std::vector<BranchOutcome> measure_control_fine(const SwitchOutput &out, const MeasurementBasis &basis) {
    require_dim(out, basis);
    std::vector<BranchOutcome> result;
    for (size_t i = 0; i < basis.vectors.size(); i++) {
        result.push_back(
            make_outcome(i == 0 ? BranchLabel::cooling : BranchLabel::heating, i, project(out, basis.vectors[i])));
    }
    return result;
}

double shannon_entropy(const std::vector<double> &probabilities) {
    double s = 0;
    for (double p : probabilities) {
        if (p > 0) {
            s -= p * std::log(p);
        }
    }
    return s;
}

PovmResult povm_ancilla_scheme(size_t m, const SwitchOutput &out) {
    if (m < 1 || m >= 20 || (size_t{1} << m) != out.control_dim()) {
        throw std::invalid_argument(
            "povm_ancilla_scheme: control dimension " + std::to_string(out.control_dim()) + " is not 2^" +
            std::to_string(m));
    }
    const MeasurementBasis basis = hadamard_basis(m);
    const auto fine = measure_control_fine(out, basis);

    ComplexMatrix heat(out.target_dim(), out.target_dim());
    std::vector<double> all;
    std::vector<double> heating_probs;
    for (const auto &o : fine) {
        all.push_back(o.probability);
        if (o.index != 0) {
            heat += o.unnormalized;
            heating_probs.push_back(o.probability);
        }
    }
    PovmResult result{
        make_outcome(BranchLabel::heating, 0, std::move(heat)),
        fine[0],
        {},
    };
    const double p_c = result.cooling.probability;
    const double p_H = result.heating.probability;
    result.entropies.full = shannon_entropy(all);
    result.entropies.ancilla = shannon_entropy({p_c, p_H});
    result.entropies.p_H = p_H;
    if (p_H > 0) {
        for (double &p : heating_probs) {
            p /= p_H;
        }
        result.entropies.control = shannon_entropy(heating_probs);
    }
    return result;
}

nlohmann::json basis_json(const MeasurementBasis &basis) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &v : basis.vectors) {
        nlohmann::json row = nlohmann::json::array();
        for (const Complex &c : v) {
            row.push_back({c.real(), c.imag()});
        }
        out.push_back(row);
    }
    return out;
}

}  // namespace qfridge
