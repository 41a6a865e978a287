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

#include "qfridge/channels.h"

#include <cmath>
#include <stdexcept>

namespace qfridge {

size_t KrausSet::dim() const {
    return operators.empty() ? 0 : operators.front().rows();
}

double KrausSet::completeness_error() const {
    if (operators.empty()) {
        return INFINITY;
    }
    ComplexMatrix sum(dim(), dim());
    for (const auto &op : operators) {
        sum += op.adjoint() * op;
    }
    return max_abs_diff(sum, ComplexMatrix::identity(dim()));
}

void KrausSet::validate(double tol) const {
    if (operators.empty()) {
        throw std::invalid_argument("KrausSet '" + label + "' has no operators");
    }
    for (const auto &op : operators) {
        if (!op.is_square() || op.rows() != dim()) {
            throw DimensionError("KrausSet '" + label + "' mixes operator shapes");
        }
    }
    double err = completeness_error();
    if (err > tol) {
        throw std::invalid_argument(
            "KrausSet '" + label + "' is not trace preserving (completeness error " + std::to_string(err) + ")");
    }
}

KrausSet depolarizing_kraus(size_t d) {
    KrausSet k{pauli_basis(d), "depolarizing"};
    for (auto &op : k.operators) {
        op *= 1.0 / static_cast<double>(d);
    }
    return k;
}

KrausSet thermalizing_kraus(const ThermalSpec &spec) {
    const size_t d = spec.dim();
    ComplexMatrix a = sqrt_diagonal(gibbs_state(spec).matrix());
    KrausSet k{{}, "thermalizing"};
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (const auto &u : pauli_basis(d)) {
        k.operators.push_back(a * u * Complex(scale));
    }
    return k;
}

ComplexMatrix apply_channel(const KrausSet &k, const ComplexMatrix &m) {
    if (k.operators.empty()) {
        throw std::invalid_argument("apply_channel: empty KrausSet");
    }
    if (!m.is_square() || m.rows() != k.dim()) {
        throw DimensionError(
            "apply_channel: channel acts on dimension " + std::to_string(k.dim()) + ", input is " +
            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    ComplexMatrix out(m.rows(), m.cols());
    for (const auto &op : k.operators) {
        out += sandwich(op, m);
    }
    return out;
}

DensityMatrix apply_channel(const KrausSet &k, const DensityMatrix &rho) {
    return DensityMatrix(apply_channel(k, rho.matrix()), rho.shape());
}

TransformationMatrix transformation_matrix(const KrausSet &k, std::span<const Complex> overlaps) {
    if (overlaps.size() != k.operators.size()) {
        throw DimensionError(
            "transformation_matrix: " + std::to_string(overlaps.size()) + " overlaps for " +
            std::to_string(k.operators.size()) + " Kraus operators");
    }
    const size_t d = k.dim();
    TransformationMatrix out{ComplexMatrix(d, d), k.label, {overlaps.begin(), overlaps.end()}};
    double norm2 = 0;
    for (size_t a = 0; a < overlaps.size(); a++) {
        out.m += k.operators[a] * overlaps[a];
        norm2 += std::norm(overlaps[a]);
    }
    ComplexMatrix t = apply_channel(k, ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)));
    out.constraint_value = (out.m.adjoint() * t * out.m).trace().real();
    out.obtainable = norm2 <= 1.0 + 1e-12 && out.constraint_value <= 1.0 / static_cast<double>(d) + 1e-10;
    return out;
}

nlohmann::json matrix_to_json(const ComplexMatrix &m) {
    nlohmann::json flat = nlohmann::json::array();
    for (const Complex &v : m.entries()) {
        flat.push_back(v.real());
        flat.push_back(v.imag());
    }
    return nlohmann::json::array({m.rows(), m.cols(), flat});
}

ComplexMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 3) {
        throw std::invalid_argument("matrix JSON must be [rows, cols, [re, im, ...]]");
    }
    size_t rows = j[0].get<size_t>();
    size_t cols = j[1].get<size_t>();
    const auto &flat = j[2];
    if (!flat.is_array() || flat.size() != 2 * rows * cols) {
        throw DimensionError("matrix JSON: interleaved array length does not match rows*cols*2");
    }
    std::vector<Complex> entries(rows * cols);
    for (size_t i = 0; i < entries.size(); i++) {
        entries[i] = Complex(flat[2 * i].get<double>(), flat[2 * i + 1].get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

nlohmann::json kraus_to_json(const KrausSet &k) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto &op : k.operators) {
        ops.push_back(matrix_to_json(op));
    }
    return {{"label", k.label}, {"operators", ops}};
}

KrausSet kraus_from_json(const nlohmann::json &j) {
    KrausSet k;
    k.label = j.value("label", std::string());
    for (const auto &op : j.at("operators")) {
        k.operators.push_back(matrix_from_json(op));
    }
    k.validate();
    return k;
}

}  // namespace qfridge
