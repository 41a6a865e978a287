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

#ifndef QFRIDGE_MEASUREMENT_H
#define QFRIDGE_MEASUREMENT_H

#include <optional>
#include <vector>

#include "json.hpp"
#include "qfridge/nswitch.h"
#include "qfridge/qmat.h"

namespace qfridge {

/// Orthonormal control basis; vectors[0] is the cooling outcome.
struct MeasurementBasis {
    size_t n = 0;
    std::vector<std::vector<Complex>> vectors;

    ComplexMatrix gram() const;
    /// Sum of |phi_i><phi_i| over all vectors.
    ComplexMatrix completeness() const;
};

/// phi_0 uniform; phi_i has ones in slots 0..i-1 and -i in slot i, normalized.
MeasurementBasis build_basis(size_t n);
/// Hadamard-transformed computational basis of m qubits; entry (x, y) = (-1)^{x.y} / sqrt(2^m).
MeasurementBasis hadamard_basis(size_t m);

enum class BranchLabel { cooling, heating };
const char *to_string(BranchLabel label);

struct BranchOutcome {
    BranchLabel label;
    /// Basis index of a fine-grained outcome; 0 for the cooling outcome and the coarse heating outcome.
    size_t index = 0;
    double probability = 0;
    /// Unnormalized target operator left by this outcome.
    ComplexMatrix unnormalized;
    /// Normalized working state; empty when the outcome has probability zero.
    std::optional<DensityMatrix> state;
};

/// Two outcomes: projection onto phi_0 (cooling) and onto its complement (heating).
std::vector<BranchOutcome> measure_control(const SwitchOutput &out, const MeasurementBasis &basis);
/// One outcome per basis vector.
std::vector<BranchOutcome> measure_control_fine(const SwitchOutput &out, const MeasurementBasis &basis);

struct RegisterEntropies {
    /// Shannon entropy of the fine-grained register, -p_c ln p_c - sum_x p_x ln p_x.
    double full = 0;
    /// Entropy of the one-bit ancilla register, -p_c ln p_c - p_H ln p_H.
    double ancilla = 0;
    /// Entropy of the control conditioned on the heating flag.
    double control = 0;
    double p_H = 0;
};

struct PovmResult {
    /// Ancilla reads 1.
    BranchOutcome heating;
    /// Ancilla reads 0.
    BranchOutcome cooling;
    RegisterEntropies entropies;
};

/// m control qubits measured in the Hadamard basis; an ancilla flags every outcome other than all-zero.
PovmResult povm_ancilla_scheme(size_t m, const SwitchOutput &out);

/// Natural-log Shannon entropy; zero probabilities contribute nothing.
double shannon_entropy(const std::vector<double> &probabilities);

nlohmann::json basis_json(const MeasurementBasis &basis);

}  // namespace qfridge

#endif
