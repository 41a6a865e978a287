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

#ifndef QFRIDGE_CHANNELS_H
#define QFRIDGE_CHANNELS_H

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfridge/qmat.h"
#include "qfridge/thermal.h"

namespace qfridge {

/// Kraus representation of one channel implementation.
struct KrausSet {
    std::vector<ComplexMatrix> operators;
    std::string label;

    size_t dim() const;
    /// max |sum K^dag K - I| over entries.
    double completeness_error() const;
    /// Throws unless operators are nonempty, square, equally shaped and complete to `tol`.
    void validate(double tol = kIdentityTolerance) const;
};

/// {U_i / d}: sends every input to tr(rho) I / d.
KrausSet depolarizing_kraus(size_t d);

/// K_i = A U_i / sqrt(d) with A = sqrt(T); every input goes to the Gibbs state T.
KrausSet thermalizing_kraus(const ThermalSpec &spec);

ComplexMatrix apply_channel(const KrausSet &k, const ComplexMatrix &m);
DensityMatrix apply_channel(const KrausSet &k, const DensityMatrix &rho);

/// M = sum_a <eps|a> K_a for an environment prepared in |eps>.
struct TransformationMatrix {
    ComplexMatrix m;
    std::string label;
    std::vector<Complex> overlaps;
    /// tr(M^dag T M), with T the channel's fixed point.
    double constraint_value = 0;
    bool obtainable = false;
};

/// Builds M and checks tr(M^dag T M) <= 1/d. Overlaps whose squared norm exceeds 1 do not
/// describe a normalized environment state and are also marked non-obtainable.
TransformationMatrix transformation_matrix(const KrausSet &k, std::span<const Complex> overlaps);

nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j);
nlohmann::json kraus_to_json(const KrausSet &k);
KrausSet kraus_from_json(const nlohmann::json &j);

}  // namespace qfridge

#endif
