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

#ifndef QFRIDGE_TRAJECTORIES_H
#define QFRIDGE_TRAJECTORIES_H

#include <vector>

#include "json.hpp"
#include "qfridge/channels.h"
#include "qfridge/nswitch.h"

namespace qfridge {

/// Scale s of the interference block s * A rho A^dag produced by the canonical implementation.
inline constexpr double kCertifiedInterferenceScale = 0.5;

/// N copies of one channel implementation, each path with its own environment state.
struct TrajectoryConfig {
    size_t n = 0;
    KrausSet kraus;
    std::vector<std::vector<Complex>> env_overlaps;
    std::vector<TransformationMatrix> m_list;

    /// Derives m_list from the overlaps.
    static TrajectoryConfig make(size_t n, KrausSet kraus, std::vector<std::vector<Complex>> env_overlaps);
    /// Same overlap list on every path.
    static TrajectoryConfig uniform(size_t n, KrausSet kraus, std::vector<Complex> overlap);
    /// Qubit thermalizing implementation with every environment in |0>, so M = K_0 = A / sqrt(2).
    static TrajectoryConfig canonical(size_t n, double r);

    nlohmann::json to_json() const;
    static TrajectoryConfig from_json(const nlohmann::json &j);
};

/// (1/N)[I (x) N(rho) + sum_{k != k'} |k><k'| (x) M_k rho M_k'^dag].
SwitchOutput traj_output(const TrajectoryConfig &cfg, const DensityMatrix &rho);

/// Largest control (x) target (x) environments dimension the dilation oracle will build.
inline constexpr size_t kDilationMaxDim = 1024;

/// Builds each path's Stinespring unitary, the controlled unitary on control (x) target (x) envs,
/// evolves the joint state and traces the environments out.
SwitchOutput dilation_oracle(const TrajectoryConfig &cfg, const DensityMatrix &rho);

/// Measures traj_output(cfg, T) in build_basis(N); T is the Gibbs state of `spec`.
BranchStats traj_branches(const TrajectoryConfig &cfg, const ThermalSpec &spec);

}  // namespace qfridge

#endif
