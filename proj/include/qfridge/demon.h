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

#ifndef QFRIDGE_DEMON_H
#define QFRIDGE_DEMON_H

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfridge/fridge.h"

namespace qfridge {

struct DemonConfig {
    uint64_t particles = 10000;
    size_t n = 100;
    size_t dim = 2;
    double r = 0.1;
    Scheme scheme = Scheme::ico;
    uint32_t rounds = 1;
    uint64_t seed = 1;
    double traj_scale = kCertifiedInterferenceScale;
    /// Worker threads; results do not depend on this.
    unsigned threads = 1;

    void validate() const;
};

struct HistogramBin {
    double left;
    double right;
    uint64_t count_box_c;
    uint64_t count_box_d;
};

/// Box C collects particles whose last round heated them, box D those it cooled.
struct DemonReport {
    DemonConfig config;
    std::vector<std::vector<double>> final_populations;
    std::vector<double> final_energy;
    std::vector<uint8_t> in_box_c;
    uint64_t cooled = 0;
    uint64_t heated = 0;
    double initial_energy_per_particle = 0;
    double energy_before_total = 0;
    double energy_before_c = 0;
    double energy_before_d = 0;
    double energy_after_c = 0;
    double energy_after_d = 0;
    /// Energy moved between the boxes over the initial total: the mean of box C's gain and box D's loss.
    double transferred_fraction = 0;
    /// Box C's gain alone over the initial total.
    double transferred_fraction_c = 0;
    /// Box D's loss alone over the initial total.
    double transferred_fraction_d = 0;
    std::vector<HistogramBin> histogram;
    /// Largest particle energy after each round.
    std::vector<double> max_energy_per_round;
    /// Particles first inverted (energy above 1/2) in each round.
    std::vector<uint64_t> new_inversions_per_round;
    /// 0 when the particle never inverted, otherwise the 1-based round of its first inversion.
    std::vector<uint32_t> first_inversion_round;
    uint64_t inverted_particles = 0;

    nlohmann::json summary_json() const;
    std::string histogram_csv() const;
};

DemonReport run_demon(const DemonConfig &cfg);

/// Same run; kept as the entry point for multi-round inversion studies.
DemonReport heat_jump_scan(const DemonConfig &cfg);

/// Expected energy moved into box C per particle over the initial energy, for one round from T.
double analytic_transfer_fraction(
    size_t n, size_t dim, double r, Scheme scheme = Scheme::ico, double traj_scale = kCertifiedInterferenceScale);

/// Exact expectation of the transferred fraction over the full branch tree of cfg.rounds rounds.
double expected_transfer_tree(const DemonConfig &cfg);

struct InversionBound {
    /// Energy of the coldest state reachable by repeated cooling.
    double coldest_energy;
    /// Energy of the heating state produced from that coldest input, the hottest reachable.
    double hottest_heating_energy;
    bool inverts;
};

/// Analytic bound on multi-round heating: the cooling map is iterated to its fixed point, then heated.
InversionBound inversion_bound(
    Scheme scheme, size_t n, size_t dim, double r, double traj_scale = kCertifiedInterferenceScale);

/// Uniform double in [0, 1) from a splitmix64 hash of (seed, particle, round).
double particle_uniform(uint64_t seed, uint64_t particle, uint64_t round);

}  // namespace qfridge

#endif
