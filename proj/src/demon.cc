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

#include "qfridge/demon.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qfridge {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double energy_of(const std::vector<double> &pops) {
    double e = 0;
    for (size_t i = 1; i < pops.size(); i++) {
        e += pops[i];
    }
    return e;
}

class KahanSum {
   public:
    void add(double v) {
        double y = v - c_;
        double t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const {
        return sum_;
    }

   private:
    double sum_ = 0;
    double c_ = 0;
};

struct ParticleResult {
    std::vector<double> pops;
    bool box_c = false;
    uint32_t first_inversion = 0;
    std::vector<double> energy_per_round;
};

ParticleResult simulate_particle(const DemonConfig &cfg, const std::vector<double> &t, uint64_t particle) {
    ParticleResult res{t, false, 0, {}};
    res.energy_per_round.reserve(cfg.rounds);
    for (uint32_t round = 0; round < cfg.rounds; round++) {
        const auto b = diagonal_branches(cfg.scheme, cfg.n, t, res.pops, cfg.traj_scale);
        const bool cooled = particle_uniform(cfg.seed, particle, round) < b.p_c;
        res.pops = cooled ? b.cooling : b.heating;
        res.box_c = !cooled;
        const double e = energy_of(res.pops);
        res.energy_per_round.push_back(e);
        if (res.first_inversion == 0 && e > 0.5) {
            res.first_inversion = round + 1;
        }
    }
    return res;
}

double tree_gain(const DemonConfig &cfg, const std::vector<double> &t, const std::vector<double> &u, uint32_t left,
                 double e0) {
    const auto b = diagonal_branches(cfg.scheme, cfg.n, t, u, cfg.traj_scale);
    if (left == 1) {
        return b.p_H * (energy_of(b.heating) - e0);
    }
    return b.p_c * tree_gain(cfg, t, b.cooling, left - 1, e0) + b.p_H * tree_gain(cfg, t, b.heating, left - 1, e0);
}

}  // namespace

void DemonConfig::validate() const {
    if (particles == 0) {
        throw std::invalid_argument("demon: particles must be positive");
    }
    if (n < 2) {
        throw std::invalid_argument("demon: need at least two channels");
    }
    if (rounds < 1) {
        throw std::invalid_argument("demon: rounds must be at least 1");
    }
    if (scheme == Scheme::cswap) {
        throw std::invalid_argument("demon supports the ico and traj schemes");
    }
    if (scheme == Scheme::traj && dim != 2) {
        throw DimensionError("the traj scheme is defined for qubits only");
    }
    ThermalSpec::Degenerate(dim, r);
}

double particle_uniform(uint64_t seed, uint64_t particle, uint64_t round) {
    uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ particle);
    h = splitmix64(h ^ (round * 0xD1B54A32D192ED03ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

DemonReport run_demon(const DemonConfig &cfg) {
    cfg.validate();
    const auto t = ThermalSpec::Degenerate(cfg.dim, cfg.r).populations();
    const double e0 = energy_of(t);

    std::vector<ParticleResult> results(cfg.particles);
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.particles)));
    if (workers == 1) {
        for (uint64_t p = 0; p < cfg.particles; p++) {
            results[p] = simulate_particle(cfg, t, p);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back([&, w] {
                for (uint64_t p = w; p < cfg.particles; p += workers) {
                    results[p] = simulate_particle(cfg, t, p);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    DemonReport rep;
    rep.config = cfg;
    rep.initial_energy_per_particle = e0;
    rep.max_energy_per_round.assign(cfg.rounds, 0.0);
    rep.new_inversions_per_round.assign(cfg.rounds, 0);
    KahanSum before_c, before_d, after_c, after_d;
    for (uint64_t p = 0; p < cfg.particles; p++) {
        auto &res = results[p];
        const double e = energy_of(res.pops);
        rep.final_energy.push_back(e);
        rep.in_box_c.push_back(res.box_c ? 1 : 0);
        rep.first_inversion_round.push_back(res.first_inversion);
        for (uint32_t round = 0; round < cfg.rounds; round++) {
            rep.max_energy_per_round[round] = std::max(rep.max_energy_per_round[round], res.energy_per_round[round]);
        }
        if (res.first_inversion > 0) {
            rep.new_inversions_per_round[res.first_inversion - 1]++;
            rep.inverted_particles++;
        }
        if (res.box_c) {
            rep.heated++;
            before_c.add(e0);
            after_c.add(e);
        } else {
            rep.cooled++;
            before_d.add(e0);
            after_d.add(e);
        }
        rep.final_populations.push_back(std::move(res.pops));
    }
    rep.energy_before_total = static_cast<double>(cfg.particles) * e0;
    rep.energy_before_c = before_c.value();
    rep.energy_before_d = before_d.value();
    rep.energy_after_c = after_c.value();
    rep.energy_after_d = after_d.value();
    rep.transferred_fraction_c = (rep.energy_after_c - rep.energy_before_c) / rep.energy_before_total;
    rep.transferred_fraction_d = (rep.energy_before_d - rep.energy_after_d) / rep.energy_before_total;
    rep.transferred_fraction = 0.5 * (rep.transferred_fraction_c + rep.transferred_fraction_d);

    constexpr size_t kBins = 50;
    std::vector<double> rel(cfg.particles);
    for (uint64_t p = 0; p < cfg.particles; p++) {
        rel[p] = (rep.final_energy[p] - e0) / e0;
    }
    const auto [lo_it, hi_it] = std::minmax_element(rel.begin(), rel.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / kBins;
    for (size_t b = 0; b < kBins; b++) {
        rep.histogram.push_back({lo + width * static_cast<double>(b), lo + width * static_cast<double>(b + 1), 0, 0});
    }
    rep.histogram.back().right = hi;
    for (uint64_t p = 0; p < cfg.particles; p++) {
        auto b = static_cast<size_t>((rel[p] - lo) / width);
        b = std::min(b, kBins - 1);
        (rep.in_box_c[p] ? rep.histogram[b].count_box_c : rep.histogram[b].count_box_d)++;
    }
    return rep;
}

DemonReport heat_jump_scan(const DemonConfig &cfg) {
    return run_demon(cfg);
}

double analytic_transfer_fraction(size_t n, size_t dim, double r, Scheme scheme, double traj_scale) {
    const auto e = branch_energetics(scheme == Scheme::cswap ? Scheme::ico : scheme, n, dim, r, traj_scale);
    return e.p_H * (e.e_h - e.e_t) / e.e_t;
}

double expected_transfer_tree(const DemonConfig &cfg) {
    cfg.validate();
    if (cfg.rounds > 24) {
        throw BudgetError("expected_transfer_tree enumerates 2^rounds branches; rounds must be <= 24");
    }
    const auto t = ThermalSpec::Degenerate(cfg.dim, cfg.r).populations();
    const double e0 = energy_of(t);
    return tree_gain(cfg, t, t, cfg.rounds, e0) / e0;
}

InversionBound inversion_bound(Scheme scheme, size_t n, size_t dim, double r, double traj_scale) {
    const auto t = ThermalSpec::Degenerate(dim, r).populations();
    std::vector<double> u = t;
    for (int it = 0; it < 100000; it++) {
        const auto next = diagonal_branches(scheme, n, t, u, traj_scale).cooling;
        double delta = 0;
        for (size_t i = 0; i < u.size(); i++) {
            delta = std::max(delta, std::abs(next[i] - u[i]));
        }
        u = next;
        if (delta < 1e-16) {
            break;
        }
    }
    const double hottest = energy_of(diagonal_branches(scheme, n, t, u, traj_scale).heating);
    return {energy_of(u), hottest, hottest > 0.5};
}

nlohmann::json DemonReport::summary_json() const {
    nlohmann::json j;
    j["particles"] = config.particles;
    j["N"] = config.n;
    j["D"] = config.dim;
    j["r"] = config.r;
    j["scheme"] = to_string(config.scheme);
    j["rounds"] = config.rounds;
    j["seed"] = config.seed;
    j["cooled"] = cooled;
    j["heated"] = heated;
    j["cooled_fraction"] = static_cast<double>(cooled) / static_cast<double>(config.particles);
    j["energy_before_total"] = energy_before_total;
    j["energy_before_box_c"] = energy_before_c;
    j["energy_before_box_d"] = energy_before_d;
    j["energy_after_box_c"] = energy_after_c;
    j["energy_after_box_d"] = energy_after_d;
    j["transferred_fraction"] = transferred_fraction;
    j["transferred_fraction_box_c"] = transferred_fraction_c;
    j["transferred_fraction_box_d"] = transferred_fraction_d;
    j["analytic_transfer_fraction"] =
        analytic_transfer_fraction(config.n, config.dim, config.r, config.scheme, config.traj_scale);
    j["inverted_particles"] = inverted_particles;
    j["max_energy_per_round"] = max_energy_per_round;
    j["new_inversions_per_round"] = new_inversions_per_round;
    return j;
}

std::string DemonReport::histogram_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "bin_left,bin_right,count_boxC,count_boxD\n";
    for (const auto &b : histogram) {
        out << b.left << "," << b.right << "," << b.count_box_c << "," << b.count_box_d << "\n";
    }
    return out.str();
}

}  // namespace qfridge
