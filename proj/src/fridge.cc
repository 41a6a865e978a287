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

#include "qfridge/fridge.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qfridge/cswap.h"

namespace qfridge {

namespace {

void require_n(size_t n) {
    if (n < 2) {
        throw std::invalid_argument("need at least two channels, got " + std::to_string(n));
    }
}

double entropy_from(double p_c, double p_H, size_t n) {
    double s = 0;
    if (p_c > 0) {
        s -= p_c * std::log(p_c);
    }
    if (p_H > 0) {
        s -= p_H * std::log(p_H / static_cast<double>(n - 1));
    }
    return s;
}

double heating_probability(Scheme scheme, size_t n, size_t dim, double r, double s) {
    const double nn = static_cast<double>(n);
    const double m = static_cast<double>(dim - 1);
    const double z = 1.0 + m * r;
    if (scheme == Scheme::traj) {
        return (nn - 1) / nn * (1.0 - s * (1.0 + m * r * r) / (z * z));
    }
    return (nn - 1) / nn * (1.0 - (1.0 + m * r * r * r) / (z * z * z));
}

}  // namespace

Scheme parse_scheme(std::string_view name) {
    if (name == "ico") {
        return Scheme::ico;
    }
    if (name == "cswap") {
        return Scheme::cswap;
    }
    if (name == "traj") {
        return Scheme::traj;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected ico, cswap or traj)");
}

const char *to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::ico:
            return "ico";
        case Scheme::cswap:
            return "cswap";
        case Scheme::traj:
            return "traj";
    }
    return "?";
}

const char *to_string(StopReason reason) {
    switch (reason) {
        case StopReason::tolerance:
            return "tolerance";
        case StopReason::budget:
            return "budget";
        case StopReason::floor:
            return "floor";
    }
    return "?";
}

DiagonalBranches diagonal_branches(
    Scheme scheme, size_t n, const std::vector<double> &t, const std::vector<double> &input, double traj_scale) {
    require_n(n);
    if (t.size() != input.size()) {
        throw DimensionError("diagonal_branches: thermal and input populations differ in length");
    }
    const double nn = static_cast<double>(n);
    DiagonalBranches b{0, 0, std::vector<double>(t.size()), std::vector<double>(t.size())};
    for (size_t i = 0; i < t.size(); i++) {
        const double q = scheme == Scheme::traj ? traj_scale * t[i] * input[i] : t[i] * input[i] * t[i];
        b.cooling[i] = (t[i] + (nn - 1) * q) / nn;
        b.heating[i] = (nn - 1) / nn * (t[i] - q);
        b.p_c += b.cooling[i];
        b.p_H += b.heating[i];
    }
    for (size_t i = 0; i < t.size(); i++) {
        b.cooling[i] = b.p_c > 0 ? b.cooling[i] / b.p_c : 0;
        b.heating[i] = b.p_H > 0 ? b.heating[i] / b.p_H : 0;
    }
    return b;
}

double heating_energy(Scheme scheme, size_t dim, double r, double traj_scale) {
    const double m = static_cast<double>(dim - 1);
    const double z = 1.0 + m * r;
    if (scheme == Scheme::traj) {
        const double s = traj_scale;
        if (s == 1.0) {
            return m * (z - r) / (m + m * (z - r));
        }
        const double excited = m * r * (z - s * r);
        return excited / ((z - s) + excited);
    }
    const double a = z * z - r * r;
    return a / (z + 1.0 + a);
}

BranchEnergetics branch_energetics(Scheme scheme, size_t n, size_t dim, double r, double traj_scale) {
    require_n(n);
    BranchEnergetics e{};
    e.p_H = heating_probability(scheme, n, dim, r, traj_scale);
    e.p_c = 1.0 - e.p_H;
    e.e_t = degenerate_excited_population(dim, r);
    e.e_h = heating_energy(scheme, dim, r, traj_scale);
    e.e_c = e.p_c > 0 ? (e.e_t - e.p_H * e.e_h) / e.p_c : e.e_t;
    return e;
}

double register_entropy(size_t n, const ThermalSpec &spec, Scheme scheme, double traj_scale) {
    const auto t = spec.populations();
    const auto b = diagonal_branches(scheme, n, t, t, traj_scale);
    return entropy_from(b.p_c, b.p_H, n);
}

double work_cost(double entropy, double beta_r) {
    if (entropy < 0) {
        throw std::invalid_argument("work_cost: entropy must be nonnegative");
    }
    if (!(beta_r > 0)) {
        throw std::invalid_argument("work_cost: beta_R must be positive");
    }
    return entropy / beta_r;
}

namespace {

// Heat extracted per cycle from all mediums, and the number of mediums dumped into the hot bath.
std::pair<double, double> extracted_heat(Scheme scheme, size_t n, size_t dim, double r, const BranchEnergetics &e) {
    if (scheme == Scheme::cswap) {
        if (dim != 2) {
            throw DimensionError("the cswap scheme is defined for qubits only");
        }
        return {cswap_total_weighted_energy(n, r), static_cast<double>(n + 1)};
    }
    return {e.p_H * (e.e_h - e.e_t), 1.0};
}

}  // namespace

double cop_normalized(size_t n, size_t dim, double r, double r_hot, Scheme scheme, double traj_scale) {
    const auto e = branch_energetics(scheme, n, dim, r, traj_scale);
    const auto [extracted, mediums] = extracted_heat(scheme, n, dim, r, e);
    const double e_hot = degenerate_excited_population(dim, r_hot);
    const double numerator = extracted - mediums * e.p_H * (e_hot - e.e_t);
    const double s = entropy_from(e.p_c, e.p_H, n);
    return s > 0 ? numerator / s : 0.0;
}

double cop(size_t n, size_t dim, double r, double r_hot, double beta_r, Scheme scheme, double traj_scale) {
    if (!(beta_r > 0)) {
        throw std::invalid_argument("cop: beta_R must be positive");
    }
    return cop_normalized(n, dim, r, r_hot, scheme, traj_scale) * beta_r;
}

double heating_effective_r(Scheme scheme, size_t n, size_t dim, double r, double traj_scale) {
    const auto e = branch_energetics(scheme, n, dim, r, traj_scale);
    const auto [extracted, mediums] = extracted_heat(scheme, n, dim, r, e);
    const double energy = e.e_t + extracted / (mediums * e.p_H);
    const double m = static_cast<double>(dim - 1);
    return energy / (m * (1.0 - energy));
}

double lowest_r(Scheme scheme, double r_start, double k) {
    if (!(k > 0)) {
        throw std::invalid_argument("lowest_r: k must be positive");
    }
    if (!(r_start > 0 && r_start <= 1)) {
        throw std::invalid_argument("lowest_r: r_start must lie in (0, 1]");
    }
    double raw;
    switch (scheme) {
        case Scheme::ico:
            raw = (k - (2 * k + 3) * r_start) / (k * r_start - 3 - 2 * k);
            break;
        case Scheme::traj:
            raw = (k - (k + 2) * r_start) / (k * r_start - 2 - k);
            break;
        default:
            throw std::invalid_argument("lowest_r has closed forms for ico and traj only");
    }
    return std::clamp(raw, 0.0, r_start);
}

double lowest_r_fixed_point(Scheme scheme, double r_start, double k, size_t dim, double traj_scale) {
    if (!(k > 0)) {
        throw std::invalid_argument("lowest_r_fixed_point: k must be positive");
    }
    if (scheme == Scheme::cswap) {
        throw std::invalid_argument("lowest_r_fixed_point supports ico and traj");
    }
    const double x0 = degenerate_excited_population(dim, r_start);
    auto f = [&](double rp) {
        return (x0 - degenerate_excited_population(dim, rp)) - k * (heating_energy(scheme, dim, rp, traj_scale) - x0);
    };
    if (f(0.0) <= 0) {
        return 0.0;
    }
    double lo = 0, hi = r_start;
    if (f(hi) > 0) {
        return r_start;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

CycleTrace run_cycles(
    Scheme scheme, ReservoirEnsemble ens, size_t n, size_t dim, uint64_t seed, const CycleOptions &opt) {
    require_n(n);
    if (scheme == Scheme::cswap) {
        throw std::invalid_argument("run_cycles supports the ico and traj schemes");
    }
    if (!(ens.n_c > 0 && ens.n_H > 0)) {
        throw std::invalid_argument("run_cycles: reservoir sizes must be positive");
    }
    ThermalSpec::Degenerate(dim, ens.r_cold);
    ThermalSpec::Degenerate(dim, ens.r_hot);
    if (!(opt.beta_r > 0)) {
        throw std::invalid_argument("run_cycles: beta_R must be positive");
    }

    const double emax = static_cast<double>(dim - 1) / static_cast<double>(dim);
    double x_c = degenerate_excited_population(dim, ens.r_cold);
    double x_h = degenerate_excited_population(dim, ens.r_hot);
    auto r_of = [&](double x) { return degenerate_r_from_excited_population(dim, std::clamp(x, 0.0, emax)); };

    std::mt19937_64 rng(seed);
    CycleTrace trace;
    double work = 0;
    uint64_t batch = 0;
    std::optional<CycleRecord> pending;
    const double s = opt.traj_scale;
    for (;;) {
        const double r_c = r_of(x_c);
        const auto e = branch_energetics(scheme, n, dim, r_c, s);
        const double gap = e.e_h - x_h;
        if (gap <= opt.tolerance) {
            trace.stop = StopReason::tolerance;
            break;
        }
        if (r_c <= opt.r_floor) {
            trace.stop = StopReason::floor;
            break;
        }
        if (trace.cycles >= opt.max_cycles) {
            trace.stop = StopReason::budget;
            break;
        }

        uint64_t size = 1;
        if (opt.batch_fraction > 0 && e.p_H > 0) {
            const double dr = 1e-6 * std::max(r_c, 1e-9);
            const double r_lo = std::max(r_c - dr, 0.0);
            const double slope = (heating_energy(scheme, dim, r_c + dr, s) - heating_energy(scheme, dim, r_lo, s)) /
                                 (degenerate_excited_population(dim, r_c + dr) -
                                  degenerate_excited_population(dim, r_lo));
            const double rate = e.p_H * (std::abs(slope) / ens.n_c + 1.0 / ens.n_H);
            const double by_gap = opt.batch_fraction / rate;
            const double by_cold = opt.batch_fraction * x_c * ens.n_c / (e.p_H * gap);
            const double b = std::floor(std::min(by_gap, by_cold));
            if (b > 1) {
                size = b >= 9.0e18 ? ~uint64_t{0} : static_cast<uint64_t>(b);
            }
        }
        size = std::min(size, opt.max_cycles - trace.cycles);

        std::binomial_distribution<uint64_t> draw(size, std::clamp(e.p_c, 0.0, 1.0));
        const uint64_t n_cool = draw(rng);
        const uint64_t n_heat = size - n_cool;
        const double cool = static_cast<double>(n_cool);
        const double heat = static_cast<double>(n_heat);
        const double heat_cold = cool * (e.e_c - x_c) + heat * (x_h - x_c);
        const double heat_hot = heat * (e.e_h - x_h);
        const double medium_heat = cool * (e.e_c - x_c) + heat * (e.e_h - x_c);
        const double entropy = entropy_from(e.p_c, e.p_H, n);
        x_c = std::clamp(x_c + heat_cold / ens.n_c, 0.0, emax);
        x_h = std::clamp(x_h + heat_hot / ens.n_H, 0.0, emax);
        work += static_cast<double>(size) * entropy / opt.beta_r;
        trace.cycles += size;
        batch++;

        CycleRecord rec{
            trace.cycles,
            size == 1 ? (n_cool == 1 ? "cooling" : "heating") : "mixed",
            r_of(x_c),
            r_of(x_h),
            heat_cold,
            heat_hot,
            work,
            entropy,
            medium_heat,
        };
        if (opt.record_every <= 1 || (batch - 1) % opt.record_every == 0) {
            trace.records.push_back(std::move(rec));
            pending.reset();
        } else {
            pending = std::move(rec);
        }
    }
    if (pending) {
        trace.records.push_back(std::move(*pending));
    }
    ens.r_cold = r_of(x_c);
    ens.r_hot = r_of(x_h);
    trace.final_state = ens;
    return trace;
}

std::string CycleTrace::csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "cycle,branch,r_cold,r_hot,heat_cold,heat_hot,work,entropy\n";
    for (const auto &r : records) {
        out << r.cycle << "," << r.branch << "," << r.r_cold << "," << r.r_hot << "," << r.heat_cold << ","
            << r.heat_hot << "," << r.work << "," << r.entropy << "\n";
    }
    return out.str();
}

}  // namespace qfridge
