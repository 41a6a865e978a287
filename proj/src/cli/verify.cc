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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "qfridge/cli.h"
#include "qfridge/cswap.h"
#include "qfridge/demon.h"
#include "qfridge/fridge.h"
#include "qfridge/measurement.h"
#include "qfridge/nswitch.h"
#include "qfridge/trajectories.h"

namespace qfridge::cli {

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Check {
    const char *name;
    Outcome (*run)();
};

std::string g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Outcome within(double err, double tol, const std::string &what = "max error") {
    return {err <= tol, what + " " + g(err) + " (tol " + g(tol) + ")"};
}

ComplexMatrix random_matrix(std::mt19937_64 &rng, size_t rows, size_t cols) {
    std::normal_distribution<double> nd;
    ComplexMatrix m(rows, cols);
    for (auto &e : m.entries()) {
        e = Complex(nd(rng), nd(rng));
    }
    return m;
}

DensityMatrix random_state(std::mt19937_64 &rng, size_t d) {
    const auto g = random_matrix(rng, d, d);
    return DensityMatrix::normalized(g * g.adjoint());
}

double excited(const ComplexMatrix &m) {
    return m(1, 1).real() / m.trace().real();
}

Outcome qmat_partial_trace_kron() {
    std::mt19937_64 rng(11);
    double worst = 0;
    for (size_t da = 1; da <= 8; da++) {
        for (size_t db = 1; db * da <= 64; db++) {
            const auto a = random_matrix(rng, da, da);
            const auto b = random_matrix(rng, db, db);
            const size_t keep[] = {0};
            const auto pt = partial_trace(kron(a, b), {{da, db}}, keep);
            worst = std::max(worst, max_abs_diff(pt, a * b.trace()));
        }
    }
    return within(worst, 1e-12);
}

Outcome qmat_kron_mixed_product() {
    std::mt19937_64 rng(12);
    double worst = 0;
    for (size_t d = 1; d <= 4; d++) {
        const auto a = random_matrix(rng, d, d), b = random_matrix(rng, d + 1, d + 1);
        const auto c = random_matrix(rng, d, d), e = random_matrix(rng, d + 1, d + 1);
        worst = std::max(worst, max_abs_diff(kron(a, b) * kron(c, e), kron(a * c, b * e)));
        worst = std::max(worst, max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))));
    }
    return within(worst, 1e-12);
}

Outcome qmat_pauli_completeness() {
    std::mt19937_64 rng(13);
    double worst = 0;
    for (size_t d : {2, 3, 4}) {
        const auto basis = pauli_basis(d);
        const auto x = random_matrix(rng, d, d);
        ComplexMatrix sum(d, d);
        for (const auto &u : basis) {
            sum += sandwich(u, x);
        }
        worst = std::max(worst, max_abs_diff(sum, ComplexMatrix::identity(d) * (x.trace() * Complex(double(d)))));
        for (size_t i = 0; i < basis.size(); i++) {
            for (size_t j = 0; j < basis.size(); j++) {
                const Complex ip = (basis[i].adjoint() * basis[j]).trace();
                worst = std::max(worst, std::abs(ip - Complex(i == j ? double(d) : 0.0)));
            }
        }
    }
    return within(worst, 1e-12);
}

Outcome thermal_gibbs_trace() {
    double worst = 0;
    bool nonneg = true;
    for (size_t d : {2, 3, 5, 10}) {
        for (double r = 0.01; r <= 1.0; r += 0.01) {
            const auto t = gibbs_state(ThermalSpec::Degenerate(d, r)).matrix();
            worst = std::max(worst, std::abs(t.trace() - Complex(1)));
            for (double p : t.real_diagonal()) {
                nonneg = nonneg && p >= 0;
            }
        }
    }
    auto o = within(worst, 1e-14, "trace error");
    return {o.pass && nonneg, o.detail};
}

Outcome thermal_effective_r_round_trip() {
    double worst = 0;
    for (int i = 1; i <= 99; i++) {
        const double r = i / 100.0;
        const auto e = effective_r(gibbs_state(ThermalSpec::Qubit(r)));
        worst = std::max(worst, e.negative_temperature ? 1.0 : std::abs(e.r - r));
    }
    return within(worst, 1e-12);
}

Outcome thermal_degenerate_population() {
    double worst = 0;
    for (size_t d : {2, 3, 5, 10}) {
        for (double r : {1e-4, 0.1, 0.5, 1.0}) {
            const auto p = ThermalSpec::Degenerate(d, r).populations();
            const double x = (d - 1) * r / (1 + (d - 1) * r);
            worst = std::max(worst, std::abs(1 - p[0] - x));
            worst = std::max(worst, std::abs(degenerate_excited_population(d, r) - x));
            worst = std::max(worst, std::abs(degenerate_r_from_excited_population(d, x) - r));
        }
    }
    return within(worst, 1e-12);
}

Outcome channels_completeness() {
    double worst = 0;
    for (size_t d : {2, 3, 4}) {
        worst = std::max(worst, depolarizing_kraus(d).completeness_error());
        for (double r : {0.05, 0.5, 1.0}) {
            worst = std::max(worst, thermalizing_kraus(ThermalSpec::Degenerate(d, r)).completeness_error());
        }
    }
    worst = std::max(worst, thermalizing_kraus(ThermalSpec({1.0, 2.5}, {0.4, 0.1})).completeness_error());
    return within(worst, 1e-10);
}

Outcome channels_input_independent() {
    std::mt19937_64 rng(21);
    double worst = 0;
    for (size_t d : {2, 3}) {
        const auto spec = ThermalSpec::Degenerate(d, 0.3);
        const auto k = thermalizing_kraus(spec);
        const auto t = gibbs_state(spec).matrix();
        for (int i = 0; i < 100; i++) {
            worst = std::max(worst, max_abs_diff(apply_channel(k, random_state(rng, d)).matrix(), t));
        }
    }
    return within(worst, 1e-12);
}

Outcome channels_obtainability() {
    bool ok = true;
    double margin = 1;
    for (int i = 1; i <= 20; i++) {
        const double r = i / 21.0;
        const auto m = TrajectoryConfig::canonical(2, r).m_list[0];
        ok = ok && m.obtainable && m.constraint_value < 0.5;
        margin = std::min(margin, 0.5 - m.constraint_value);
    }
    return {ok, "smallest slack below 1/2 " + g(margin) + " over 20 r values"};
}

Outcome nswitch_closed_form_vs_bruteforce() {
    std::mt19937_64 rng(31);
    double worst = 0;
    for (size_t n : {2, 3, 4}) {
        for (size_t d : {2, 3}) {
            for (double r : {0.1, 0.5, 0.9}) {
                const auto spec = ThermalSpec::Degenerate(d, r);
                const auto rho = random_state(rng, d);
                const auto a = switch_closed_form(n, rho, gibbs_state(spec));
                const auto b = switch_bruteforce(OrderSet::cyclic(n), rho, spec);
                worst = std::max(worst, max_abs_diff(a.joint.matrix(), b.joint.matrix()));
            }
        }
    }
    return within(worst, 1e-10);
}

Outcome nswitch_sudoku_blocks() {
    const auto spec = ThermalSpec::Qubit(0.5);
    const auto t = gibbs_state(spec);
    double worst = 0;
    const OrderSet s3{3, {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
    const OrderSet s4{4, {{0, 1, 2, 3}, {1, 3, 0, 2}, {2, 0, 3, 1}, {3, 2, 1, 0}}};
    for (const auto &[set, power] : {std::pair{s3, 3u}, std::pair{s4, 5u}}) {
        const auto out = switch_bruteforce(set, t, spec);
        const auto expect = matrix_power(t.matrix(), power) * Complex(1.0 / double(set.n));
        for (size_t i = 0; i < set.n; i++) {
            for (size_t j = 0; j < set.n; j++) {
                if (i != j) {
                    worst = std::max(worst, max_abs_diff(out.block(i, j), expect));
                }
            }
        }
    }
    return within(worst, 1e-10, "off-diagonal blocks vs T^3 / T^5");
}

Outcome nswitch_diagonal_blocks() {
    std::mt19937_64 rng(32);
    double worst = 0;
    for (size_t n : {2, 3, 4}) {
        const auto spec = ThermalSpec::Degenerate(3, 0.4);
        const auto out = switch_bruteforce(OrderSet::cyclic(n), random_state(rng, 3), spec);
        const auto t = gibbs_state(spec).matrix() * Complex(1.0 / double(n));
        for (size_t i = 0; i < n; i++) {
            worst = std::max(worst, max_abs_diff(out.block(i, i), t));
        }
        worst = std::max(worst, std::abs(out.joint.matrix().trace() - Complex(1)));
        worst = std::max(worst, is_hermitian(out.joint.matrix()) ? 0.0 : 1.0);
    }
    return within(worst, 1e-10);
}

Outcome nswitch_branch_normalization() {
    double worst = 0;
    for (size_t n : {2, 3, 5, 10, 100}) {
        for (size_t d : {2, 3, 5}) {
            for (double r : {1e-3, 0.1, 0.5, 0.9, 1.0}) {
                const auto s = branch_stats(n, ThermalSpec::Degenerate(d, r));
                worst = std::max(worst, std::abs(s.p_c + double(n - 1) * s.p_h - 1));
            }
        }
    }
    const double p = branch_stats(2, ThermalSpec::Qubit(1.0)).p_H;
    return {worst <= 1e-12 && std::abs(p - 0.375) <= 1e-12,
            "normalization error " + g(worst) + ", p_H(N=2, r=1) = " + format_number(p)};
}

Outcome nswitch_energy_balance() {
    double worst = 0;
    for (size_t n : {2, 4, 10}) {
        for (size_t d : {2, 4}) {
            for (double r : {0.1, 0.5, 0.9}) {
                const auto w = weighted_energy(n, d, r);
                worst = std::max(worst, std::abs(w.heating + w.cooling));
                const auto spec = ThermalSpec::Degenerate(d, r);
                const auto h = Hamiltonian::from_spec(spec);
                const auto t = gibbs_state(spec);
                const auto out = switch_closed_form(n, t, t);
                const auto branches = measure_control(out, build_basis(n));
                const double from_outcomes = mean_energy(branches[0].unnormalized, h) - branches[0].probability *
                                                                                             mean_energy(t, h);
                worst = std::max(worst, std::abs(from_outcomes - w.cooling));
            }
        }
    }
    return within(worst, 1e-12);
}

Outcome nswitch_heating_state_n_independent() {
    double worst = 0;
    for (size_t d : {2, 3}) {
        for (double r : {0.1, 0.5, 0.9}) {
            const auto spec = ThermalSpec::Degenerate(d, r);
            const auto ref = branch_stats(2, spec).rho_h.matrix();
            for (size_t n : {3, 5, 17, 1000}) {
                worst = std::max(worst, max_abs_diff(branch_stats(n, spec).rho_h.matrix(), ref));
            }
        }
    }
    return within(worst, 1e-12);
}

Outcome nswitch_qudit_closed_forms() {
    double worst = 0;
    for (size_t n : {2, 3, 10}) {
        for (size_t d : {2, 3, 5, 10}) {
            for (double r : {1e-3, 0.2, 0.7, 1.0}) {
                const auto s = branch_stats(n, ThermalSpec::Degenerate(d, r));
                worst = std::max(worst, std::abs(qudit_heating_probability(n, d, r) - s.p_H));
                worst = std::max(worst, std::abs(qudit_branch_stats(n, d, r).p_H - s.p_H));
                worst = std::max(worst,
                                 std::abs(qudit_weighted_energy_closed_form(n, d, r) - weighted_energy(n, d, r).heating));
            }
        }
    }
    return within(worst, 1e-12);
}

Outcome nswitch_doubling() {
    double lo = 10, hi = 0;
    for (double r : {0.1, 0.3, 0.5}) {
        const double ratio = weighted_energy(1'000'000, 2, r).heating / weighted_energy(2, 2, r).heating;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo >= 1.99 && hi <= 2.0, "ratio range [" + format_number(lo) + ", " + format_number(hi) + "]"};
}

Outcome nswitch_qudit_boost() {
    double worst = 0;
    const double r = 1e-4;
    for (size_t d : {2, 5, 10}) {
        for (size_t n : {2, 10}) {
            const double boost = weighted_energy(n, d, r).heating / weighted_energy(2, 2, r).heating;
            const double expect = 2.0 * double(d - 1) * double(n - 1) / double(n);
            worst = std::max(worst, std::abs(boost / expect - 1));
        }
    }
    return within(worst, 0.05, "relative deviation");
}

Outcome measurement_basis_gram() {
    double worst = 0;
    for (size_t n = 2; n <= 64; n++) {
        const auto b = build_basis(n);
        worst = std::max(worst, max_abs_diff(b.gram(), ComplexMatrix::identity(n)));
        worst = std::max(worst, max_abs_diff(b.completeness(), ComplexMatrix::identity(n)));
        for (const auto &c : b.vectors[0]) {
            worst = std::max(worst, std::abs(c - Complex(1 / std::sqrt(double(n)))));
        }
    }
    return within(worst, 1e-12);
}

Outcome measurement_fine_outcomes() {
    std::mt19937_64 rng(41);
    double worst = 0;
    for (size_t n : {2, 3, 6, 16}) {
        const auto spec = ThermalSpec::Degenerate(2, 0.3);
        const auto out = switch_closed_form(n, random_state(rng, 2), gibbs_state(spec));
        const auto fine = measure_control_fine(out, build_basis(n));
        double total = 0;
        for (const auto &o : fine) {
            total += o.probability;
            if (o.label == BranchLabel::heating) {
                worst = std::max(worst, max_abs_diff(o.state->matrix(), fine[1].state->matrix()));
            }
        }
        worst = std::max(worst, std::abs(total - 1));
        const auto coarse = measure_control(out, build_basis(n));
        worst = std::max(worst, std::abs(coarse[0].probability + coarse[1].probability - 1));
        worst = std::max(worst, max_abs_diff(coarse[1].state->matrix(), fine[1].state->matrix()));
    }
    return within(worst, 1e-12);
}

Outcome measurement_branch_states() {
    std::mt19937_64 rng(42);
    double worst = 0;
    for (size_t n : {2, 3, 5}) {
        for (size_t d : {2, 3}) {
            const auto t = gibbs_state(ThermalSpec::Degenerate(d, 0.4));
            const auto rho = random_state(rng, d);
            const auto tm = t.matrix();
            const auto trt = tm * rho.matrix() * tm;
            const auto cooling = DensityMatrix::normalized(tm + trt * Complex(double(n - 1)));
            const auto heating = DensityMatrix::normalized(tm - trt);
            const auto m = measure_control(switch_closed_form(n, rho, t), build_basis(n));
            worst = std::max(worst, max_abs_diff(m[0].state->matrix(), cooling.matrix()));
            worst = std::max(worst, max_abs_diff(m[1].state->matrix(), heating.matrix()));
            const auto s = switch_branches(n, t, rho);
            worst = std::max(worst, max_abs_diff(s.rho_c.matrix(), cooling.matrix()));
            worst = std::max(worst, std::abs(s.p_c - m[0].probability));
        }
    }
    return within(worst, 1e-12);
}

Outcome measurement_entropy_identity() {
    double worst = 0;
    for (size_t m = 1; m <= 4; m++) {
        const size_t n = size_t(1) << m;
        const auto t = gibbs_state(ThermalSpec::Qubit(0.3));
        const auto p = povm_ancilla_scheme(m, switch_closed_form(n, t, t));
        const auto &e = p.entropies;
        worst = std::max(worst, std::abs(e.full - (e.ancilla + e.p_H * std::log(double(n - 1)))));
        worst = std::max(worst, std::abs(e.full - register_entropy(n, ThermalSpec::Qubit(0.3), Scheme::ico)));
    }
    return within(worst, 1e-10);
}

Outcome cswap_local_marginals() {
    double worst = 0;
    for (size_t n = 2; n <= 5; n++) {
        const double r = 0.35;
        const auto s = cswap_evolve(n, r);
        const auto t = gibbs_state(ThermalSpec::Qubit(r)).matrix();
        for (size_t q = 0; q < s.qubit_count(); q++) {
            worst = std::max(worst, max_abs_diff(qubit_marginal(s, q), t));
        }
    }
    return within(worst, 1e-10);
}

Outcome cswap_closed_forms() {
    double worst = 0;
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.1, 0.5, 0.9}) {
            const auto br = cswap_branches(cswap_evolve(n, r), build_basis(n));
            const Complex inv(1.0 / br.p_c);
            worst = std::max(worst,
                             max_abs_diff(qubit_marginal(br.cooling, 0), target_cooling_marginal_closed_form(n, r) * inv));
            for (size_t q = 1; q <= n; q++) {
                worst = std::max(worst, max_abs_diff(qubit_marginal(br.cooling, q),
                                                     reservoir_cooling_marginal_closed_form(n, r) * inv));
            }
        }
    }
    return within(worst, 1e-10);
}

Outcome cswap_matches_switch() {
    double worst = 0;
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.1, 0.5, 0.9}) {
            const auto br = cswap_branches(cswap_evolve(n, r), build_basis(n));
            const auto s = branch_stats(n, ThermalSpec::Qubit(r));
            worst = std::max(worst, max_abs_diff(qubit_marginal(br.cooling, 0), s.rho_c.matrix()));
            worst = std::max(worst, std::abs(br.p_c - s.p_c) * 1e2);
            worst = std::max(worst, std::abs(br.p_H - s.p_H) * 1e2);
        }
    }
    return within(worst, 1e-10, "max error (probabilities scaled to a 1e-12 budget)");
}

Outcome cswap_energy_identity_check() {
    double worst = 0;
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.1, 0.5, 0.9}) {
            const auto e = cswap_energy_identity(n, r);
            worst = std::max(worst, std::abs(e.lhs - e.rhs));
        }
    }
    return within(worst, 1e-10);
}

Outcome cswap_discard_invariance() {
    double worst = 0;
    size_t orders = 0;
    for (size_t n = 2; n <= 4; n++) {
        const double r = 0.3;
        const auto spec = ThermalSpec::Qubit(r);
        const double t1 = spec.populations()[1];
        const auto br = cswap_branches(cswap_evolve(n, r), build_basis(n));
        std::vector<double> initial;
        for (size_t q = 0; q <= n; q++) {
            initial.push_back(excited(qubit_marginal(br.cooling, q)));
        }
        std::vector<size_t> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        do {
            orders++;
            const auto snaps = sequential_discard(br.cooling, order, spec);
            std::vector<bool> gone(n + 1, false);
            for (const auto &s : snaps) {
                gone[s.qubit] = true;
                for (size_t q = 0; q <= n; q++) {
                    worst = std::max(worst, std::abs(s.p_excited[q] - (gone[q] ? t1 : initial[q])));
                }
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
    auto o = within(worst, 1e-10);
    o.detail += " over " + std::to_string(orders) + " discard orders";
    return o;
}

Outcome cswap_tripling() {
    double worst = 0;
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const auto shifts = cswap_weighted_shifts(n, r);
            const double total = std::accumulate(shifts.begin(), shifts.end(), 0.0);
            worst = std::max(worst, std::abs(total / shifts[0] - 3) / 3);
            worst = std::max(worst, std::abs(cswap_total_weighted_energy(n, r) / weighted_energy(n, 2, r).heating - 3) / 3);
        }
    }
    return within(worst, 1e-9, "relative error");
}

Outcome traj_dilation() {
    double worst = 0;
    for (size_t n : {2, 3}) {
        for (double r : {0.1, 0.5, 0.9}) {
            const auto cfg = TrajectoryConfig::canonical(n, r);
            const auto t = gibbs_state(ThermalSpec::Qubit(r));
            worst = std::max(worst, max_abs_diff(traj_output(cfg, t).joint.matrix(), dilation_oracle(cfg, t).joint.matrix()));
        }
    }
    return within(worst, 1e-10);
}

Outcome traj_random_environments() {
    bool flags_ok = true;
    double worst = 0;
    size_t rejected = 0;
    std::mt19937_64 rng(51);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 40; trial++) {
        const double r = 0.05 + 0.9 * (trial % 10) / 9.0;
        const auto spec = ThermalSpec::Qubit(r);
        auto k = thermalizing_kraus(spec);
        std::vector<Complex> overlap(k.operators.size());
        double norm = 0;
        for (auto &c : overlap) {
            c = Complex(nd(rng), nd(rng));
            norm += std::norm(c);
        }
        const double shrink = trial % 2 == 0 ? 1.0 : 0.7;
        for (auto &c : overlap) {
            c *= shrink / std::sqrt(norm);
        }
        const auto cfg = TrajectoryConfig::uniform(2, std::move(k), overlap);
        for (const auto &m : cfg.m_list) {
            flags_ok = flags_ok && m.obtainable == (m.constraint_value <= 0.5 + 1e-10);
            rejected += m.obtainable ? 0 : 1;
        }
        const auto t = gibbs_state(spec);
        worst = std::max(worst, max_abs_diff(traj_output(cfg, t).joint.matrix(), dilation_oracle(cfg, t).joint.matrix()));
    }
    auto o = within(worst, 1e-10, "dilation error");
    return {o.pass && flags_ok, o.detail + ", " + std::to_string(rejected) + " of 80 paths flagged above tr(M^dag T M) = 1/2"};
}

Outcome traj_branches_valid() {
    double worst = 0;
    for (size_t n : {2, 3, 8}) {
        for (double r : {0.05, 0.5, 0.95}) {
            const auto b = traj_branches(TrajectoryConfig::canonical(n, r), ThermalSpec::Qubit(r));
            worst = std::max(worst, std::abs(b.p_c + b.p_H - 1));
            for (const auto *rho : {&b.rho_c, &b.rho_h}) {
                const auto &m = rho->matrix();
                worst = std::max(worst, std::abs(m.trace() - Complex(1)));
                const double a = m(0, 0).real(), d = m(1, 1).real();
                const double lmin = 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
                worst = std::max(worst, std::max(0.0, -lmin - 1e-10 + 1e-12));
            }
        }
    }
    return within(worst, 1e-12);
}

double cycle_asymptote_error(Scheme scheme, double scale, bool closed_form) {
    double worst = 0;
    for (double k : {0.5, 1.0, 5.0, 100.0}) {
        for (int i = 0; i < 10; i++) {
            const double r = 0.05 + 0.1 * i;
            CycleOptions opt;
            opt.r_floor = 1e-4;
            opt.traj_scale = scale;
            opt.max_cycles = ~0ULL;
            opt.record_every = ~0ULL;
            const auto trace = run_cycles(scheme, {1e10, k * 1e10, r, r}, 2, 2, 7, opt);
            const double expect = closed_form ? lowest_r(scheme, r, k) : lowest_r_fixed_point(scheme, r, k, 2, scale);
            worst = std::max(worst, std::abs(trace.final_state.r_cold - expect));
        }
    }
    return worst;
}

Outcome fridge_asymptote_closed_forms() {
    return within(std::max(cycle_asymptote_error(Scheme::ico, 1.0, true), cycle_asymptote_error(Scheme::traj, 1.0, true)),
                  1e-3, "max |r' - closed form|");
}

Outcome fridge_asymptote_certified_scale() {
    return within(cycle_asymptote_error(Scheme::traj, kCertifiedInterferenceScale, false), 1e-3,
                  "max |r' - fixed point|");
}

Outcome fridge_closed_form_vs_fixed_point() {
    double worst = 0;
    for (Scheme s : {Scheme::ico, Scheme::traj}) {
        for (double k : {0.5, 1.0, 5.0, 100.0}) {
            for (int i = 0; i < 10; i++) {
                const double r = 0.05 + 0.1 * i;
                worst = std::max(worst, std::abs(lowest_r(s, r, k) - lowest_r_fixed_point(s, r, k, 2, 1.0)));
            }
        }
    }
    return within(worst, 1e-9);
}

Outcome fridge_high_k_floors() {
    const double ico = lowest_r(Scheme::ico, 0.6, 1e9);
    double traj = 0;
    for (int i = 0; i < 20; i++) {
        traj = std::max(traj, lowest_r(Scheme::traj, 0.025 + 0.05 * i, 1e9));
    }
    const double expect = (1 - 2 * 0.6) / (0.6 - 2);
    return {std::abs(ico - expect) <= 1e-3 && traj <= 1e-3,
            "ico floor " + format_number(ico) + ", largest traj floor " + g(traj)};
}

Outcome fridge_energy_bookkeeping() {
    double worst = 0;
    for (Scheme s : {Scheme::ico, Scheme::traj}) {
        for (double frac : {0.0, 1e-3}) {
            CycleOptions opt;
            opt.batch_fraction = frac;
            opt.max_cycles = frac == 0 ? 2000 : 200000;
            const auto trace = run_cycles(s, {1e4, 2e4, 0.4, 0.4}, 3, 2, 5, opt);
            for (const auto &rec : trace.records) {
                const double scale = std::max(1.0, std::abs(rec.medium_heat));
                worst = std::max(worst, std::abs(rec.medium_heat - rec.heat_cold - rec.heat_hot) / scale);
            }
        }
    }
    return within(worst, 1e-10);
}

Outcome fridge_cop_zero_point() {
    double worst = 0;
    for (Scheme s : {Scheme::ico, Scheme::cswap, Scheme::traj}) {
        for (size_t n : {2, 4, 6}) {
            for (double r : {0.1, 0.3, 0.6, 0.9}) {
                worst = std::max(worst, std::abs(cop_normalized(n, 2, r, heating_effective_r(s, n, 2, r), s)));
            }
        }
    }
    return within(worst, 1e-10, "max |COP|");
}

Outcome fridge_cop_nonnegative() {
    double lowest = 1;
    for (Scheme s : {Scheme::ico, Scheme::cswap, Scheme::traj}) {
        for (size_t n : {2, 5}) {
            for (double r : {0.1, 0.4, 0.8}) {
                for (double f : {0.0, 0.25, 0.5, 1.0}) {
                    lowest = std::min(lowest, cop(n, 2, r, f * r, 2.0, s));
                }
            }
        }
    }
    return {lowest >= 0, "smallest COP with r_hot <= r " + g(lowest)};
}

Outcome fridge_cswap_cop_tripling() {
    double worst = 0;
    for (size_t n = 2; n <= 6; n++) {
        for (double r : {0.1, 0.3, 0.5, 0.9}) {
            worst = std::max(worst, std::abs(cop_normalized(n, 2, r, r, Scheme::cswap) /
                                                 cop_normalized(n, 2, r, r, Scheme::ico) - 3) / 3);
        }
    }
    return within(worst, 1e-9, "relative error");
}

Outcome demon_cooled_fraction() {
    double worst = 0;
    bool ok = true;
    for (size_t n : {2, 10, 100}) {
        for (double r : {0.1, 0.5}) {
            DemonConfig cfg;
            cfg.n = n;
            cfg.r = r;
            cfg.seed = 3 + n;
            const auto rep = run_demon(cfg);
            const double p_c = branch_stats(n, ThermalSpec::Qubit(r)).p_c;
            const double sigma = std::sqrt(p_c * (1 - p_c) / double(cfg.particles));
            const double z = std::abs(double(rep.cooled) / double(cfg.particles) - p_c) / sigma;
            ok = ok && z <= 4 && rep.cooled + rep.heated == cfg.particles;
            worst = std::max(worst, z);
        }
    }
    return {ok, "largest deviation " + g(worst) + " sigma"};
}

Outcome demon_transfer_fraction() {
    DemonConfig cfg;
    const auto rep = run_demon(cfg);
    const double cooled = double(rep.cooled) / double(cfg.particles);
    const double a100 = analytic_transfer_fraction(100, 2, 0.1);
    cfg.n = 2;
    const auto rep2 = run_demon(cfg);
    const double a2 = analytic_transfer_fraction(2, 2, 0.1);
    const bool ok = std::abs(cooled - 0.75) <= 0.02 && std::abs(rep.energy_before_total - 10000.0 / 11) <= 1e-6 &&
                    std::abs(rep.transferred_fraction - a100) <= 0.03 && std::abs(rep2.transferred_fraction - a2) <= 0.03;
    return {ok, "cooled " + g(cooled) + ", E0 " + format_number(rep.energy_before_total) + ", N=100 " +
                    g(rep.transferred_fraction) + " vs " + g(a100) + ", N=2 " + g(rep2.transferred_fraction) + " vs " +
                    g(a2)};
}

Outcome demon_multi_round_expectation() {
    double worst = 0;
    for (size_t n : {2, 5, 100}) {
        DemonConfig cfg;
        cfg.n = n;
        cfg.r = 0.2;
        const double one = expected_transfer_tree(cfg);
        cfg.rounds = 2;
        worst = std::max(worst, std::abs(expected_transfer_tree(cfg) - one));
        worst = std::max(worst, std::abs(one - analytic_transfer_fraction(n, 2, 0.2)));
    }
    return within(worst, 1e-10);
}

Outcome demon_seed_determinism() {
    DemonConfig cfg;
    cfg.particles = 2000;
    cfg.rounds = 3;
    cfg.seed = 99;
    const auto a = run_demon(cfg);
    cfg.threads = 4;
    const auto b = run_demon(cfg);
    const bool same = a.final_energy == b.final_energy && a.in_box_c == b.in_box_c &&
                      a.summary_json() == b.summary_json() && a.histogram_csv() == b.histogram_csv();
    return {same, same ? "bit-identical across runs and thread counts" : "reports differ"};
}

Outcome demon_heat_jump() {
    DemonConfig cfg;
    cfg.r = 0.33;
    cfg.rounds = 10;
    const auto rep = heat_jump_scan(cfg);
    bool n2_inverts = false;
    double hottest = 0;
    for (int i = 1; i <= 100; i++) {
        const auto b = inversion_bound(Scheme::ico, 2, 2, i / 100.0);
        n2_inverts = n2_inverts || b.inverts;
        hottest = std::max(hottest, b.hottest_heating_energy);
    }
    return {rep.inverted_particles > 0 && !n2_inverts, "N=100 inverted particles " +
                                                           std::to_string(rep.inverted_particles) +
                                                           ", N=2 hottest heating energy " + g(hottest)};
}

Outcome cli_round_trip() {
    bool ok = true;
    std::string failed;
    for (const auto &name : command_names()) {
        Config cfg;
        cfg.set("command", name);
        for (const auto &[k, v] : command_defaults(name)) {
            cfg.set(k, v);
        }
        if (name == "demon") {
            cfg.set("particles", "500");
        }
        if (name == "cycle") {
            cfg.set("max_cycles", "50");
            cfg.set("batch_fraction", "0");
        }
        const auto first = format_csv(cfg, run_command(name, cfg, 1));
        const Config back = Config::parse(first);
        const auto second = format_csv(back, run_command(name, back, 1));
        if (first != second || back.entries() != cfg.entries()) {
            ok = false;
            failed += " " + name;
        }
    }
    return {ok, ok ? "every command regenerates its CSV from the embedded config" : "mismatch in" + failed};
}

const std::vector<Check> &checks() {
    static const std::vector<Check> all = {
        {"qmat.partial_trace_of_kron", qmat_partial_trace_kron},
        {"qmat.kron_mixed_product", qmat_kron_mixed_product},
        {"qmat.pauli_basis_completeness", qmat_pauli_completeness},
        {"thermal.gibbs_unit_trace", thermal_gibbs_trace},
        {"thermal.effective_r_round_trip", thermal_effective_r_round_trip},
        {"thermal.degenerate_excited_population", thermal_degenerate_population},
        {"channels.kraus_completeness", channels_completeness},
        {"channels.thermalizing_input_independent", channels_input_independent},
        {"channels.amplitude_damping_obtainable", channels_obtainability},
        {"nswitch.closed_form_vs_bruteforce", nswitch_closed_form_vs_bruteforce},
        {"nswitch.sudoku_off_diagonal_blocks", nswitch_sudoku_blocks},
        {"nswitch.diagonal_blocks_thermal", nswitch_diagonal_blocks},
        {"nswitch.branch_normalization", nswitch_branch_normalization},
        {"nswitch.energy_balance", nswitch_energy_balance},
        {"nswitch.heating_state_independent_of_n", nswitch_heating_state_n_independent},
        {"nswitch.qudit_closed_forms", nswitch_qudit_closed_forms},
        {"nswitch.large_n_doubling", nswitch_doubling},
        {"nswitch.qudit_boost", nswitch_qudit_boost},
        {"measurement.basis_orthonormal", measurement_basis_gram},
        {"measurement.fine_outcomes", measurement_fine_outcomes},
        {"measurement.branch_states", measurement_branch_states},
        {"measurement.register_entropy_identity", measurement_entropy_identity},
        {"cswap.local_marginals_thermal", cswap_local_marginals},
        {"cswap.marginal_closed_forms", cswap_closed_forms},
        {"cswap.matches_switch_branches", cswap_matches_switch},
        {"cswap.energy_identity", cswap_energy_identity_check},
        {"cswap.sequential_discard_invariance", cswap_discard_invariance},
        {"cswap.tripling", cswap_tripling},
        {"trajectories.dilation_agreement", traj_dilation},
        {"trajectories.random_environments", traj_random_environments},
        {"trajectories.branches_valid", traj_branches_valid},
        {"fridge.cycle_asymptote_closed_forms", fridge_asymptote_closed_forms},
        {"fridge.cycle_asymptote_certified_scale", fridge_asymptote_certified_scale},
        {"fridge.closed_form_vs_fixed_point", fridge_closed_form_vs_fixed_point},
        {"fridge.high_k_floors", fridge_high_k_floors},
        {"fridge.energy_bookkeeping", fridge_energy_bookkeeping},
        {"fridge.cop_zero_point", fridge_cop_zero_point},
        {"fridge.cop_nonnegative", fridge_cop_nonnegative},
        {"fridge.cswap_cop_tripling", fridge_cswap_cop_tripling},
        {"demon.cooled_fraction", demon_cooled_fraction},
        {"demon.transfer_fraction", demon_transfer_fraction},
        {"demon.multi_round_expectation", demon_multi_round_expectation},
        {"demon.seed_determinism", demon_seed_determinism},
        {"demon.heat_jump", demon_heat_jump},
        {"cli.csv_round_trip", cli_round_trip},
    };
    return all;
}

VerifyCheck run_one(const Check &c) {
    VerifyCheck out{c.name, false, "", 0};
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto o = c.run();
        out.pass = o.pass;
        out.detail = o.detail;
    } catch (const std::exception &e) {
        out.detail = std::string("threw: ") + e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace

std::vector<VerifyCheck> run_verify(unsigned threads, const std::function<void(const VerifyCheck &)> &on_result) {
    const auto &all = checks();
    std::vector<VerifyCheck> results;
    if (threads <= 1) {
        for (const auto &c : all) {
            results.push_back(run_one(c));
            if (on_result) {
                on_result(results.back());
            }
        }
        return results;
    }
    results = parallel_map<VerifyCheck>(all.size(), threads, [&](size_t i) { return run_one(all[i]); });
    if (on_result) {
        for (const auto &r : results) {
            on_result(r);
        }
    }
    return results;
}

}  // namespace qfridge::cli
