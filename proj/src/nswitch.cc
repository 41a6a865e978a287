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

#include "qfridge/nswitch.h"

#include <cmath>
#include <string>

#include "qfridge/channels.h"

namespace qfridge {

OrderSet OrderSet::cyclic(size_t n) {
    if (n < 1) {
        throw std::invalid_argument("OrderSet::cyclic needs n >= 1");
    }
    OrderSet s{n, {}};
    for (size_t k = 0; k < n; k++) {
        std::vector<size_t> order(n);
        for (size_t j = 0; j < n; j++) {
            order[j] = (k + j) % n;
        }
        s.orders.push_back(std::move(order));
    }
    return s;
}

void OrderSet::validate() const {
    if (n == 0 || orders.empty()) {
        throw std::invalid_argument("OrderSet must hold at least one order over at least one channel");
    }
    for (size_t k = 0; k < orders.size(); k++) {
        const auto &order = orders[k];
        if (order.size() != n) {
            throw std::invalid_argument("OrderSet: order " + std::to_string(k) + " has the wrong length");
        }
        std::vector<bool> seen(n, false);
        for (size_t c : order) {
            if (c >= n || seen[c]) {
                throw std::invalid_argument("OrderSet: order " + std::to_string(k) + " is not a permutation");
            }
            seen[c] = true;
        }
    }
}

nlohmann::json OrderSet::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &order : orders) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t c : order) {
            row.push_back(c + 1);
        }
        out.push_back(row);
    }
    return out;
}

OrderSet OrderSet::from_json(const nlohmann::json &j) {
    OrderSet s;
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("OrderSet JSON must be a nonempty list of permutations");
    }
    s.n = j[0].size();
    for (const auto &row : j) {
        std::vector<size_t> order;
        for (const auto &v : row) {
            auto label = v.get<long long>();
            if (label < 1) {
                throw std::invalid_argument("OrderSet JSON labels start at 1");
            }
            order.push_back(static_cast<size_t>(label - 1));
        }
        s.orders.push_back(std::move(order));
    }
    s.validate();
    return s;
}

ComplexMatrix SwitchOutput::block(size_t i, size_t j) const {
    const size_t d = target_dim();
    ComplexMatrix b(d, d);
    const auto &m = joint.matrix();
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            b(r, c) = m(i * d + r, j * d + c);
        }
    }
    return b;
}

ComplexMatrix SwitchOutput::target_marginal() const {
    const size_t keep[] = {1};
    return partial_trace(joint.matrix(), joint.shape(), keep);
}

SwitchOutput switch_from_blocks(const std::vector<std::vector<ComplexMatrix>> &blocks) {
    const size_t m = blocks.size();
    const size_t d = blocks.at(0).at(0).rows();
    ComplexMatrix joint(m * d, m * d);
    for (size_t i = 0; i < m; i++) {
        if (blocks[i].size() != m) {
            throw DimensionError("switch_from_blocks: ragged block layout");
        }
        for (size_t j = 0; j < m; j++) {
            const auto &b = blocks[i][j];
            if (b.rows() != d || b.cols() != d) {
                throw DimensionError("switch_from_blocks: blocks differ in shape");
            }
            for (size_t r = 0; r < d; r++) {
                for (size_t c = 0; c < d; c++) {
                    joint(i * d + r, j * d + c) = b(r, c);
                }
            }
        }
    }
    return SwitchOutput{DensityMatrix(std::move(joint), SubsystemShape{{m, d}})};
}

SwitchOutput switch_closed_form(size_t n, const DensityMatrix &rho, const DensityMatrix &t) {
    if (n < 1) {
        throw std::invalid_argument("switch_closed_form needs n >= 1");
    }
    if (rho.dim() != t.dim()) {
        throw DimensionError(
            "switch_closed_form: input has dimension " + std::to_string(rho.dim()) + ", thermal state " +
            std::to_string(t.dim()));
    }
    const double w = 1.0 / static_cast<double>(n);
    const ComplexMatrix diag = t.matrix() * Complex(w);
    const ComplexMatrix off = t.matrix() * rho.matrix() * t.matrix() * Complex(w);
    std::vector<std::vector<ComplexMatrix>> blocks(n, std::vector<ComplexMatrix>(n));
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            blocks[i][j] = i == j ? diag : off;
        }
    }
    return switch_from_blocks(blocks);
}

SwitchOutput switch_bruteforce(const OrderSet &orders, const DensityMatrix &rho, const ThermalSpec &spec) {
    orders.validate();
    const size_t d = spec.dim();
    if (rho.dim() != d) {
        throw DimensionError("switch_bruteforce: input dimension does not match the channel");
    }
    const KrausSet kraus = thermalizing_kraus(spec);
    const size_t nk = kraus.operators.size();
    const size_t n = orders.n;
    const size_t m = orders.orders.size();
    const double tuples = std::pow(static_cast<double>(nk), static_cast<double>(n));
    if (tuples > kBruteforceBudget) {
        throw BudgetError(
            "switch_bruteforce: (d^2)^N = " + std::to_string(tuples) + " Kraus tuples exceeds the budget of " +
            std::to_string(kBruteforceBudget));
    }

    std::vector<std::vector<ComplexMatrix>> acc(m, std::vector<ComplexMatrix>(m, ComplexMatrix(d, d)));
    std::vector<size_t> idx(n, 0);
    std::vector<ComplexMatrix> prod(m), prod_rho(m), prod_adj(m);
    const auto total = static_cast<size_t>(tuples);
    for (size_t t = 0; t < total; t++) {
        for (size_t k = 0; k < m; k++) {
            // Channels act in listed order, so the first one is rightmost.
            ComplexMatrix p = kraus.operators[idx[orders.orders[k][0]]];
            for (size_t s = 1; s < n; s++) {
                p = kraus.operators[idx[orders.orders[k][s]]] * p;
            }
            prod_rho[k] = p * rho.matrix();
            prod_adj[k] = p.adjoint();
        }
        for (size_t i = 0; i < m; i++) {
            for (size_t j = 0; j < m; j++) {
                acc[i][j] += prod_rho[i] * prod_adj[j];
            }
        }
        for (size_t s = 0; s < n; s++) {
            if (++idx[s] < nk) {
                break;
            }
            idx[s] = 0;
        }
    }
    const Complex w(1.0 / static_cast<double>(m));
    for (auto &row : acc) {
        for (auto &b : row) {
            b *= w;
        }
    }
    return switch_from_blocks(acc);
}

BranchStats switch_branches(size_t n, const DensityMatrix &t, const DensityMatrix &rho) {
    if (n < 2) {
        throw std::invalid_argument("switch_branches needs n >= 2");
    }
    if (rho.dim() != t.dim()) {
        throw DimensionError("switch_branches: input and thermal state differ in dimension");
    }
    const double nn = static_cast<double>(n);
    const ComplexMatrix trt = t.matrix() * rho.matrix() * t.matrix();
    const ComplexMatrix cool = (t.matrix() + trt * Complex(nn - 1)) * Complex(1.0 / nn);
    const ComplexMatrix heat = (t.matrix() - trt) * Complex((nn - 1) / nn);
    const double p_c = cool.trace().real();
    const double p_H = heat.trace().real();
    return BranchStats{
        .n = n,
        .p_c = p_c,
        .p_h = p_H / (nn - 1),
        .p_H = p_H,
        .rho_c = DensityMatrix::normalized(cool),
        .rho_h = DensityMatrix::normalized(heat),
    };
}

BranchStats branch_stats(size_t n, const ThermalSpec &spec) {
    DensityMatrix t = gibbs_state(spec);
    return switch_branches(n, t, t);
}

double qudit_heating_probability(size_t n, size_t dim, double r) {
    const double nn = static_cast<double>(n);
    const double m = static_cast<double>(dim - 1);
    const double z = 1.0 + m * r;
    return (nn - 1) / nn * (1.0 - (1.0 + m * r * r * r) / (z * z * z));
}

double qudit_weighted_energy_closed_form(size_t n, size_t dim, double r) {
    const double nn = static_cast<double>(n);
    const double m = static_cast<double>(dim - 1);
    const double z = 1.0 + m * r;
    return (1.0 - r * r) * r / (z * z * z * z) * (nn - 1) / nn * m;
}

BranchStats qudit_branch_stats(size_t n, size_t dim, double r) {
    BranchStats s = branch_stats(n, ThermalSpec::Degenerate(dim, r));
    s.p_H = qudit_heating_probability(n, dim, r);
    s.p_h = s.p_H / static_cast<double>(n - 1);
    s.p_c = 1.0 - s.p_H;
    return s;
}

WeightedEnergy weighted_energy(size_t n, size_t dim, double r) {
    const ThermalSpec spec = ThermalSpec::Degenerate(dim, r);
    const Hamiltonian h = Hamiltonian::from_spec(spec);
    const BranchStats s = branch_stats(n, spec);
    const double e_t = mean_energy(gibbs_state(spec), h);
    return {
        s.p_H * (mean_energy(s.rho_h, h) - e_t),
        s.p_c * (mean_energy(s.rho_c, h) - e_t),
    };
}

nlohmann::json switch_output_json(const SwitchOutput &out) {
    nlohmann::json j;
    j["shape"] = out.joint.shape().dims;
    j["matrix"] = matrix_to_json(out.joint.matrix());
    return j;
}

}  // namespace qfridge
