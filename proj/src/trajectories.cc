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

#include "qfridge/trajectories.h"

#include <cmath>
#include <string>

#include "qfridge/measurement.h"

namespace qfridge {

namespace {

// Orthonormal completion of `vecs` (assumed orthonormal) to a basis of C^dim.
std::vector<std::vector<Complex>> complete_basis(std::vector<std::vector<Complex>> vecs, size_t dim) {
    for (size_t e = 0; e < dim && vecs.size() < dim; e++) {
        std::vector<Complex> v(dim, 0.0);
        v[e] = 1.0;
        // Two passes of classical Gram-Schmidt for stability.
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &b : vecs) {
                Complex ip = 0;
                for (size_t i = 0; i < dim; i++) {
                    ip += std::conj(b[i]) * v[i];
                }
                for (size_t i = 0; i < dim; i++) {
                    v[i] -= ip * b[i];
                }
            }
        }
        double norm = 0;
        for (const Complex &c : v) {
            norm += std::norm(c);
        }
        norm = std::sqrt(norm);
        if (norm < 1e-8) {
            continue;
        }
        for (Complex &c : v) {
            c /= norm;
        }
        vecs.push_back(std::move(v));
    }
    if (vecs.size() != dim) {
        throw std::runtime_error("complete_basis: could not span the space");
    }
    return vecs;
}

struct PathDilation {
    size_t env_dim;
    std::vector<Complex> env_state;
    // Unitary on target (x) env, row-major, index = target * env_dim + env.
    ComplexMatrix v;
};

PathDilation dilate(const KrausSet &k, const std::vector<Complex> &overlaps) {
    const size_t d = k.dim();
    const size_t nk = k.operators.size();
    double norm2 = 0;
    for (const Complex &o : overlaps) {
        norm2 += std::norm(o);
    }
    if (norm2 > 1.0 + 1e-12) {
        throw std::invalid_argument(
            "dilation_oracle: overlaps have squared norm " + std::to_string(norm2) +
            " > 1, no environment state realizes them");
    }
    const bool vacuum = norm2 < 1.0 - 1e-12;
    const size_t e = nk + (vacuum ? 1 : 0);

    PathDilation p{e, std::vector<Complex>(e, 0.0), ComplexMatrix(d * e, d * e)};
    for (size_t a = 0; a < nk; a++) {
        p.env_state[a] = std::conj(overlaps[a]);
    }
    if (vacuum) {
        p.env_state[nk] = std::sqrt(std::max(0.0, 1.0 - norm2));
    }

    const auto env_basis = complete_basis({p.env_state}, e);
    std::vector<std::vector<Complex>> inputs;
    std::vector<std::vector<Complex>> outputs;
    for (size_t i = 0; i < d; i++) {
        std::vector<Complex> in(d * e, 0.0);
        for (size_t x = 0; x < e; x++) {
            in[i * e + x] = env_basis[0][x];
        }
        inputs.push_back(std::move(in));
        std::vector<Complex> out(d * e, 0.0);
        for (size_t a = 0; a < nk; a++) {
            for (size_t row = 0; row < d; row++) {
                out[row * e + a] = k.operators[a](row, i);
            }
        }
        outputs.push_back(std::move(out));
    }
    for (size_t j = 1; j < e; j++) {
        for (size_t i = 0; i < d; i++) {
            std::vector<Complex> in(d * e, 0.0);
            for (size_t x = 0; x < e; x++) {
                in[i * e + x] = env_basis[j][x];
            }
            inputs.push_back(std::move(in));
        }
    }
    outputs = complete_basis(std::move(outputs), d * e);
    for (size_t c = 0; c < d * e; c++) {
        for (size_t r = 0; r < d * e; r++) {
            for (size_t s = 0; s < d * e; s++) {
                p.v(r, s) += outputs[c][r] * std::conj(inputs[c][s]);
            }
        }
    }
    return p;
}

}  // namespace

TrajectoryConfig TrajectoryConfig::make(size_t n, KrausSet kraus, std::vector<std::vector<Complex>> env_overlaps) {
    if (n < 2) {
        throw std::invalid_argument("TrajectoryConfig needs at least two paths");
    }
    if (env_overlaps.size() != n) {
        throw DimensionError(
            "TrajectoryConfig: " + std::to_string(env_overlaps.size()) + " overlap lists for " + std::to_string(n) +
            " paths");
    }
    kraus.validate();
    TrajectoryConfig cfg{n, std::move(kraus), std::move(env_overlaps), {}};
    for (const auto &o : cfg.env_overlaps) {
        cfg.m_list.push_back(transformation_matrix(cfg.kraus, o));
    }
    return cfg;
}

TrajectoryConfig TrajectoryConfig::uniform(size_t n, KrausSet kraus, std::vector<Complex> overlap) {
    return make(n, std::move(kraus), std::vector<std::vector<Complex>>(n, overlap));
}

TrajectoryConfig TrajectoryConfig::canonical(size_t n, double r) {
    KrausSet k = thermalizing_kraus(ThermalSpec::Qubit(r));
    std::vector<Complex> overlap(k.operators.size(), 0.0);
    overlap[0] = 1.0;
    return uniform(n, std::move(k), std::move(overlap));
}

nlohmann::json TrajectoryConfig::to_json() const {
    nlohmann::json overlaps = nlohmann::json::array();
    for (const auto &path : env_overlaps) {
        nlohmann::json row = nlohmann::json::array();
        for (const Complex &c : path) {
            row.push_back({c.real(), c.imag()});
        }
        overlaps.push_back(row);
    }
    return {{"n", n}, {"kraus", kraus_to_json(kraus)}, {"env_overlaps", overlaps}};
}

TrajectoryConfig TrajectoryConfig::from_json(const nlohmann::json &j) {
    std::vector<std::vector<Complex>> overlaps;
    for (const auto &row : j.at("env_overlaps")) {
        std::vector<Complex> path;
        for (const auto &c : row) {
            path.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        }
        overlaps.push_back(std::move(path));
    }
    return make(j.at("n").get<size_t>(), kraus_from_json(j.at("kraus")), std::move(overlaps));
}

SwitchOutput traj_output(const TrajectoryConfig &cfg, const DensityMatrix &rho) {
    if (rho.dim() != cfg.kraus.dim()) {
        throw DimensionError("traj_output: input dimension does not match the channel");
    }
    const Complex w(1.0 / static_cast<double>(cfg.n));
    const ComplexMatrix diag = apply_channel(cfg.kraus, rho.matrix()) * w;
    std::vector<std::vector<ComplexMatrix>> blocks(cfg.n, std::vector<ComplexMatrix>(cfg.n));
    for (size_t k = 0; k < cfg.n; k++) {
        for (size_t kp = 0; kp < cfg.n; kp++) {
            blocks[k][kp] =
                k == kp ? diag : cfg.m_list[k].m * rho.matrix() * cfg.m_list[kp].m.adjoint() * w;
        }
    }
    return switch_from_blocks(blocks);
}

SwitchOutput dilation_oracle(const TrajectoryConfig &cfg, const DensityMatrix &rho) {
    const size_t n = cfg.n;
    const size_t d = cfg.kraus.dim();
    if (rho.dim() != d) {
        throw DimensionError("dilation_oracle: input dimension does not match the channel");
    }
    std::vector<PathDilation> paths;
    size_t env_total = 1;
    for (const auto &o : cfg.env_overlaps) {
        paths.push_back(dilate(cfg.kraus, o));
        env_total *= paths.back().env_dim;
        if (n * d * env_total > kDilationMaxDim) {
            throw BudgetError(
                "dilation_oracle: joint dimension exceeds " + std::to_string(kDilationMaxDim) +
                "; reduce N or the Kraus count");
        }
    }
    const size_t dim = n * d * env_total;

    // Stride of env k inside the env index; env 0 is most significant.
    std::vector<size_t> stride(n);
    size_t s = 1;
    for (size_t k = n; k-- > 0;) {
        stride[k] = s;
        s *= paths[k].env_dim;
    }

    // W = sum_k |k><k| (x) V_k acting on (target, env_k).
    ComplexMatrix w(dim, dim);
    for (size_t k = 0; k < n; k++) {
        const PathDilation &p = paths[k];
        const size_t e = p.env_dim;
        for (size_t t = 0; t < d; t++) {
            for (size_t env = 0; env < env_total; env++) {
                const size_t ak = (env / stride[k]) % e;
                const size_t col = (k * d + t) * env_total + env;
                const size_t env_rest = env - ak * stride[k];
                for (size_t tp = 0; tp < d; tp++) {
                    for (size_t bk = 0; bk < e; bk++) {
                        const Complex v = p.v(tp * e + bk, t * e + ak);
                        if (v == Complex(0)) {
                            continue;
                        }
                        w((k * d + tp) * env_total + env_rest + bk * stride[k], col) += v;
                    }
                }
            }
        }
    }

    // |eps>^(x)N as a vector over the env index.
    std::vector<Complex> env_vec(env_total, 1.0);
    for (size_t env = 0; env < env_total; env++) {
        for (size_t k = 0; k < n; k++) {
            env_vec[env] *= paths[k].env_state[(env / stride[k]) % paths[k].env_dim];
        }
    }

    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<std::vector<Complex>> evolved(d, std::vector<Complex>(dim, 0.0));
    for (size_t i = 0; i < d; i++) {
        for (size_t row = 0; row < dim; row++) {
            Complex acc = 0;
            for (size_t k = 0; k < n; k++) {
                const size_t base = (k * d + i) * env_total;
                for (size_t env = 0; env < env_total; env++) {
                    acc += w(row, base + env) * env_vec[env];
                }
            }
            evolved[i][row] = acc * amp;
        }
    }

    const size_t ct = n * d;
    ComplexMatrix joint(ct, ct);
    for (size_t a = 0; a < ct; a++) {
        for (size_t b = 0; b < ct; b++) {
            Complex acc = 0;
            for (size_t i = 0; i < d; i++) {
                for (size_t j = 0; j < d; j++) {
                    const Complex rij = rho.matrix()(i, j);
                    if (rij == Complex(0)) {
                        continue;
                    }
                    Complex inner = 0;
                    for (size_t env = 0; env < env_total; env++) {
                        inner += evolved[i][a * env_total + env] * std::conj(evolved[j][b * env_total + env]);
                    }
                    acc += rij * inner;
                }
            }
            joint(a, b) = acc;
        }
    }
    return SwitchOutput{DensityMatrix(std::move(joint), SubsystemShape{{n, d}})};
}

BranchStats traj_branches(const TrajectoryConfig &cfg, const ThermalSpec &spec) {
    const DensityMatrix t = gibbs_state(spec);
    const auto outcomes = measure_control(traj_output(cfg, t), build_basis(cfg.n));
    const double p_H = outcomes[1].probability;
    return BranchStats{
        .n = cfg.n,
        .p_c = outcomes[0].probability,
        .p_h = p_H / static_cast<double>(cfg.n - 1),
        .p_H = p_H,
        .rho_c = outcomes[0].state.value(),
        .rho_h = outcomes[1].state.value(),
    };
}

}  // namespace qfridge
