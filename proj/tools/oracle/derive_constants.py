# Copyright 2026 The qfridge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent numpy oracle for the constants frozen into tests/oracle_values.h.

Everything is rebuilt from first principles: explicit Kraus products over every causal order,
explicit SWAP permutations on tensor axes, explicit Stinespring-free trajectory blocks and a
root-found reservoir energy balance. Run with `python3 tools/oracle/derive_constants.py > tests/oracle_values.h`.
"""

import itertools
import math

import numpy as np
from scipy.optimize import brentq


def gibbs(d, r):
    w = np.array([1.0] + [r] * (d - 1))
    return np.diag(w / w.sum()).astype(complex)


def energy(rho):
    return float(np.real(np.trace(rho)) - np.real(rho[0, 0]))


def unitary_basis(d):
    if d == 2:
        return [np.eye(2), np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    w = np.exp(2j * np.pi / d)
    x = np.roll(np.eye(d), 1, axis=0)
    z = np.diag([w**k for k in range(d)])
    return [np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b) for a in range(d) for b in range(d)]


def kraus(d, r):
    a = np.sqrt(gibbs(d, r))
    return [a @ u / math.sqrt(d) for u in unitary_basis(d)]


def switch(orders, rho, d, r):
    """Control in the uniform superposition; explicit sum over every Kraus index tuple."""
    n = len(orders)
    ks = kraus(d, r)
    out = np.zeros((n * d, n * d), complex)
    for idx in itertools.product(range(len(ks)), repeat=n):
        w = np.zeros((n * d, d), complex)
        for c, order in enumerate(orders):
            prod = np.eye(d, dtype=complex)
            for ch in order:
                prod = ks[idx[ch]] @ prod
            w[c * d:(c + 1) * d, :] = prod / math.sqrt(n)
        out += w @ rho @ w.conj().T
    return out


def basis(n):
    vs = [np.ones(n) / math.sqrt(n)]
    for i in range(1, n):
        v = np.zeros(n)
        v[:i] = 1
        v[i] = -i
        vs.append(v / np.linalg.norm(v))
    return np.array(vs)


def cooling_projection(joint, n, d):
    phi = basis(n)[0]
    p = np.kron(phi.reshape(1, -1), np.eye(d))
    cool = p @ joint @ p.conj().T
    total = sum(joint[c * d:(c + 1) * d, c * d:(c + 1) * d] for c in range(n))
    return cool, total - cool


def branch(n, d, r, rho=None):
    """Brute force for n <= 4; larger n reuses the diagonal and off-diagonal blocks of the
    brute-forced n = 3 switch, which fix every block of the cyclic-order output."""
    t = gibbs(d, r)
    rho = t if rho is None else rho
    m = 3 if n > 4 else n
    orders = [[(k + j) % m for j in range(m)] for k in range(m)]
    joint = switch(orders, rho, d, r)
    if m != n:
        diag = joint[0:d, 0:d] * m
        off = joint[0:d, d:2 * d] * m
        joint = np.zeros((n * d, n * d), complex)
        for i in range(n):
            for j in range(n):
                joint[i * d:(i + 1) * d, j * d:(j + 1) * d] = (diag if i == j else off) / n
    cool, heat = cooling_projection(joint, n, d)
    p_c = float(np.real(np.trace(cool)))
    return p_c, cool / p_c, heat / (1 - p_c)


def weighted_heating(n, d, r):
    p_c, _, rho_h = branch(n, d, r)
    return (1 - p_c) * (energy(rho_h) - energy(gibbs(d, r)))


def cswap_marginals(n, r):
    """Control (x) target (x) n reservoirs; swap target with reservoir k on control branch k."""
    t = gibbs(2, r)
    q = n + 1
    rho = np.ones((n, n)) / n
    for _ in range(q):
        rho = np.kron(rho, t)
    dim = 2**q
    perms = []
    for k in range(n):
        axes = list(range(q))
        axes[0], axes[k + 1] = axes[k + 1], axes[0]
        p = np.zeros((dim, dim))
        for s in range(dim):
            bits = [(s >> (q - 1 - i)) & 1 for i in range(q)]
            swapped = [bits[axes[i]] for i in range(q)]
            p[int("".join(map(str, swapped)), 2), s] = 1
        perms.append(p)
    u = np.zeros((n * dim, n * dim))
    for k in range(n):
        u[k * dim:(k + 1) * dim, k * dim:(k + 1) * dim] = perms[k]
    out = u @ rho @ u.T
    phi = basis(n)[0]
    proj = np.kron(phi.reshape(1, -1), np.eye(dim))
    cool = proj @ out @ proj.T
    p_c = float(np.real(np.trace(cool)))
    cool /= p_c
    marg = []
    for qubit in range(q):
        m = cool.reshape([2] * (2 * q))
        keep = [qubit]
        for i in reversed(range(q)):
            if i not in keep:
                m = np.trace(m, axis1=i, axis2=i + m.ndim // 2)
        marg.append(m)
    return p_c, marg


def traj_branch(n, r, scale):
    """M = sqrt(scale) A on every path; off-diagonal block M T M^dag."""
    t = gibbs(2, r)
    m = math.sqrt(scale) * np.sqrt(t)
    blocks = np.zeros((2 * n, 2 * n), complex)
    for i in range(n):
        for j in range(n):
            blocks[2 * i:2 * i + 2, 2 * j:2 * j + 2] = (t if i == j else m @ t @ m.conj().T) / n
    cool, heat = cooling_projection(blocks, n, 2)
    p_c = float(np.real(np.trace(cool)))
    return p_c, cool / p_c, heat / (1 - p_c)


def register_entropy(n, p_c):
    p_h = (1 - p_c) / (n - 1)
    return -p_c * math.log(p_c) - (n - 1) * p_h * math.log(p_h) if p_h > 0 else 0.0


def excited(d, r):
    return (d - 1) * r / (1 + (d - 1) * r)


def fixed_point(heating_excited, r_start, k):
    x0 = excited(2, r_start)

    def balance(rp):
        return (x0 - excited(2, rp)) - k * (heating_excited(rp) - x0)

    if balance(0.0) < 0:
        return 0.0
    return brentq(balance, 0.0, r_start, xtol=1e-15, rtol=1e-15)


def emit(name, value):
    print(f"inline constexpr double {name} = {value:.17g};")


HEADER = """// Copyright 2026 The qfridge Authors
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

// Generated by tools/oracle/derive_constants.py. Do not edit by hand.

#ifndef QFRIDGE_TESTS_ORACLE_VALUES_H
#define QFRIDGE_TESTS_ORACLE_VALUES_H

namespace qfridge::oracle {
"""

FOOTER = """}  // namespace qfridge::oracle

#endif"""


def main():
    print(HEADER)
    emit("kSwitchN2R03Offdiag00", np.real(switch([[0, 1], [1, 0]], gibbs(2, 0.3), 2, 0.3)[0, 2]))
    p_c, rho_c, rho_h = branch(100, 2, 0.1)
    emit("kPcN100R01", p_c)
    emit("kPhN100R01", 1 - p_c)
    p_c, _, _ = branch(2, 2, 0.1)
    emit("kPerHeatingN2R01", (1 - p_c) / 1)
    emit("kWeightedN2R05", weighted_heating(2, 2, 0.5))
    emit("kWeightedN3D3R04", weighted_heating(3, 3, 0.4))
    emit("kPhN2D3R1em4", 1 - branch(2, 3, 1e-4)[0])
    rho = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
    p_c, rho_c, rho_h = branch(3, 2, 0.3, rho)
    emit("kCoherentInputPc", p_c)
    emit("kCoherentInputCoolingExcited", np.real(rho_c[1, 1]))
    emit("kCoherentInputCoolingCoherenceRe", np.real(rho_c[0, 1]))
    emit("kCoherentInputHeatingExcited", np.real(rho_h[1, 1]))
    emit("kRegisterEntropyN2R1", register_entropy(2, branch(2, 2, 1.0)[0]))
    p_c, marg = cswap_marginals(3, 0.5)
    emit("kCswapN3R05Pc", p_c)
    emit("kCswapN3R05TargetExcited", np.real(marg[0][1, 1]))
    emit("kCswapN3R05ReservoirExcited", np.real(marg[1][1, 1]))
    p_c, rho_c, rho_h = traj_branch(2, 0.1, 0.5)
    emit("kTrajN2R01Ph", 1 - p_c)
    emit("kTrajN2R01HeatingExcited", np.real(rho_h[1, 1]))
    p_c, _, rho_h = traj_branch(2, 0.5, 1.0)
    emit("kTrajUnitN2R05HeatingExcited", np.real(rho_h[1, 1]))

    def ico_h(rp):
        return np.real(branch(2, 2, max(rp, 1e-300))[2][1, 1]) if rp > 0 else 0.0

    def traj_h(scale):
        return lambda rp: np.real(traj_branch(2, rp, scale)[2][1, 1]) if rp > 0 else 0.5 if scale == 1 else 0.0

    emit("kIcoFixedPointK1R06", fixed_point(ico_h, 0.6, 1.0))
    emit("kIcoFixedPointK5R08", fixed_point(ico_h, 0.8, 5.0))
    emit("kTrajUnitFixedPointK5R08", fixed_point(traj_h(1.0), 0.8, 5.0))
    emit("kTrajHalfFixedPointK5R08", fixed_point(traj_h(0.5), 0.8, 5.0))
    emit("kTrajHalfFixedPointK100R06", fixed_point(traj_h(0.5), 0.6, 100.0))

    def cop(n, r, r_hot, p_c, extracted, mediums):
        p_h = 1 - p_c
        numerator = extracted - mediums * p_h * (excited(2, r_hot) - excited(2, r))
        return numerator / register_entropy(n, p_c)

    p_c, _, rho_h = branch(4, 2, 0.3)
    ico_extracted = (1 - p_c) * (np.real(rho_h[1, 1]) - excited(2, 0.3))
    emit("kIcoCopN4R03", cop(4, 0.3, 0.3, p_c, ico_extracted, 1))
    emit("kIcoCopN4R03Hot02", cop(4, 0.3, 0.2, p_c, ico_extracted, 1))
    pc_s, marg = cswap_marginals(4, 0.3)
    cooled = sum(pc_s * (np.real(m[1, 1]) - excited(2, 0.3)) for m in marg)
    emit("kCswapCopN4R03", cop(4, 0.3, 0.3, pc_s, -cooled, 5))
    p_c, _, rho_h = traj_branch(4, 0.3, 0.5)
    emit("kTrajCopN4R03", cop(4, 0.3, 0.3, p_c, (1 - p_c) * (np.real(rho_h[1, 1]) - excited(2, 0.3)), 1))

    for n, r, name in [(100, 0.1, "kTransferN100R01"), (2, 0.1, "kTransferN2R01"), (100, 0.01, "kTransferN100R001")]:
        emit(name, weighted_heating(n, 2, r) / excited(2, r))
    print()
    print(FOOTER)


if __name__ == "__main__":
    main()
