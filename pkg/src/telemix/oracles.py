"""Brute-force checks that share no formula with :mod:`telemix.metrics`.

``fef_sampling_oracle`` lower-bounds the fully entangled fraction by random
search over maximally entangled states; ``chsh_max_oracle`` lower-bounds the
maximal CHSH value by direct search over measurement directions.
"""
import math

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.stats import unitary_group

from .numerics import PAULIS

_S2 = 1.0 / math.sqrt(2.0)
# Bell states as columns: Phi+, Phi-, Psi+, Psi-.
BELL_BASIS = np.array([
    [_S2, _S2, 0, 0],
    [0, 0, _S2, _S2],
    [0, 0, _S2, -_S2],
    [_S2, -_S2, 0, 0],
], dtype=complex)

# Draws are made in fixed-size batches; the result depends only on (samples, seed).
_FEF_CHUNK = 4096


def _haar_unitaries(n, rng):
    return np.reshape(unitary_group.rvs(2, size=n, random_state=rng), (n, 2, 2))


def fef_sampling_oracle(rho, samples, seed):
    """Best overlap of ``rho`` with random maximally entangled states.

    Each of the ``samples`` draws picks Haar-random local unitaries
    ``U_A, U_B`` and scores the four states ``(U_A x U_B)|Bell_k>``, each of
    which is itself Haar-distributed over maximally entangled states
    (``|Bell_k> = (s_k x I)|Phi+>`` with ``s_k`` a Pauli matrix).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rho = np.asarray(rho, dtype=complex)
    rng = np.random.default_rng(seed)
    best = -np.inf
    done = 0
    while done < samples:
        n = min(_FEF_CHUNK, samples - done)
        ua = _haar_unitaries(n, rng)
        ub = _haar_unitaries(n, rng)
        local = np.einsum("nij,nkl->nikjl", ua, ub).reshape(n, 4, 4)
        w = local @ BELL_BASIS
        vals = np.einsum("nik,ij,njk->nk", w.conj(), rho, w).real
        best = max(best, float(vals.max()))
        done += n
    return best


def _unit(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def _pauli_correlations(rho):
    # E[n, m] = <sigma_n x sigma_m>, built directly from operator traces.
    rho = np.asarray(rho, dtype=complex)
    return np.array([[np.trace(rho @ np.kron(sn, sm)).real for sm in PAULIS] for sn in PAULIS])


def _chsh(e, a, a2, b, b2):
    return abs(a @ e @ (b + b2) + a2 @ e @ (b - b2))


def _orthonormal_plane(b):
    helper = np.array([1.0, 0.0, 0.0]) if abs(b[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = np.cross(b, helper)
    u /= np.linalg.norm(u)
    return u, np.cross(b, u)


def chsh_max_oracle(rho, grid=24, refine_steps=200, n_starts=3):
    """Largest ``|<B>|`` found for the CHSH operator of ``rho``.

    Search space: four unit vectors ``a, a', b, b'`` as (theta, phi) pairs.
    Stage 1 scans ``b`` on a ``grid x grid/2`` sphere grid with ``b'``
    swept over the great circle orthogonal to ``b`` and ``a, a'`` aligned
    with ``E(b + b')`` and ``E(b - b')``. Stage 2 refines the best starts by
    cyclic coordinate-wise bounded line search over all eight angles.
    """
    if grid < 8:
        raise ValueError("grid must be >= 8")
    e = _pauli_correlations(rho)
    if not np.any(np.abs(e) > 1e-15):
        return 0.0

    thetas = (np.arange(grid // 2) + 0.5) * math.pi / (grid // 2)
    phis = np.arange(grid) * 2.0 * math.pi / grid
    psis = np.arange(grid // 2) * math.pi / (grid // 2)
    seeds = []
    for th in thetas:
        for ph in phis:
            b = _unit(th, ph)
            u, w = _orthonormal_plane(b)
            b2 = np.cos(psis)[:, None] * u + np.sin(psis)[:, None] * w
            plus = (b + b2) @ e.T
            minus = (b - b2) @ e.T
            vals = np.linalg.norm(plus, axis=1) + np.linalg.norm(minus, axis=1)
            k = int(np.argmax(vals))
            seeds.append((vals[k], b, b2[k], plus[k], minus[k]))
    seeds.sort(key=lambda s: -s[0])

    best = 0.0
    for _, b, b2, plus, minus in seeds[:n_starts]:
        x = np.concatenate([_angles(plus), _angles(minus), _angles(b), _angles(b2)])
        best = max(best, _refine(e, x, refine_steps, math.pi / grid))
    return best


def _angles(v):
    n = np.linalg.norm(v)
    if n < 1e-300:
        return np.array([0.0, 0.0])
    v = v / n
    return np.array([math.acos(max(-1.0, min(1.0, v[2]))), math.atan2(v[1], v[0])])


def _value(e, x):
    vs = _unit(x[0::2], x[1::2])
    return _chsh(e, vs[0], vs[1], vs[2], vs[3])


def _refine(e, x, steps, width):
    x = x.copy()
    best = _value(e, x)
    for step in range(steps):
        i = step % len(x)
        if i == 0 and step:
            width *= 0.7

        def neg(t):
            y = x.copy()
            y[i] = t
            return -_value(e, y)

        res = minimize_scalar(neg, bounds=(x[i] - width, x[i] + width), method="bounded",
                              options={"xatol": 1e-12})
        if -res.fun > best:
            best = -res.fun
            x[i] = res.x
    return float(best)
