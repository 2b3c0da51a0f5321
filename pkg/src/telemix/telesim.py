"""Standard teleportation through a noisy two-qubit channel, by state evolution.

Qubit 0 holds the input, qubits 1 and 2 the channel (sender, receiver).
The sender measures qubits 0, 1 in the Bell basis; outcome ``k`` triggers
the fixed correction ``CORRECTIONS[k]`` on qubit 2. The corrections are the
ones that make a singlet channel teleport perfectly.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from .numerics import I2, SX, SZ, dagger

_S2 = 1.0 / math.sqrt(2.0)
OUTCOMES = ("psi-", "psi+", "phi-", "phi+")
# Rows are the Bell vectors over |00>, |01>, |10>, |11> in OUTCOMES order.
BELL_VECTORS = np.array([
    [0, _S2, -_S2, 0],
    [0, _S2, _S2, 0],
    [_S2, 0, 0, -_S2],
    [_S2, 0, 0, _S2],
], dtype=complex)
CORRECTIONS = np.array([I2, SZ, SX, SZ @ SX])

STABILIZER_STATES = np.array([
    [1, 0],
    [0, 1],
    [_S2, _S2],
    [_S2, -_S2],
    [_S2, 1j * _S2],
    [_S2, -1j * _S2],
], dtype=complex)

MC_CHUNK = 10_000


@dataclass(frozen=True)
class TeleportOutcome:
    probabilities: np.ndarray   # (4,) in OUTCOMES order
    output_states: np.ndarray   # (4, 2, 2) corrected, normalized receiver states
    fidelity: float


def _as_qubit(psi, tol=1e-12):
    psi = np.asarray(psi, dtype=complex).reshape(2)
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"input qubit is not normalized (|psi|^2 = {norm!r})")
    return psi


def teleport(channel, psi):
    """Run the protocol once on the pure input ``psi`` and return every branch."""
    psi = _as_qubit(psi)
    rho = np.asarray(channel, dtype=complex)
    full = np.kron(np.outer(psi, psi.conj()), rho)
    probs = np.empty(4)
    outs = np.zeros((4, 2, 2), dtype=complex)
    fidelity = 0.0
    for k, bell in enumerate(BELL_VECTORS):
        proj = np.kron(np.outer(bell, bell.conj()), I2)
        post = proj @ full @ proj
        # trace out qubits 0 and 1
        bob = np.einsum("iaib->ab", post.reshape(4, 2, 4, 2))
        u = CORRECTIONS[k]
        bob = u @ bob @ dagger(u)
        pk = float(np.trace(bob).real)
        probs[k] = pk
        fidelity += float(np.vdot(psi, bob @ psi).real)
        if pk > 1e-15:
            outs[k] = bob / pk
    return TeleportOutcome(probs, outs, fidelity)


def batch_fidelity(channel, psis):
    """Outcome-averaged fidelities for many pure inputs at once.

    Uses the factorization ``<B_k|_{01} (psi x rho) |B_k>_{01}`` of the
    post-measurement receiver state rather than building 8x8 matrices.
    """
    psis = np.asarray(psis, dtype=complex)
    r = np.asarray(channel, dtype=complex).reshape(2, 2, 2, 2)
    bells = BELL_VECTORS.reshape(4, 2, 2)
    w = np.einsum("kab,na->nkb", bells.conj(), psis)
    bob = np.einsum("nkb,bcBC,nkB->nkcC", w, r, w.conj())
    bob = np.einsum("kij,nkjl,kml->nkim", CORRECTIONS, bob, CORRECTIONS.conj())
    return np.einsum("ni,nkij,nj->n", psis.conj(), bob, psis).real


def average_fidelity_2design(channel):
    """Mean fidelity over the six stabilizer states (exactly the Haar average)."""
    return float(np.mean([teleport(channel, s).fidelity for s in STABILIZER_STATES]))


def haar_qubits(n, rng):
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_average_fidelity(channel, n, seed, workers=1):
    """Monte-Carlo mean fidelity over ``n`` Haar-random inputs.

    Samples are split into chunks of ``MC_CHUNK`` with seeds spawned from
    ``seed``, so the result does not depend on ``workers``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    sizes = [MC_CHUNK] * (n // MC_CHUNK)
    if n % MC_CHUNK:
        sizes.append(n % MC_CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(job):
        size, ss = job
        fids = batch_fidelity(channel, haar_qubits(size, np.random.default_rng(ss)))
        return size, float(fids.sum())

    jobs = list(zip(sizes, children))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    return sum(total for _, total in parts) / sum(size for size, _ in parts)
