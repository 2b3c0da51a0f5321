"""Two-qubit density matrices: validation, the four state families, and the
three-qubit GHZ/W sources of the convex-mixture family.

Basis order is |00>, |01>, |10>, |11> with the first factor the sender's
channel qubit. Three-qubit states use |000> ... |111>.
"""
from dataclasses import dataclass
import json
import math
from typing import Union

import numpy as np

from . import numerics
from .errors import BadShape, NotHermitian, NotPSD, ParamOutOfRange, TraceNotOne

DENSITY_TOL = 1e-10


def _readonly(m):
    m = np.array(m, dtype=complex)
    m.setflags(write=False)
    return m


def _check_physical(mat, tol):
    resid = numerics.hermitian_residual(mat)
    if resid > tol:
        raise NotHermitian("density matrix must be Hermitian", resid)
    tr = np.trace(mat)
    if abs(tr - 1.0) > tol:
        raise TraceNotOne(f"trace is {tr.real:.12g}", abs(tr - 1.0))
    lo = numerics.eigvalsh(mat, tol)[0]
    if lo < -tol:
        raise NotPSD("density matrix has a negative eigenvalue", float(lo))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated 4x4 density matrix. Build it with :func:`validate_density`."""

    mat: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    def to_json(self):
        return matrix_to_json(self.mat)


@dataclass(frozen=True, eq=False)
class ThreeQubitState:
    mat: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)


def validate_density(raw, tol=DENSITY_TOL):
    """Check Hermiticity, unit trace and positivity; return a DensityMatrix.

    Raises
    ------
    BadShape, NotHermitian, TraceNotOne, NotPSD
    """
    mat = np.asarray(raw, dtype=complex)
    if mat.shape != (4, 4):
        raise BadShape(f"two-qubit density matrix must be 4x4, got {mat.shape}")
    _check_physical(mat, tol)
    return DensityMatrix(_readonly(mat))


def _three_qubit(raw, tol=DENSITY_TOL):
    mat = np.asarray(raw, dtype=complex)
    if mat.shape != (8, 8):
        raise BadShape(f"three-qubit state must be 8x8, got {mat.shape}")
    _check_physical(mat, tol)
    return ThreeQubitState(_readonly(mat))


# -- serialization ---------------------------------------------------------

def matrix_to_json(mat):
    """``{"dim": n, "entries": [[re, im], ...]}`` in row-major order."""
    mat = np.asarray(mat, dtype=complex)
    return {
        "dim": int(mat.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in mat.ravel()],
    }


def matrix_from_json(obj):
    """Inverse of :func:`matrix_to_json`; accepts a dict or a JSON string."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        dim = int(obj["dim"])
        entries = obj["entries"]
        flat = [complex(float(re), float(im)) for re, im in entries]
    except (KeyError, TypeError, ValueError) as exc:
        raise BadShape(f"malformed matrix JSON: {exc}") from exc
    if len(flat) != dim * dim:
        raise BadShape(f"expected {dim * dim} entries for dim {dim}, got {len(flat)}")
    return np.array(flat, dtype=complex).reshape(dim, dim)


# -- families --------------------------------------------------------------

def _require(name, value, lo, hi, lo_open=False):
    ok = (value > lo if lo_open else value >= lo) and value <= hi
    if not (ok and math.isfinite(value)):
        interval = f"{'(' if lo_open else '['}{lo}, {hi}]"
        raise ParamOutOfRange(name, value, interval)


@dataclass(frozen=True)
class Werner:
    """Werner state labelled by its singlet fraction."""

    fw: float

    tag = "werner"

    def __post_init__(self):
        _require("fw", self.fw, 0.0, 1.0)


@dataclass(frozen=True)
class Mems:
    """Munro-James-White-Kwiat maximally entangled mixed state of concurrence ``c``."""

    c: float

    tag = "mems"

    def __post_init__(self):
        _require("c", self.c, 0.0, 1.0)


@dataclass(frozen=True)
class WernerDerivative:
    fw: float
    a: float

    tag = "wd"

    def __post_init__(self):
        _require("fw", self.fw, 0.5, 1.0, lo_open=True)
        _require("a", self.a, 0.5, 1.0)


@dataclass(frozen=True)
class NmemsNew:
    """Convex mixture ``p * Tr_3 GHZ + (1 - p) * Tr_3 W``."""

    p: float

    tag = "new"

    def __post_init__(self):
        _require("p", self.p, 0.0, 1.0)


FamilySpec = Union[Werner, Mems, WernerDerivative, NmemsNew]


def mems_h(c):
    """Diagonal weight h(C) of the MEMS matrix; the branch point C = 2/3 goes to C/2."""
    return c / 2.0 if c >= 2.0 / 3.0 else 1.0 / 3.0


def _werner_matrix(fw):
    d = (1.0 - fw) / 3.0
    mid = (1.0 + 2.0 * fw) / 6.0
    off = (1.0 - 4.0 * fw) / 6.0
    return np.array([
        [d, 0, 0, 0],
        [0, mid, off, 0],
        [0, off, mid, 0],
        [0, 0, 0, d],
    ], dtype=complex)


def _mems_matrix(c):
    h = mems_h(c)
    return np.array([
        [h, 0, 0, c / 2.0],
        [0, 1.0 - 2.0 * h, 0, 0],
        [0, 0, 0, 0],
        [c / 2.0, 0, 0, h],
    ], dtype=complex)


def _wd_matrix(fw, a):
    psi = np.array([math.sqrt(a), 0.0, 0.0, math.sqrt(1.0 - a)], dtype=complex)
    return (1.0 - fw) / 3.0 * np.eye(4) + (4.0 * fw - 1.0) / 3.0 * np.outer(psi, psi.conj())


def _new_matrix(p):
    x = (1.0 - p) / 3.0
    return np.array([
        [(p + 2.0) / 6.0, 0, 0, 0],
        [0, x, x, 0],
        [0, x, x, 0],
        [0, 0, 0, p / 2.0],
    ], dtype=complex)


_BUILDERS = {
    Werner: lambda s: _werner_matrix(s.fw),
    Mems: lambda s: _mems_matrix(s.c),
    WernerDerivative: lambda s: _wd_matrix(s.fw, s.a),
    NmemsNew: lambda s: _new_matrix(s.p),
}


def make_state(spec):
    """Density matrix of a family member, entrywise from its printed closed form."""
    try:
        build = _BUILDERS[type(spec)]
    except KeyError:
        raise TypeError(f"not a family spec: {spec!r}") from None
    return validate_density(build(spec))


def family_from_tag(tag, **params):
    """Build a FamilySpec from a CLI-style tag and keyword parameters."""
    tag = tag.lower()
    if tag == "werner":
        return Werner(params["fw"])
    if tag == "mems":
        return Mems(params["c"])
    if tag == "wd":
        return WernerDerivative(params["fw"], params["a"])
    if tag == "new":
        return NmemsNew(params["p"])
    raise ValueError(f"unknown family {tag!r}")


# -- three-qubit sources ---------------------------------------------------

def _projector(amplitudes):
    psi = np.asarray(amplitudes, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def ghz3():
    psi = np.zeros(8)
    psi[0b000] = psi[0b111] = 1.0
    return _three_qubit(_projector(psi))


def w3():
    psi = np.zeros(8)
    psi[0b001] = psi[0b010] = psi[0b100] = 1.0
    return _three_qubit(_projector(psi))


def partial_trace_third(state):
    """Trace out qubit 3: ``(rho_12)[ij, kl] = sum_m s[ijm, klm]``."""
    s = np.asarray(state, dtype=complex)
    if s.shape != (8, 8):
        raise BadShape(f"three-qubit state must be 8x8, got {s.shape}")
    rho = np.einsum("imjm->ij", s.reshape(4, 2, 4, 2))
    return validate_density(rho)


def mix(p, a, b):
    """Convex combination ``p * a + (1 - p) * b`` of two- or three-qubit states."""
    _require("p", p, 0.0, 1.0)
    m = p * np.asarray(a, dtype=complex) + (1.0 - p) * np.asarray(b, dtype=complex)
    return _three_qubit(m) if m.shape == (8, 8) else validate_density(m)


def product_state(*singles):
    """Tensor product of single-qubit density matrices (helper for tests and demos)."""
    out = np.ones((1, 1), dtype=complex)
    for s in singles:
        out = np.kron(out, np.asarray(s, dtype=complex))
    return out
