"""Dense complex linear algebra for the fixed small sizes used here.

Matrices are plain ``numpy`` complex128 arrays of dimension 2, 3, 4 or 8.
The one routine worth owning is the Hermitian eigensolver: a cyclic Jacobi
iteration with a compiled kernel (``telemix._jacobi``) and a pure-Python
twin (``telemix._jacobi_py``). The compiled kernel is chosen at import when
it is importable; every public routine takes ``backend=`` to force either.
"""
from typing import NamedTuple

import numpy as np

from . import _jacobi_py
from .errors import BadShape, NoConvergence, NotHermitian, NotPSD

try:
    from . import _jacobi as _jacobi_ext
except ImportError:  # extension not built
    _jacobi_ext = None

ALLOWED_DIMS = (2, 3, 4, 8)
MAX_SWEEPS = 100
OFFDIAG_REL_THRESHOLD = 1e-13
HERMITIAN_TOL = 1e-10
PSD_CLAMP_TOL = 1e-10
NOISE_FLOOR_FACTOR = 16.0

KERNELS = {"python": _jacobi_py.jacobi_sweeps}
if _jacobi_ext is not None:
    KERNELS["compiled"] = _jacobi_ext.jacobi_sweeps
DEFAULT_BACKEND = "compiled" if "compiled" in KERNELS else "python"

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)
for _m in (I2, SX, SY, SZ):
    _m.setflags(write=False)


class Spectrum(NamedTuple):
    """Ascending eigenvalues with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m):
    """Return ``m`` as a C-contiguous complex128 square array of allowed size."""
    arr = np.ascontiguousarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in ALLOWED_DIMS:
        raise BadShape(f"expected square matrix of dim in {ALLOWED_DIMS}, got shape {arr.shape}")
    return arr


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def hermitian_residual(m):
    """max |m_ij - conj(m_ji)|."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - dagger(m))))


def _kernel(backend):
    name = DEFAULT_BACKEND if backend is None else backend
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(KERNELS)}") from None


def herm_eigen(h, tol=HERMITIAN_TOL, *, backend=None, max_sweeps=MAX_SWEEPS):
    """Eigendecomposition of a small Hermitian matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    h : array_like
        Square matrix of dimension 2, 3, 4 or 8.
    tol : float
        Allowed Hermiticity residual ``max |h_ij - conj(h_ji)|``. The input is
        symmetrized before iterating.
    backend : {"compiled", "python"}, optional
        Kernel to use; defaults to the compiled one when available.
    max_sweeps : int
        Iteration cap. Convergence means the off-diagonal Frobenius norm
        falls to ``1e-13 * ||h||_F``.

    Returns
    -------
    Spectrum
        Eigenvalues ascending, eigenvectors as columns.
    """
    a = as_matrix(h)
    resid = hermitian_residual(a)
    if resid > tol:
        raise NotHermitian("matrix is not Hermitian within tolerance", resid)
    a = np.ascontiguousarray(0.5 * (a + dagger(a)))
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = OFFDIAG_REL_THRESHOLD * float(np.linalg.norm(a))
    sweeps = _kernel(backend)(a, v, threshold, int(max_sweeps))
    if sweeps < 0:
        raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], np.ascontiguousarray(v[:, order]))


def eigvalsh(h, tol=HERMITIAN_TOL, *, backend=None):
    return herm_eigen(h, tol, backend=backend).eigenvalues


def noise_floor(w):
    """Magnitude below which a computed eigenvalue is indistinguishable from 0."""
    w = np.asarray(w)
    return NOISE_FLOOR_FACTOR * w.size * np.finfo(float).eps * float(np.max(np.abs(w), initial=0.0))


def snap_eigenvalues(w):
    """Clamp negatives to 0 and zero out values inside the round-off floor.

    The square root turns an eigenvalue error of 1e-17 into 3e-9, so exactly
    rank-deficient inputs need their null eigenvalues to come out exactly 0.
    """
    w = np.clip(w, 0.0, None)
    w[w <= noise_floor(w)] = 0.0
    return w


def psd_sqrt(h, tol=PSD_CLAMP_TOL, *, backend=None):
    """Hermitian PSD square root.

    Eigenvalues in ``[-tol, 0)`` and positive ones inside the round-off floor
    (see :func:`noise_floor`) are set to 0 before taking roots.
    """
    w, v = herm_eigen(h, tol, backend=backend)
    if w[0] < -tol:
        raise NotPSD("matrix has a negative eigenvalue", float(w[0]))
    root = np.sqrt(snap_eigenvalues(w))
    r = (v * root) @ dagger(v)
    return 0.5 * (r + dagger(r))
