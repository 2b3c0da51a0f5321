"""Pure-Python cyclic Jacobi kernel (fallback for the compiled ``_jacobi``)."""
import math

import numpy as np


def jacobi_sweeps(a, v, threshold, max_sweeps):
    """Diagonalize the Hermitian ``a`` in place, accumulating rotations into ``v``.

    Each rotation zeroes ``a[p, q]`` with a unitary acting on coordinates
    ``p, q``: first a phase that makes the pivot real, then a real Givens
    rotation with the smaller of the two admissible angles.

    Returns the number of sweeps used, or -1 if ``max_sweeps`` ran out.
    """
    n = a.shape[0]
    offmask = ~np.eye(n, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(float(np.sum(np.abs(a[offmask]) ** 2)))
        if off <= threshold:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = abs(g)
                if ag < 1e-300:
                    continue
                e = g / ag
                ec = e.conjugate()
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * ag)
                t = 1.0 / (abs(zeta) + math.hypot(1.0, zeta))
                if zeta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * ec * colq
                a[:, q] = s * e * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * e * rowq
                a[q, :] = s * ec * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * ec * vq
                v[:, q] = s * e * vp + c * vq
    return -1
