# cython: language_level=3
"""Compiled cyclic Jacobi kernel for small complex Hermitian matrices.

Same contract as ``telemix._jacobi_py.jacobi_sweeps``.
"""
from libc.math cimport sqrt, fabs, hypot


cdef inline double _abs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


def jacobi_sweeps(double complex[:, ::1] a, double complex[:, ::1] v,
                  double threshold, int max_sweeps):
    """Diagonalize ``a`` in place, accumulating rotations into ``v``.

    Returns the number of sweeps used, or -1 if ``max_sweeps`` ran out.
    """
    cdef int used
    with nogil:
        used = _sweeps(a, v, threshold, max_sweeps)
    return used


cdef int _sweeps(double complex[:, ::1] a, double complex[:, ::1] v,
                 double threshold, int max_sweeps) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double off, ag, zeta, t, c, s
    cdef double complex g, e, ec, akp, akq
    cdef double thr2 = threshold * threshold

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off = off + _abs2(a[p, q])
        if off <= thr2:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = sqrt(_abs2(g))
                if ag < 1e-300:
                    continue
                e = g / ag
                ec = e.conjugate()
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * ag)
                t = 1.0 / (fabs(zeta) + hypot(1.0, zeta))
                if zeta < 0.0:
                    t = -t
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * ec * akq
                    a[k, q] = s * e * akp + c * akq
                for k in range(n):
                    akp = a[p, k]
                    akq = a[q, k]
                    a[p, k] = c * akp - s * e * akq
                    a[q, k] = s * ec * akp + c * akq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    akp = v[k, p]
                    akq = v[k, q]
                    v[k, p] = c * akp - s * ec * akq
                    v[k, q] = s * e * akp + c * akq
    return -1
