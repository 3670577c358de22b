# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi eigensolver (sequential row ordering).

Both functions destroy the working matrix `a` in place, accumulate the
eigenvector columns into `v` (which must arrive as the identity) and put
the unsorted eigenvalues into `w`. They return the number of sweeps used,
or -1 if the off-diagonal norm did not reach tol * ||a||_F within
max_sweeps. Sorting happens in the python wrapper.
"""

from libc.math cimport fabs, sqrt


cdef inline double _sign(double x) nogil:
    return 1.0 if x >= 0.0 else -1.0


def jacobi_eigh_real(double[:, ::1] a, double[:, ::1] v, double[::1] w,
                     double tol, int max_sweeps):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, i, sweep
    cdef double norm = 0.0, off, apq, app, aqq, tau, t, c, s
    cdef double aip, aiq

    for p in range(n):
        for q in range(n):
            norm += a[p, q] * a[p, q]
    norm = sqrt(norm)
    if norm == 0.0:
        for p in range(n):
            w[p] = 0.0
        return 0

    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        off = sqrt(2.0 * off)
        if off <= tol * norm:
            for p in range(n):
                w[p] = a[p, p]
            return sweep

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                t = _sign(tau) / (fabs(tau) + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - s * aiq
                    a[i, q] = s * aip + c * aiq
                for i in range(n):
                    aip = a[p, i]
                    aiq = a[q, i]
                    a[p, i] = c * aip - s * aiq
                    a[q, i] = s * aip + c * aiq
                for i in range(n):
                    aip = v[i, p]
                    aiq = v[i, q]
                    v[i, p] = c * aip - s * aiq
                    v[i, q] = s * aip + c * aiq
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1


def jacobi_eigh_complex(double complex[:, ::1] a, double complex[:, ::1] v,
                        double[::1] w, double tol, int max_sweeps):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, i, sweep
    cdef double norm = 0.0, off, r, app, aqq, tau, t, c, s
    cdef double complex apq, st, stc, aip, aiq

    for p in range(n):
        for q in range(n):
            apq = a[p, q]
            norm += apq.real * apq.real + apq.imag * apq.imag
    norm = sqrt(norm)
    if norm == 0.0:
        for p in range(n):
            w[p] = 0.0
        return 0

    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                off += apq.real * apq.real + apq.imag * apq.imag
        off = sqrt(2.0 * off)
        if off <= tol * norm:
            for p in range(n):
                w[p] = a[p, p].real
            return sweep

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if r == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = _sign(tau) / (fabs(tau) + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                st = (s / r) * apq  # sine dressed with the off-diagonal phase
                stc = st.conjugate()
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - stc * aiq
                    a[i, q] = st * aip + c * aiq
                for i in range(n):
                    aip = a[p, i]
                    aiq = a[q, i]
                    a[p, i] = c * aip - st * aiq
                    a[q, i] = stc * aip + c * aiq
                for i in range(n):
                    aip = v[i, p]
                    aiq = v[i, q]
                    v[i, p] = c * aip - stc * aiq
                    v[i, q] = st * aip + c * aiq
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1
