# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_pykernels`` for the contract."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, fmax

cnp.import_array()

ctypedef double complex cplx


cdef inline double cabs2(cplx z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double cabs(cplx z) noexcept nogil:
    return sqrt(cabs2(z))


cdef inline cplx conj(cplx z) noexcept nogil:
    return z.real - 1j * z.imag


def horner(coeffs, z):
    cdef cplx[::1] c = np.ascontiguousarray(coeffs, dtype=complex)
    zarr = np.asarray(z, dtype=complex)
    flat = np.ascontiguousarray(zarr.ravel())
    cdef cplx[::1] zz = flat
    out = np.empty_like(flat)
    cdef cplx[::1] o = out
    cdef Py_ssize_t i, k, m = zz.shape[0], d = c.shape[0]
    cdef cplx acc, x
    with nogil:
        for i in range(m):
            x = zz[i]
            acc = 0
            for k in range(d - 1, -1, -1):
                acc = acc * x + c[k]
            o[i] = acc
    return out.reshape(zarr.shape)


def horner_deriv(coeffs, z):
    cdef cplx[::1] c = np.ascontiguousarray(coeffs, dtype=complex)
    zarr = np.asarray(z, dtype=complex)
    flat = np.ascontiguousarray(zarr.ravel())
    cdef cplx[::1] zz = flat
    out = np.empty_like(flat)
    dout = np.empty_like(flat)
    cdef cplx[::1] o = out
    cdef cplx[::1] do = dout
    cdef Py_ssize_t i, k, m = zz.shape[0], d = c.shape[0]
    cdef cplx p, dp, x
    with nogil:
        for i in range(m):
            x = zz[i]
            p = 0
            dp = 0
            for k in range(d - 1, -1, -1):
                dp = dp * x + p
                p = p * x + c[k]
            o[i] = p
            do[i] = dp
    return out.reshape(zarr.shape), dout.reshape(zarr.shape)


def aberth(coeffs, z0, int maxiter, double tol):
    cdef cplx[::1] c = np.ascontiguousarray(coeffs, dtype=complex)
    roots = np.array(z0, dtype=complex)
    cdef cplx[::1] z = roots
    cdef Py_ssize_t n = z.shape[0], d = c.shape[0], i, j, k
    cdef int it
    cdef cplx p, dp, s, ratio, denom, step, x
    cdef bint ok
    if n == 1:
        return np.array([-c[0] / c[1]]), 0, True
    for it in range(1, maxiter + 1):
        ok = True
        for i in range(n):
            x = z[i]
            p = 0
            dp = 0
            for k in range(d - 1, -1, -1):
                dp = dp * x + p
                p = p * x + c[k]
            if p == 0:
                continue
            s = 0
            for j in range(n):
                if j != i:
                    s = s + 1.0 / (x - z[j])
            if dp == 0:
                ratio = p
            else:
                ratio = p / dp
            denom = 1.0 - ratio * s
            if denom == 0:
                step = ratio
            else:
                step = ratio / denom
            z[i] = x - step
            if cabs(step) > tol * fmax(cabs(z[i]), 1.0):
                ok = False
        if ok:
            return roots, it, True
    return roots, maxiter, False


cdef inline void _rotation(double app, double aqq, cplx apq,
                           cplx* g_pp, cplx* g_pq, cplx* g_qp, cplx* g_qq) noexcept nogil:
    cdef double r = cabs(apq)
    cdef cplx e = conj(apq) / r
    cdef double tau = (aqq - app) / (2.0 * r)
    cdef double t, cc, s
    if tau >= 0:
        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
    cc = 1.0 / sqrt(1.0 + t * t)
    s = t * cc
    g_pp[0] = cc
    g_pq[0] = s
    g_qp[0] = -s * e
    g_qq[0] = cc * e


# Raw row-major pointers keep memoryview bookkeeping out of the inner loop.
cdef inline void _rot_cols(cplx* a, Py_ssize_t rows, Py_ssize_t ncols,
                           Py_ssize_t p, Py_ssize_t q,
                           cplx g_pp, cplx g_pq, cplx g_qp, cplx g_qq) noexcept nogil:
    cdef Py_ssize_t k
    cdef cplx x, y
    for k in range(rows):
        x = a[k * ncols + p]
        y = a[k * ncols + q]
        a[k * ncols + p] = x * g_pp + y * g_qp
        a[k * ncols + q] = x * g_pq + y * g_qq


def jacobi_eigh(h, double tol, int max_sweeps):
    arr = np.array(h, dtype=complex, order="C")
    cdef cplx[:, ::1] a = arr
    cdef Py_ssize_t n = a.shape[0], p, q, k
    vec = np.eye(n, dtype=complex)
    cdef cplx[:, ::1] v = vec
    cdef double scale = fmax(np.linalg.norm(arr), 1e-300)
    cdef double off
    cdef int sweep
    cdef cplx g_pp, g_pq, g_qp, g_qq, x, y
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += cabs2(a[p, q])
        if sqrt(off) <= tol * scale:
            return np.real(np.diag(arr)).copy(), vec, sweep, True
        if sweep == max_sweeps:
            break
        with nogil:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    if a[p, q] == 0:
                        continue
                    _rotation(a[p, p].real, a[q, q].real, a[p, q],
                              &g_pp, &g_pq, &g_qp, &g_qq)
                    _rot_cols(&a[0, 0], n, n, p, q, g_pp, g_pq, g_qp, g_qq)
                    for k in range(n):
                        x = a[p, k]
                        y = a[q, k]
                        a[p, k] = conj(g_pp) * x + conj(g_qp) * y
                        a[q, k] = conj(g_pq) * x + conj(g_qq) * y
                    a[p, q] = 0
                    a[q, p] = 0
                    a[p, p] = a[p, p].real
                    a[q, q] = a[q, q].real
                    _rot_cols(&v[0, 0], n, n, p, q, g_pp, g_pq, g_qp, g_qq)
    return np.real(np.diag(arr)).copy(), vec, max_sweeps, False


def jacobi_svd(m, double tol, int max_sweeps):
    arr = np.array(m, dtype=complex, order="C")
    cdef cplx[:, ::1] w = arr
    cdef Py_ssize_t rows = w.shape[0], n = w.shape[1], p, q, k
    vec = np.eye(n, dtype=complex)
    cdef cplx[:, ::1] v = vec
    cdef double a, b
    cdef cplx g, g_pp, g_pq, g_qp, g_qq
    cdef int sweep
    cdef bint rotated
    for sweep in range(1, max_sweeps + 1):
        rotated = False
        with nogil:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    a = 0.0
                    b = 0.0
                    g = 0
                    for k in range(rows):
                        a += cabs2(w[k, p])
                        b += cabs2(w[k, q])
                        g = g + conj(w[k, p]) * w[k, q]
                    if g == 0 or cabs(g) <= tol * sqrt(a * b):
                        continue
                    rotated = True
                    _rotation(a, b, g, &g_pp, &g_pq, &g_qp, &g_qq)
                    _rot_cols(&w[0, 0], rows, n, p, q, g_pp, g_pq, g_qp, g_qq)
                    _rot_cols(&v[0, 0], n, n, p, q, g_pp, g_pq, g_qp, g_qq)
        if not rotated:
            return arr, vec, sweep, True
    return arr, vec, max_sweeps, False
