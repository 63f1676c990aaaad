"""Pure-Python/numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` function for function and are used when the
compiled extension is unavailable or ``PONCELET_BACKEND=python`` is set.
"""
import math

import numpy as np


def horner(coeffs, z):
    """Evaluate the ascending-order polynomial ``coeffs`` at every point of ``z``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for c in coeffs[::-1]:
        out = out * z + c
    return out


def horner_deriv(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=complex)
    z = np.asarray(z, dtype=complex)
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in coeffs[::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth(coeffs, z0, maxiter, tol):
    """Aberth-Ehrlich simultaneous iteration.

    Returns ``(roots, iterations, converged)``.  ``coeffs`` is ascending and
    must have a nonzero leading coefficient.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    z = np.array(z0, dtype=complex)
    d = len(z)
    if d == 1:
        return np.array([-coeffs[0] / coeffs[1]]), 0, True
    eye = np.eye(d, dtype=bool)
    for it in range(1, maxiter + 1):
        p, dp = horner_deriv(coeffs, z)
        diff = z[:, None] - z[None, :]
        diff[eye] = 1.0
        inv = 1.0 / diff
        inv[eye] = 0.0
        s = inv.sum(axis=1)
        done = p == 0
        ratio = np.where(done, 0.0, p / np.where(dp == 0, 1.0, dp))
        denom = 1.0 - ratio * s
        step = np.where(done, 0.0, ratio / np.where(denom == 0, 1.0, denom))
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(np.abs(z), 1.0)):
            return z, it, True
    return z, maxiter, False


def _rotation(app, aqq, apq):
    """Unitary 2x2 ``G`` (as four entries) with ``G^H M G`` diagonal for
    the Hermitian ``M = [[app, apq], [conj(apq), aqq]]``."""
    r = abs(apq)
    e = apq.conjugate() / r
    tau = (aqq - app) / (2.0 * r)
    if tau >= 0:
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    return c, s, -s * e, c * e


def jacobi_eigh(h, tol, max_sweeps):
    """Cyclic Jacobi for a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps, converged)`` with the
    eigenvalues unsorted and eigenvectors as columns.
    """
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(a), 1e-300)
    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            return np.real(np.diag(a)).copy(), v, sweep, True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0:
                    continue
                g_pp, g_pq, g_qp, g_qq = _rotation(a[p, p].real, a[q, q].real, apq)
                cp = a[:, p].copy()
                cq = a[:, q]
                a[:, p] = cp * g_pp + cq * g_qp
                a[:, q] = cp * g_pq + cq * g_qq
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = np.conj(g_pp) * rp + np.conj(g_qp) * rq
                a[q, :] = np.conj(g_pq) * rp + np.conj(g_qq) * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = vp * g_pp + vq * g_qp
                v[:, q] = vp * g_pq + vq * g_qq
    return np.real(np.diag(a)).copy(), v, max_sweeps, False


def jacobi_svd(m, tol, max_sweeps):
    """One-sided (Hestenes) Jacobi SVD of a square complex matrix.

    Returns ``(w, v, sweeps, converged)`` with ``m @ v == w``, ``v`` unitary
    and the columns of ``w`` mutually orthogonal; singular values are the
    column norms of ``w``.
    """
    w = np.array(m, dtype=complex)
    n = w.shape[1]
    v = np.eye(n, dtype=complex)
    for sweep in range(1, max_sweeps + 1):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                a = np.vdot(w[:, p], w[:, p]).real
                b = np.vdot(w[:, q], w[:, q]).real
                g = np.vdot(w[:, p], w[:, q])
                if g == 0 or abs(g) <= tol * math.sqrt(a * b):
                    continue
                rotated = True
                g_pp, g_pq, g_qp, g_qq = _rotation(a, b, g)
                wp = w[:, p].copy()
                wq = w[:, q]
                w[:, p] = wp * g_pp + wq * g_qp
                w[:, q] = wp * g_pq + wq * g_qq
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = vp * g_pp + vq * g_qp
                v[:, q] = vp * g_pq + vq * g_qq
        if not rotated:
            return w, v, sweep, True
    return w, v, max_sweeps, False
