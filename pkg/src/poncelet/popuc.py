"""Paraorthogonal polynomials Φ_{n+1}(z; λ) = z Φ_n(z) - conj(λ) Φ_n^*(z):
their unimodular zeros, the associated weights, and the M-function.

Zeros are the solutions on the circle of z B_n(z) = conj(λ) with
B_n = Φ_n / Φ_n^*.  The phase θ -> arg(e^{iθ} B_n(e^{iθ})) increases
strictly by 2π(n+1) per turn, so each zero is bracketed on a grid and
polished by safeguarded Newton in θ, keeping iterates on the circle.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ggt, opuc, poly
from .errors import InputError, InternalConsistencyError, PoleError, SolverError

TWO_PI = 2 * np.pi


@dataclass(frozen=True, eq=False)
class PonceletFrame:
    """Zeros w_1..w_{n+1} of Φ_{n+1}(·; λ) in increasing argument on [0, 2π),
    with weights m_j of the spectral measure of φ_n and Christoffel numbers q_j."""

    lam: complex
    zeros: np.ndarray
    weights: np.ndarray
    christoffel: np.ndarray
    word: opuc.VerblunskyWord = field(repr=False)

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def tangent_points(self) -> np.ndarray:
        """ζ_j = (m_j w_{j+1} + m_{j+1} w_j)/(m_j + m_{j+1}), indices cyclic."""
        w, m = self.zeros, self.weights
        w1, m1 = np.roll(w, -1), np.roll(m, -1)
        return (m * w1 + m1 * w) / (m + m1)

    def measure(self) -> opuc.UnitCircleMeasure:
        m = self.weights / self.weights.sum()
        return opuc.UnitCircleMeasure(self.zeros, m)


class _PhaseMap:
    """Evaluates f(θ) = e^{iθ} B_n(e^{iθ}) and its phase derivative."""

    def __init__(self, word: opuc.VerblunskyWord):
        base = word.without_terminal()
        seq = opuc.szego_forward(base)
        self.n = base.n
        self.phi = seq.phi(self.n)
        self.star = seq.phistar(self.n)
        self.dphi = poly.deriv(self.phi)
        self.dstar = poly.deriv(self.star)

    def value(self, theta):
        z = np.exp(1j * np.asarray(theta, dtype=float))
        return z * poly.polyval(self.phi, z) / poly.polyval(self.star, z)

    def slope(self, theta):
        z = np.exp(1j * np.asarray(theta, dtype=float))
        p = poly.polyval(self.phi, z)
        s = poly.polyval(self.star, z)
        dp = poly.polyval(self.dphi, z)
        ds = poly.polyval(self.dstar, z)
        return np.real(1 + z * dp / p - z * ds / s)


def _phase_grid(pm: _PhaseMap, max_doublings=6, max_points=1 << 20):
    """Grid on [0, 2π] on which every phase increment lies in (0, π/4).

    Starts from 64(n+1) equispaced nodes.  Intervals whose measured
    increment or endpoint slope is out of range are bisected locally
    (zeros of Φ_n near the circle make the phase locally very steep);
    if the winding count is still wrong the whole grid is doubled.
    """
    n = pm.n
    M = 64 * (n + 1)
    theta = TWO_PI * np.arange(M + 1) / M
    for _ in range(max_doublings + 1):
        while len(theta) <= max_points:
            f = pm.value(theta)
            inc = np.angle(f[1:] / f[:-1])
            sl = pm.slope(theta)
            h = np.diff(theta)
            bad = (inc <= 0) | (inc > np.pi / 4) | (np.maximum(sl[1:], sl[:-1]) * h > np.pi / 4)
            if not bad.any():
                break
            mids = 0.5 * (theta[:-1] + theta[1:])[bad]
            theta = np.sort(np.concatenate([theta, mids]))
        else:
            break
        total = inc.sum()
        if not bad.any() and abs(total - TWO_PI * (n + 1)) < 1e-8:
            phase = np.angle(f[0]) + np.concatenate([[0.0], np.cumsum(inc)])
            return theta, f, phase
        theta = np.sort(np.concatenate([theta, 0.5 * (theta[:-1] + theta[1:])]))
    raise SolverError("phase tracking failed: winding number mismatch after grid refinement")


def _solve_zeros(word: opuc.VerblunskyWord, lams):
    """Zeros for every λ in ``lams``; returns an array of shape (len(lams), n+1)
    with each row sorted by argument in [0, 2π)."""
    pm = _PhaseMap(word)
    n = pm.n
    lams = np.asarray(lams, dtype=complex).ravel()
    theta, f, phase = _phase_grid(pm)
    g0 = phase[0]
    base = g0 + np.mod(np.angle(np.conj(lams)) - g0, TWO_PI)
    targets = base[:, None] + TWO_PI * np.arange(n + 1)[None, :]
    idx = np.searchsorted(phase, targets, side="right") - 1
    idx = np.clip(idx, 0, len(theta) - 2)
    lo = theta[idx]
    hi = theta[idx + 1]
    plo = phase[idx]
    phi_ = phase[idx + 1]
    flo = f[idx]
    t = lo + (targets - plo) / (phi_ - plo) * (hi - lo)
    for _ in range(100):
        val = pm.value(t)
        # phase relative to the bracket's left end stays within (-π, π)
        g = plo + np.angle(val / flo)
        r = g - targets
        lo = np.where(r < 0, t, lo)
        hi = np.where(r > 0, t, hi)
        step = r / pm.slope(t)
        newt = t - step
        outside = (newt < lo) | (newt > hi) | ~np.isfinite(newt)
        newt = np.where(outside, 0.5 * (lo + hi), newt)
        newt = np.where(r == 0, t, newt)
        done = np.abs(newt - t) <= 4e-16 * TWO_PI
        t = newt
        if np.all(done | (np.abs(r) <= 1e-15)):
            break
    z = np.exp(1j * t)
    ang = np.mod(np.angle(z), TWO_PI)
    order = np.argsort(ang, axis=1, kind="stable")
    return np.take_along_axis(z, order, axis=1)


def _weights(seq, n, zeros):
    tot = np.zeros(zeros.shape)
    for k in range(n + 1):
        tot += np.abs(poly.polyval(seq.orthonormal(k), zeros)) ** 2
    q = 1.0 / tot
    m = q * np.abs(poly.polyval(seq.orthonormal(n), zeros)) ** 2
    return q, m


def christoffel_weights(word: opuc.VerblunskyWord, zeros):
    """(q, m): q_j = 1 / Σ_{k=0}^{n} |φ_k(w_j)|², m_j = q_j |φ_n(w_j)|²."""
    base = word.without_terminal()
    seq = opuc.szego_forward(base)
    return _weights(seq, base.n, np.asarray(zeros, dtype=complex))


def eigenvector_weights(word: opuc.VerblunskyWord, lam, zeros):
    """m_j = |<φ_n, η_j>|² with η_j ∝ Φ_{n+1}(z)/(z - w_j), obtained by
    expanding Φ_{n+1}/(z - w_j) in the orthonormal basis φ_0..φ_n."""
    base = word.without_terminal()
    n = base.n
    seq = opuc.szego_forward(base)
    # columns: monomial coefficients of φ_0..φ_n (upper triangular)
    T = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        T[: k + 1, k] = seq.orthonormal(k)
    P = opuc.popuc(base, lam)
    out = []
    for w in zeros:
        # synthetic division of Φ_{n+1} by (z - w)
        q = np.zeros(n + 1, dtype=complex)
        acc = 0j
        for k in range(n + 1, 0, -1):
            acc = acc * w + P[k]
            q[k - 1] = acc
        c = np.linalg.solve(T, q) if n else q / T[0, 0]
        out.append(abs(c[n]) ** 2 / np.sum(np.abs(c) ** 2))
    return np.array(out)


def gorkin_weights(word: opuc.VerblunskyWord, zeros):
    """m_j = [1 + Σ_k (1 - |z_k|²)/|w_j - z_k|²]^{-1} over the n zeros z_k of Φ_n."""
    base = word.without_terminal()
    zeros = np.asarray(zeros, dtype=complex)
    if base.n == 0:
        return np.ones(len(zeros))
    zk = poly.roots(opuc.szego_forward(base).phi(base.n))
    s = np.sum((1 - np.abs(zk[None, :]) ** 2) / np.abs(zeros[:, None] - zk[None, :]) ** 2, axis=1)
    return 1.0 / (1.0 + s)


def _check_lambda(lam):
    lam = complex(lam)
    if not np.isfinite(lam) or abs(abs(lam) - 1) > 1e-12:
        raise InputError(f"lambda must be unimodular, got modulus {abs(lam):.17g}")
    return lam / abs(lam)


def _frame(word, lam, zeros, check, qm=None):
    q, m = christoffel_weights(word, zeros) if qm is None else qm
    if check:
        m_eig = eigenvector_weights(word, lam, zeros)
        err = np.max(np.abs(m - m_eig))
        if err > 1e-9:
            raise InternalConsistencyError(f"Christoffel and eigenvector weights differ by {err:.3e}")
    return PonceletFrame(lam, zeros, m, q, word.without_terminal().with_terminal(lam))


def popuc_zeros(word: opuc.VerblunskyWord, lam=None, check=True) -> PonceletFrame:
    """Frame of Φ_{n+1}(·; λ); ``lam`` defaults to the word's terminal."""
    if lam is None:
        lam = word.terminal
    if lam is None:
        raise InputError("a unimodular lambda is required")
    lam = _check_lambda(lam)
    zeros = _solve_zeros(word, [lam])[0]
    return _frame(word, lam, zeros, check)


def popuc_frames(word: opuc.VerblunskyWord, lams, check=False):
    """Frames for many λ at once (shared phase grid)."""
    lams = [_check_lambda(l) for l in np.asarray(lams, dtype=complex).ravel()]
    Z = _solve_zeros(word, lams)
    base = word.without_terminal()
    Q, M = _weights(opuc.szego_forward(base), base.n, Z)
    return [_frame(word, lam, Z[i], check, (Q[i], M[i])) for i, lam in enumerate(lams)]


def lambda_from_zeros(zeros) -> complex:
    """λ = (-1)^n Π conj(w_j) for n+1 zeros."""
    zeros = np.asarray(zeros, dtype=complex)
    n = len(zeros) - 1
    return complex((-1) ** n * np.prod(np.conj(zeros)))


def m_function(x, z):
    """Σ_j m_j / (z - w_j).  For a frame, also compares with
    Φ_n(z) / Φ_{n+1}(z; λ)."""
    z = complex(z)
    if isinstance(x, PonceletFrame):
        nodes, weights = x.zeros, x.weights
    elif isinstance(x, opuc.UnitCircleMeasure):
        nodes, weights = x.nodes, x.weights
    else:
        raise InputError("expected a PonceletFrame or UnitCircleMeasure")
    d = z - nodes
    if np.min(np.abs(d)) < 1e-14:
        raise PoleError("z coincides with a node")
    val = complex(np.sum(weights / d))
    if isinstance(x, PonceletFrame):
        base = x.word.without_terminal()
        phin = opuc.szego_forward(base).phi(base.n)
        rational = complex(poly.polyval(phin, z) / poly.polyval(opuc.popuc(base, x.lam), z))
        if abs(rational - val) > 1e-9 * (1 + abs(val)):
            raise InternalConsistencyError(
                f"partial fractions {val} and Φ_n/Φ_(n+1) = {rational} disagree"
            )
    return val


def resolvent_entry(word: opuc.VerblunskyWord, lam, z):
    """<e_n, (z - G)^{-1} e_n> for the GGT unitary of (word, λ)."""
    G = ggt.ggt_entries(np.concatenate([word.alphas, [lam]]))
    N = G.shape[0]
    e = np.zeros(N, dtype=complex)
    e[-1] = 1.0
    return complex(np.linalg.solve(z * np.eye(N) - G, e)[-1])


def nu_closed_form(word: opuc.VerblunskyWord, lam) -> opuc.VerblunskyWord:
    """(-λ conj(α_{n-1-j}))_j with terminal λ."""
    a = word.alphas
    return opuc.VerblunskyWord(tuple(-lam * np.conj(a[::-1])), lam)


def nu_verblunsky(frame: PonceletFrame, tol=1e-8) -> opuc.VerblunskyWord:
    """Verblunsky coefficients of Σ m_j δ_{w_j}; checked against the closed form."""
    computed = opuc.verblunsky_from_measure(frame.measure())
    expected = nu_closed_form(frame.word, frame.lam)
    err = np.max(np.abs(computed.all_coefficients() - expected.all_coefficients()))
    if err > tol:
        raise InternalConsistencyError(f"measure coefficients differ from closed form by {err:.3e}")
    return expected
