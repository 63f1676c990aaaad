"""Critical points of polynomials with unimodular zeros, the Steiner
ellipse, and the Poncelet billiard map on the unit circle.

Critical points.  For Φ_n = Π (z - a_j) with elementary symmetric
functions s_k, the condition Φ_{n+1}'(·; λ) = (n+1) Φ_n is linear in
conj(λ): the residuals

    r_j = (n - j) s_{n-j} + (-1)^{n-1} conj(λ) (j + 1) conj(s_{j+1}),  j = 0..n-1

must all vanish.  For odd n = 2k+1 the middle equation forces
λ = -conj(s_{k+1}) / s_{k+1}.  For n = 2 the phase can be absorbed and the
condition reads |a_1 + a_2| = 2 |a_1 a_2|.

Billiards.  From w = e^{ia} the chord to e^{i(a+2t)} is the line
Re(e^{-i(a+t)} z) = cos t; it is tangent to a convex body with support
function h when h(a + t) = cos t.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import opuc, poly, popuc
from .errors import (
    DegenerateTriangleError,
    GeometryError,
    InputError,
    InternalConsistencyError,
)
from .numrange import BoundaryCurve

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class Ellipse:
    foci: tuple
    semimajor: float

    def __post_init__(self):
        f1, f2 = (complex(f) for f in self.foci)
        object.__setattr__(self, "foci", (f1, f2))
        if not self.semimajor > abs(f1 - f2) / 2:
            raise InputError("semimajor axis must exceed half the focal distance")

    @property
    def center(self) -> complex:
        return (self.foci[0] + self.foci[1]) / 2

    @property
    def focal_half(self) -> float:
        return abs(self.foci[1] - self.foci[0]) / 2

    @property
    def semiminor(self) -> float:
        return float(np.sqrt(self.semimajor**2 - self.focal_half**2))

    @property
    def axis_angle(self) -> float:
        d = self.foci[1] - self.foci[0]
        return float(np.angle(d)) if d != 0 else 0.0

    def support(self, phi):
        phi = np.asarray(phi, dtype=float)
        u = phi - self.axis_angle
        A, B = self.semimajor, self.semiminor
        return np.real(np.exp(-1j * phi) * self.center) + np.sqrt(
            A**2 * np.cos(u) ** 2 + B**2 * np.sin(u) ** 2
        )

    def points(self, num=256):
        t = TWO_PI * np.arange(num) / num
        rot = np.exp(1j * self.axis_angle)
        return self.center + rot * (self.semimajor * np.cos(t) + 1j * self.semiminor * np.sin(t))

    def to_curve(self, num=256) -> BoundaryCurve:
        t = TWO_PI * np.arange(num) / num
        rot = np.exp(1j * self.axis_angle)
        pts = self.points(num)
        tan = rot * (-self.semimajor * np.sin(t) + 1j * self.semiminor * np.cos(t))
        return BoundaryCurve(pts, tan / np.abs(tan), list(t), "ellipse")

    def max_modulus(self, num=1024, zooms=6) -> float:
        """Largest |z| on the ellipse: coarse scan, then repeated local zoom."""
        rot = np.exp(1j * self.axis_angle)

        def mod(t):
            return np.abs(self.center + rot * (self.semimajor * np.cos(t) + 1j * self.semiminor * np.sin(t)))

        t = TWO_PI * np.arange(num) / num
        m = mod(t)
        peaks = np.nonzero((m >= np.roll(m, 1)) & (m >= np.roll(m, -1)))[0]
        out = 0.0
        for best in t[peaks]:
            width = TWO_PI / num
            for _ in range(zooms):
                s = best + np.linspace(-width, width, 65)
                best = s[np.argmax(mod(s))]
                width /= 16
            out = max(out, float(mod(np.array([best]))[0]))
        return out

    def inside_disk(self, num=1024, margin=0.0) -> bool:
        return self.max_modulus(num) < 1 - margin


def steiner_foci(z1, z2, z3):
    """Foci of the ellipse tangent to the triangle at its edge midpoints."""
    z1, z2, z3 = complex(z1), complex(z2), complex(z3)
    scale = max(abs(z2 - z1), abs(z3 - z1), 1e-300)
    if abs(np.imag((z2 - z1) * np.conj(z3 - z1))) <= 1e-12 * scale**2:
        raise DegenerateTriangleError("the three points are collinear")
    m = (z1 + z2 + z3) / 3
    r = np.sqrt(m * m - (z1 * z2 + z1 * z3 + z2 * z3) / 3 + 0j)
    return complex(m + r), complex(m - r)


def _match(a, b):
    d = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def midpoint_word(ws, tol=1e-8) -> opuc.VerblunskyWord:
    """Word whose numerical range touches the polygon with vertices ``ws``
    at its edge midpoints: Φ_n = P'/(n+1) with P = Π (z - w_j)."""
    w = np.asarray(ws, dtype=complex).ravel()
    if len(w) < 2:
        raise InputError("need at least two points")
    if np.any(np.abs(np.abs(w) - 1) > 1e-11):
        raise InputError("points must be unimodular")
    w = w / np.abs(w)
    N = len(w)
    if np.min(np.abs(w[:, None] - w[None, :]) + 4 * np.eye(N)) <= 1e-9:
        raise InputError("points must be distinct")
    P = poly.fromroots(w)
    phi = poly.deriv(P) / N
    phi[-1] = 1.0
    word = opuc.verblunsky_from_phi(phi)
    lam = popuc.lambda_from_zeros(w)
    frame = popuc.popuc_zeros(word, lam, check=False)
    ws_sorted = frame.zeros
    mids = (ws_sorted + np.roll(ws_sorted, -1)) / 2
    err = max(_match(frame.zeros, w), _match(frame.tangent_points, mids))
    if err > tol:
        raise InternalConsistencyError(f"tangent points miss the edge midpoints by {err:.3e}")
    return word


def elementary_symmetric(a) -> np.ndarray:
    """s_0..s_n for the points ``a`` (s_0 = 1)."""
    c = poly.fromroots(a)  # z^n - s_1 z^{n-1} + s_2 z^{n-2} - ...
    n = len(c) - 1
    k = np.arange(n + 1)
    return c[n - k] * (-1.0) ** k


def critical_residuals(a, lam) -> np.ndarray:
    s = elementary_symmetric(a)
    n = len(s) - 1
    j = np.arange(n)
    return (n - j) * s[n - j] + (-1) ** (n - 1) * np.conj(lam) * (j + 1) * np.conj(s[j + 1])


@dataclass
class CriticalReport:
    feasible: bool
    lam: complex
    residuals: np.ndarray
    witness: np.ndarray | None = None
    method: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals))) if len(self.residuals) else 0.0


def _best_lambda(a, grid=4096):
    """Scan λ on a grid, then move to the exact minimizer of Σ|r_j|²."""
    s = elementary_symmetric(a)
    n = len(s) - 1
    j = np.arange(n)
    u = (n - j) * s[n - j]
    v = (-1) ** (n - 1) * (j + 1) * np.conj(s[j + 1])
    lams = np.exp(1j * TWO_PI * np.arange(grid) / grid)
    res = np.max(np.abs(u[None, :] + np.conj(lams)[:, None] * v[None, :]), axis=1)
    best = lams[int(np.argmin(res))]
    # Σ|u + x v|² with |x| = 1 is minimized at x = -conj(<v, u>) / |<v, u>|
    inner = np.vdot(u, v)  # Σ conj(u_j) v_j
    if abs(inner) > 1e-300:
        xbar = -np.conj(inner) / abs(inner)
        cand = np.conj(xbar)
        if np.max(np.abs(u + np.conj(cand) * v)) <= np.max(np.abs(u + np.conj(best) * v)):
            best = cand
    return complex(best)


def critical_feasibility(a_list, tol=1e-8, grid=4096) -> CriticalReport:
    """Whether the points are the critical points of a polynomial with all
    zeros on the circle; if so the witness is Φ_{n+1}(·; λ)."""
    a = np.asarray(a_list, dtype=complex).ravel()
    if len(a) == 0:
        raise InputError("need at least one point")
    if np.any(np.abs(a) >= 1):
        raise InputError("points must lie in the open unit disk")
    n = len(a)
    s = elementary_symmetric(a)
    method = "grid"
    if n % 2 == 1:
        k = (n - 1) // 2
        if abs(s[k + 1]) > 1e-12:
            lam = complex(-np.conj(s[k + 1]) / s[k + 1])
            lam /= abs(lam)
            method = "closed-form"
        else:
            lam = _best_lambda(a, grid)
    else:
        lam = _best_lambda(a, grid)
    r = critical_residuals(a, lam)
    feasible = bool(np.max(np.abs(r)) < tol)
    witness = None
    if feasible:
        phi = poly.fromroots(a)
        witness = opuc.szego_step(phi, poly.star(phi, n), lam)[0]
        err = np.max(np.abs(poly.deriv(witness) - (n + 1) * phi))
        if err > 1e-8:
            raise InternalConsistencyError(f"witness derivative off by {err:.3e}")
    return CriticalReport(feasible, lam, r, witness, method)


def n2_feasible(a1, a2, tol=1e-8) -> bool:
    """Closed-form test for two points: |a_1 + a_2| = 2 |a_1 a_2|."""
    a1, a2 = complex(a1), complex(a2)
    return abs(abs(a1 + a2) - 2 * abs(a1 * a2)) < tol


# ---------------------------------------------------------------- billiards


def _support_fn(body):
    if isinstance(body, (Ellipse, BoundaryCurve)):
        return body.support
    raise InputError("body must be an Ellipse or a BoundaryCurve")


def _tangent_half_angle(h, a, scan=512, iters=200):
    """Smallest t in (0, π) with h(a + t) = cos t."""
    t = np.linspace(0.0, np.pi, scan + 1)[1:]
    g = np.cos(t) - h(a + t)
    if np.cos(0.0) - h(np.array([a]))[0] <= 0:
        raise GeometryError("the body reaches the unit circle")
    neg = np.nonzero(g <= 0)[0]
    if len(neg) == 0:
        raise GeometryError("no tangent chord found")
    k = neg[0]
    lo = 0.0 if k == 0 else t[k - 1]
    hi = t[k]
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if np.cos(mid) - h(np.array([a + mid]))[0] > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    return 0.5 * (lo + hi)


@dataclass
class BilliardReport:
    points: np.ndarray
    argsum: float
    defect: float


def billiard_closure(body, w0, steps) -> BilliardReport:
    """Iterate the tangent-chord map ``steps`` times from ``w0``."""
    h = _support_fn(body)
    w0 = complex(w0)
    if abs(abs(w0) - 1) > 1e-12:
        raise InputError("w0 must be unimodular")
    a = float(np.angle(w0))
    pts = [w0]
    total = 0.0
    for _ in range(int(steps)):
        t = _tangent_half_angle(h, a)
        a += 2 * t
        total += 2 * t
        pts.append(np.exp(1j * a))
    return BilliardReport(np.array(pts), total, float(abs(pts[-1] - w0)))


def _max_semimajor(foci, iters=100):
    f1, f2 = foci
    e = abs(f2 - f1) / 2
    if max(abs(f1), abs(f2)) >= 1:
        raise GeometryError("foci must lie in the open unit disk")
    lo, hi = e, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if Ellipse((f1, f2), mid).inside_disk():
            lo = mid
        else:
            hi = mid
    return lo


def closure_eccentricity(foci, n_gon, w0=1.0, tol=1e-13, verify_tol=1e-6) -> Ellipse:
    """Ellipse with the given foci whose billiard map closes after
    ``n_gon`` steps, found by bisection on the semimajor axis."""
    f1, f2 = (complex(f) for f in foci)
    n_gon = int(n_gon)
    if n_gon < 3:
        raise InputError("n_gon must be at least 3")
    e = abs(f2 - f1) / 2
    amax = _max_semimajor((f1, f2))
    lo = e + 1e-12 * max(1.0, e) if e > 0 else 1e-9
    hi = amax * (1 - 1e-9)
    if not hi > lo:
        raise GeometryError("no admissible range of semimajor axes")

    def excess(A):
        return billiard_closure(Ellipse((f1, f2), A), w0, n_gon).argsum - TWO_PI

    g_lo, g_hi = excess(lo), excess(hi)
    if not (g_lo > 0 > g_hi):
        raise GeometryError("closure is not bracketed by the admissible axis range")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g = excess(mid)
        if g > 0:
            lo, g_lo = mid, g
        else:
            hi, g_hi = mid, g
        if g_lo < g_hi:
            raise GeometryError("argsum is not monotone in the semimajor axis")
        if hi - lo < tol:
            break
    ell = Ellipse((f1, f2), 0.5 * (lo + hi))
    base = float(np.angle(complex(w0)))
    for k in range(1, 5):
        start = np.exp(1j * (base + TWO_PI * k / 5 + 0.1))
        d = billiard_closure(ell, start, n_gon).defect
        if d > verify_tol:
            raise InternalConsistencyError(f"closure fails from another start point (defect {d:.3e})")
    return ell
