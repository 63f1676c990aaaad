"""Boundary of the numerical range N(A) of a GGT contraction.

Two independent routes:

* the tangent-point sweep: for each λ the edges of the polygon of zeros of
  Φ_{n+1}(·; λ) touch ∂N(A) at ζ_j; collecting these over many λ traces the
  whole boundary;
* the support-function oracle: for each direction φ the top eigenvector v of
  Re(e^{-iφ} A) gives the boundary point <v, A v>.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import ggt, kernels, opuc, popuc
from .errors import ConvergenceError, InputError, SolverError

JACOBI_TOL = 1e-13
JACOBI_SWEEPS = 40


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """Ordered samples of a closed convex curve with unit tangents (CCW).

    ``provenance`` holds ``(λ, j)`` pairs for sweep points or support angles
    φ for oracle points."""

    samples: np.ndarray
    tangents: np.ndarray
    provenance: list = field(default_factory=list)
    source: str = "sweep"

    def __len__(self):
        return len(self.samples)

    def dense(self, per_segment=16):
        """Points on the closed cubic Hermite curve through the samples."""
        p0 = self.samples
        p1 = np.roll(p0, -1)
        t0 = self.tangents
        t1 = np.roll(t0, -1)
        L = np.abs(p1 - p0)[:, None]
        s = np.linspace(0.0, 1.0, per_segment, endpoint=False)[None, :]
        h00 = 2 * s**3 - 3 * s**2 + 1
        h10 = s**3 - 2 * s**2 + s
        h01 = -2 * s**3 + 3 * s**2
        h11 = s**3 - s**2
        pts = h00 * p0[:, None] + h10 * L * t0[:, None] + h01 * p1[:, None] + h11 * L * t1[:, None]
        return pts.ravel()

    def distance_to(self, points, per_segment=16):
        """Distance from each point to the (Hermite-interpolated) curve."""
        return _point_polyline_distance(np.asarray(points, dtype=complex), self.dense(per_segment))

    def normal_angles(self):
        """Angles of the outward normals (tangent rotated by -π/2)."""
        return np.angle(-1j * self.tangents)

    def support(self, phi):
        """Support function h(φ) = max_{p in body} Re(e^{-iφ} p).

        Each sample p with outward normal angle φ_k gives h(φ_k) and
        h'(φ_k) = Im(e^{-iφ_k} p); between normals h is interpolated by
        periodic cubic Hermite in φ.
        """
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        if len(self) == 1:
            return np.real(np.exp(-1j * phi) * self.samples[0])
        ang = np.mod(self.normal_angles(), 2 * np.pi)
        order = np.argsort(ang, kind="stable")
        ang = ang[order]
        rot = np.exp(-1j * ang) * self.samples[order]
        h, dh = rot.real, rot.imag
        keep = np.concatenate([[True], np.diff(ang) > 1e-14])
        ang, h, dh = ang[keep], h[keep], dh[keep]
        a0 = np.concatenate([ang, [ang[0] + 2 * np.pi]])
        h0 = np.concatenate([h, [h[0]]])
        d0 = np.concatenate([dh, [dh[0]]])
        x = np.mod(phi - a0[0], 2 * np.pi) + a0[0]
        i = np.clip(np.searchsorted(a0, x, side="right") - 1, 0, len(ang) - 1)
        width = a0[i + 1] - a0[i]
        s = (x - a0[i]) / width
        return (
            (2 * s**3 - 3 * s**2 + 1) * h0[i]
            + (s**3 - 2 * s**2 + s) * width * d0[i]
            + (-2 * s**3 + 3 * s**2) * h0[i + 1]
            + (s**3 - s**2) * width * d0[i + 1]
        )

    def hausdorff(self, other: "BoundaryCurve") -> float:
        """Hausdorff distance of the enclosed convex bodies, computed as
        sup_φ |h_self(φ) - h_other(φ)| over both normal-angle sets and
        their midpoints."""
        ang = np.sort(np.mod(np.concatenate([self.normal_angles(), other.normal_angles()]), 2 * np.pi))
        mids = 0.5 * (ang + np.roll(ang, -1) + np.where(np.arange(len(ang)) == len(ang) - 1, 2 * np.pi, 0))
        phi = np.concatenate([ang, mids])
        return float(np.max(np.abs(self.support(phi) - other.support(phi))))


def _point_polyline_distance(points, verts):
    a = verts
    b = np.roll(verts, -1)
    d = b - a
    dd = np.abs(d) ** 2
    dd = np.where(dd == 0, 1.0, dd)
    out = np.empty(len(points))
    for i in range(0, len(points), 256):
        p = points[i : i + 256, None]
        t = np.clip(np.real((p - a) * np.conj(d)) / dd, 0.0, 1.0)
        out[i : i + 256] = np.min(np.abs(p - (a + t * d)), axis=1)
    return out


def _word(word):
    if not isinstance(word, opuc.VerblunskyWord):
        raise InputError("expected a VerblunskyWord")
    w = word.without_terminal()
    if w.n == 0:
        raise InputError("the word must have at least one interior coefficient")
    return w


def tangent_points(word: opuc.VerblunskyWord, lam) -> np.ndarray:
    """ζ_j on the edges [w_j, w_{j+1}] of the polygon of zeros of Φ_{n+1}(·; λ)."""
    return popuc.popuc_zeros(_word(word), lam, check=False).tangent_points


def lambda_grid(num_lambda):
    return np.exp(2j * np.pi * np.arange(num_lambda) / num_lambda)


def outer_polygons(word: opuc.VerblunskyWord, num_lambda=16):
    """Zero polygons (vertex arrays, CCW) for equispaced λ."""
    frames = popuc.popuc_frames(_word(word), lambda_grid(num_lambda))
    return [f.zeros for f in frames]


def in_polygon(point, vertices, slack=1e-8) -> bool:
    """Membership in a convex polygon with CCW vertices."""
    v = np.asarray(vertices, dtype=complex)
    e = np.roll(v, -1) - v
    cross = np.imag(np.conj(e) * (point - v)) / np.maximum(np.abs(e), 1e-300)
    return bool(np.all(cross >= -slack))


def _check_convex(samples, tol=1e-9):
    e = np.roll(samples, -1) - samples
    keep = np.abs(e) > 1e-14
    e = e[keep]
    if len(e) < 3:
        return
    cross = np.imag(np.conj(e) * np.roll(e, -1)) / (np.abs(e) * np.abs(np.roll(e, -1)))
    if cross.min() < -tol:
        raise SolverError(f"boundary samples are not convex (turn {cross.min():.3e})")


def _frame_points(lams, frames):
    pts, tans, prov = [], [], []
    for lam, f in zip(lams, frames):
        z = f.zeros
        edge = np.roll(z, -1) - z
        pts.append(f.tangent_points)
        tans.append(edge / np.abs(edge))
        prov.extend((complex(lam), j) for j in range(len(z)))
    return np.concatenate(pts), np.concatenate(tans), prov


def _assemble(pts, tans, prov, check=True):
    center = pts.mean()
    if np.max(np.abs(pts - center)) < 1e-12:
        # N(A) is a single point (n = 1)
        return BoundaryCurve(pts[:1], tans[:1], prov[:1], "sweep")
    order = np.argsort(np.angle(pts - center), kind="stable")
    pts, tans = pts[order], tans[order]
    prov = [prov[i] for i in order]
    if check:
        _check_convex(pts)
    return BoundaryCurve(pts, tans, prov, "sweep")


def boundary_sweep(word: opuc.VerblunskyWord, num_lambda=256, refine_tol=None, max_lambda=8192) -> BoundaryCurve:
    """Tangent points over λ = exp(2πik/num_lambda), sorted about their centroid.

    With ``refine_tol`` set, the midpoint λ of every gap is also computed,
    and a gap keeps being halved while the new tangent points miss the
    support function interpolated from the current samples by more than
    ``refine_tol``.  A fixed λ grid leaves wide gaps where the tangent
    points move quickly, typically along nearly flat stretches of ∂N(A).
    """
    w = _word(word)
    if num_lambda < 8:
        raise InputError("num_lambda must be at least 8")
    theta = 2 * np.pi * np.arange(num_lambda) / num_lambda
    lams = list(np.exp(1j * theta))
    pts, tans, prov = _frame_points(lams, popuc.popuc_frames(w, lams))
    if refine_tol is None or w.n == 1:
        return _assemble(pts, tans, prov)
    gaps = [(t, 2 * np.pi / num_lambda) for t in theta]
    while gaps and len(lams) < max_lambda:
        curve = _assemble(pts, tans, prov, check=False)
        mids = [t + h / 2 for t, h in gaps]
        new_lams = list(np.exp(1j * np.array(mids)))
        frames = popuc.popuc_frames(w, new_lams)
        p2, t2, pr2 = _frame_points(new_lams, frames)
        normal = np.angle(-1j * t2)
        miss = np.abs(curve.support(normal) - np.real(np.exp(-1j * normal) * p2))
        miss = miss.reshape(len(new_lams), -1).max(axis=1)
        nxt = []
        for (t, h), bad in zip(gaps, miss > refine_tol):
            if bad and h / 2 > 1e-9:
                nxt.extend([(t, h / 2), (t + h / 2, h / 2)])
        pts = np.concatenate([pts, p2])
        tans = np.concatenate([tans, t2])
        prov = prov + pr2
        lams = lams + new_lams
        gaps = nxt
    return _assemble(pts, tans, prov)


def _top_eigvec(H):
    vals, vecs, _, ok = kernels.jacobi_eigh(H, JACOBI_TOL, JACOBI_SWEEPS)
    if not ok:
        raise ConvergenceError("Jacobi eigensolver did not converge")
    k = int(np.argmax(vals))
    return vals[k], vecs[:, k]


def support_function(A, phi):
    """h(φ) = largest eigenvalue of (e^{-iφ}A + e^{iφ}A^*)/2."""
    A = np.asarray(A, dtype=complex)
    out = []
    for p in np.atleast_1d(phi):
        H = (np.exp(-1j * p) * A + np.exp(1j * p) * A.conj().T) / 2
        out.append(_top_eigvec(H)[0])
    return np.array(out)


def _support_point(A, phi):
    H = (np.exp(-1j * phi) * A + np.exp(1j * phi) * A.conj().T) / 2
    _, v = _top_eigvec(H)
    return np.vdot(v, A @ v)


def support_oracle(A, angles, refine_tol=None, max_points=65536) -> BoundaryCurve:
    """Boundary points <v, A v> for the top eigenvectors of Re(e^{-iφ}A).

    With ``refine_tol`` set, the midpoint angle of each gap is evaluated and
    kept (recursively) whenever the cubic Hermite prediction of the support
    function there is off by more than ``refine_tol``.  Uniform angles
    under-resolve stretches where ∂N(A) is nearly flat or sharply bent.
    """
    if isinstance(A, opuc.VerblunskyWord):
        A = ggt.ggt_build(A.without_terminal()).entries
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError("expected a square matrix")
    angles = [float(p) for p in np.asarray(angles, dtype=float).ravel()]
    pts = [_support_point(A, p) for p in angles]
    if refine_tol is not None and len(angles) > 1:
        order = np.argsort(np.mod(angles, 2 * np.pi), kind="stable")
        angles = [float(np.mod(angles[i], 2 * np.pi)) for i in order]
        pts = [pts[i] for i in order]
        k = 0
        while k < len(angles) and len(angles) < max_points:
            nxt = (k + 1) % len(angles)
            a0 = angles[k]
            a1 = angles[nxt] + (2 * np.pi if nxt == 0 else 0.0)
            mid = 0.5 * (a0 + a1)
            if mid - a0 > 1e-9:
                p_mid = _support_point(A, mid)
                r0 = np.exp(-1j * a0) * pts[k]
                r1 = np.exp(-1j * a1) * pts[nxt]
                w = a1 - a0
                pred = 0.5 * (r0.real + r1.real) + 0.125 * w * (r0.imag - r1.imag)
                actual = np.real(np.exp(-1j * mid) * p_mid)
                if abs(actual - pred) > refine_tol:
                    angles.insert(k + 1, mid)
                    pts.insert(k + 1, p_mid)
                    continue
            k += 1
    angles = np.array(angles)
    tangents = 1j * np.exp(1j * angles)
    return BoundaryCurve(np.array(pts), tangents, list(angles), "oracle")


def contains(x, point, slack=1e-9, num_angles=128) -> bool:
    """Whether ``point`` lies within ``slack`` of N(A), tested against
    ``num_angles`` supporting half-planes."""
    if isinstance(x, opuc.VerblunskyWord):
        A = ggt.ggt_build(_word(x)).entries
    else:
        A = np.asarray(x, dtype=complex)
    phi = 2 * np.pi * np.arange(num_angles) / num_angles
    h = support_function(A, phi)
    proj = np.real(np.exp(-1j * phi) * complex(point))
    return bool(np.all(proj <= h + slack))


def kippenhahn_chords(word: opuc.VerblunskyWord, num_lambda=64) -> np.ndarray:
    """All chords between pairs of zeros of Φ_{n+1}(·; λ) for sampled λ.
    Returns an array of shape (num_lambda * (n+1)n/2, 2)."""
    w = _word(word)
    frames = popuc.popuc_frames(w, lambda_grid(num_lambda))
    segs = []
    for f in frames:
        for i, j in combinations(range(len(f.zeros)), 2):
            segs.append((f.zeros[i], f.zeros[j]))
    return np.array(segs, dtype=complex).reshape(-1, 2)
