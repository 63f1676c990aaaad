"""Inverse problems: recover Verblunsky coefficients from zeros on the circle.

* Two paraorthogonal zero sets (for parameters λ ≠ μ) that strictly
  interlace determine α_0..α_{n-1}, λ and μ.
* Zeros w of Φ_{n+1}(·; λ) and y of the second-kind Ψ_{n+1} (all signs of
  the word flipped, λ included) with Π y = -Π w determine α_0..α_{n-1} and λ.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import opuc, poly, popuc
from .errors import (
    DegenerateParametersError,
    InputError,
    InternalConsistencyError,
    NotRealizableError,
    NotSchurStableError,
    ProductConditionError,
)

TWO_PI = 2 * np.pi
UNIMODULAR_TOL = 1e-11
BORDERLINE = 1e-9


def _sorted_unimodular(zs, what):
    z = np.asarray(zs, dtype=complex).ravel()
    if len(z) == 0 or not np.all(np.isfinite(z)):
        raise InputError(f"{what}: need a nonempty list of finite points")
    if np.any(np.abs(np.abs(z) - 1) > UNIMODULAR_TOL):
        raise InputError(f"{what}: points must lie on the unit circle")
    z = z / np.abs(z)
    ang = np.mod(np.angle(z), TWO_PI)
    order = np.argsort(ang, kind="stable")
    z = z[order]
    if len(z) > 1:
        d = np.abs(z[:, None] - z[None, :]) + 4 * np.eye(len(z))
        if d.min() <= BORDERLINE:
            raise InputError(f"{what}: points must be pairwise distinct")
    return z


@dataclass(frozen=True, eq=False)
class CircularConfiguration:
    """Two lists of n+1 unimodular points, each in increasing argument."""

    first: np.ndarray
    second: np.ndarray

    def __post_init__(self):
        a = _sorted_unimodular(self.first, "first")
        b = _sorted_unimodular(self.second, "second")
        if len(a) != len(b):
            raise InputError("both lists must have the same length")
        object.__setattr__(self, "first", a)
        object.__setattr__(self, "second", b)

    @property
    def n(self) -> int:
        return len(self.first) - 1


def interlace_check(cfg: CircularConfiguration, margin=BORDERLINE) -> bool:
    """True iff every open arc between consecutive points of ``first``
    contains exactly one point of ``second`` (points within ``margin`` of
    an arc endpoint count as not interlacing)."""
    a = np.mod(np.angle(cfg.first), TWO_PI)
    b = np.mod(np.angle(cfg.second), TWO_PI)
    # arc distance between the two sets
    gap = np.abs(np.angle(cfg.first[:, None] * np.conj(cfg.second[None, :])))
    if gap.min() <= margin:
        return False
    N = len(a)
    counts = np.zeros(N, dtype=int)
    for x in b:
        k = np.searchsorted(a, x, side="right") - 1  # arc starting at a[k]; -1 wraps
        counts[k % N] += 1
    return bool(np.all(counts == 1))


def two_popuc_polynomials(first, second):
    """Q, R (monic with the given zeros), λ, μ and
    P_n = (λ Q - μ R) / ((λ - μ) z)."""
    Q = poly.fromroots(first)
    R = poly.fromroots(second)
    lam = complex(-np.prod(-np.conj(first)))
    mu = complex(-np.prod(-np.conj(second)))
    lam /= abs(lam)
    mu /= abs(mu)
    if abs(lam - mu) < 1e-12:
        raise DegenerateParametersError("the two zero sets give the same parameter λ = μ")
    num = lam * Q - mu * R
    P = num[1:] / (lam - mu)
    P[-1] = 1.0
    return Q, R, P, lam, mu


def reconstruct_from_two_popuc(cfg: CircularConfiguration, check_interlacing=True, tol=1e-8):
    """(word, λ, μ) such that ``cfg.first`` are the zeros of Φ_{n+1}(·; λ)
    and ``cfg.second`` those of Φ_{n+1}(·; μ)."""
    if check_interlacing and not interlace_check(cfg):
        raise NotRealizableError("zero sets do not strictly interlace")
    _, _, P, lam, mu = two_popuc_polynomials(cfg.first, cfg.second)
    try:
        word = opuc.verblunsky_from_phi(P)
    except NotSchurStableError as exc:
        raise NotRealizableError(f"P_n has a zero on or outside the circle ({exc})") from exc
    for zeros, par in ((cfg.first, lam), (cfg.second, mu)):
        got = popuc.popuc_zeros(word, par, check=False).zeros
        err = _set_distance(got, zeros)
        if err > tol:
            raise InternalConsistencyError(f"round trip reproduces zeros only to {err:.3e}")
    return word, lam, mu


def _set_distance(a, b):
    """Max distance after matching each point of ``a`` to its nearest in ``b``."""
    d = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def quasi_caratheodory(w, y):
    """Numerator and denominator of f(z) = Π(1 - conj(y_j) z) / Π(1 - conj(w_j) z)."""
    num = np.ones(1, dtype=complex)
    den = np.ones(1, dtype=complex)
    for v in y:
        num = poly.mul(num, [1.0, -np.conj(v)])
    for v in w:
        den = poly.mul(den, [1.0, -np.conj(v)])
    return num, den


def caratheodory_masses(w, y, radius=0.5, tol=1e-10):
    """Coefficients c_j with f(z) = Σ c_j (w_j + z)/(w_j - z), found by a
    linear solve at n+1 points on |z| = radius and checked at n+1 others."""
    w = np.asarray(w, dtype=complex)
    num, den = quasi_caratheodory(w, y)
    N = len(w)
    zs = radius * np.exp(1j * (TWO_PI * np.arange(N) / N + 0.1))
    M = (w[None, :] + zs[:, None]) / (w[None, :] - zs[:, None])
    rhs = poly.polyval(num, zs) / poly.polyval(den, zs)
    c = np.linalg.solve(M, rhs)
    check = radius * np.exp(1j * (TWO_PI * (np.arange(N) + 0.5) / N + 0.1))
    fit = ((w[None, :] + check[:, None]) / (w[None, :] - check[:, None])) @ c
    res = np.max(np.abs(fit - poly.polyval(num, check) / poly.polyval(den, check)))
    if res > tol:
        raise InternalConsistencyError(f"partial-fraction fit residual {res:.3e}")
    return c


def reconstruct_second_kind(cfg: CircularConfiguration, check_interlacing=True, tol=1e-8):
    """(word, λ) such that ``cfg.first`` are the zeros of Φ_{n+1}(·; λ) and
    ``cfg.second`` the zeros of the second-kind Ψ_{n+1}."""
    w, y = cfg.first, cfg.second
    pw, py = np.prod(w), np.prod(y)
    if abs(py + pw) > 1e-9:
        raise ProductConditionError(f"|Π y + Π w| = {abs(py + pw):.3e}; need Π y = -Π w")
    if check_interlacing and not interlace_check(cfg):
        raise NotRealizableError("zero sets do not strictly interlace")
    c = caratheodory_masses(w, y)
    if np.max(np.abs(c.imag)) > 1e-8:
        raise InternalConsistencyError("masses are not real")
    c = c.real
    if np.any(c <= 0):
        raise NotRealizableError("a point mass is not positive")
    if abs(c.sum() - 1) > 1e-10:
        raise InternalConsistencyError(f"masses sum to {c.sum():.17g}")
    mu = opuc.UnitCircleMeasure(w, c / c.sum())
    full = opuc.verblunsky_from_measure(mu)
    word, lam = full.without_terminal(), full.terminal
    got_w = popuc.popuc_zeros(word, lam, check=False).zeros
    got_y = popuc.popuc_zeros(word.negated(), -lam, check=False).zeros
    err = max(_set_distance(got_w, w), _set_distance(got_y, y))
    if err > tol:
        raise InternalConsistencyError(f"round trip reproduces zeros only to {err:.3e}")
    return word, lam
