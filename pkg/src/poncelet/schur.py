"""Schur functions, the Schur algorithm and Carathéodory functions.

A Schur function here is rational, ``f = num/den``, analytic on the closed
disk with ``|f| <= 1``.  The Schur algorithm

    γ_k = f_k(0),   f_{k+1} = (f_k - γ_k) / (z (1 - conj(γ_k) f_k))

is carried out on the numerator/denominator pair, so the factor ``z`` is
removed by shifting coefficients rather than by division at points.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import opuc, poly
from .errors import InputError, NotSchurError, PoleError, SolverError

MAX_DEGREE = 64
SAMPLE_POINTS = 512


@dataclass(frozen=True, eq=False)
class RationalSchurFn:
    numerator: np.ndarray
    denominator: np.ndarray

    def __post_init__(self):
        num = poly.trim(self.numerator)
        den = poly.trim(self.denominator)
        if not (np.all(np.isfinite(num)) and np.all(np.isfinite(den))):
            raise InputError("coefficients must be finite")
        if np.all(den == 0):
            raise InputError("denominator is identically zero")
        if max(len(num), len(den)) - 1 > MAX_DEGREE:
            raise InputError(f"degree exceeds cap {MAX_DEGREE}")
        if len(den) > 1:
            r = poly.roots(den)
            if np.min(np.abs(r)) <= 1 + 1e-12:
                raise NotSchurError("denominator vanishes in the closed unit disk")
        z = np.exp(2j * np.pi * np.arange(SAMPLE_POINTS) / SAMPLE_POINTS)
        peak = np.max(np.abs(poly.polyval(num, z) / poly.polyval(den, z)))
        if peak > 1 + 1e-10:
            raise NotSchurError(f"sup |f| on the circle is {peak:.12g} > 1")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __call__(self, z):
        return poly.polyval(self.numerator, z) / poly.polyval(self.denominator, z)


def blaschke(word: opuc.VerblunskyWord, lam=1.0) -> RationalSchurFn:
    """λ B_n = λ Φ_n / Φ_n^* for the interior part of ``word``."""
    seq = opuc.szego_forward(word.without_terminal())
    n = word.n
    return RationalSchurFn(lam * seq.phi(n), seq.phistar(n))


def _strip_common_roots(num, den, tol=1e-10):
    if len(num) < 2 or len(den) < 2:
        return num, den
    try:
        rn = list(poly.roots(num))
        rd = list(poly.roots(den))
    except SolverError:
        return num, den
    changed = False
    for r in list(rn):
        if not rd:
            break
        d = np.abs(np.array(rd) - r)
        j = int(np.argmin(d))
        if d[j] <= tol * max(1.0, abs(r)):
            rn.remove(r)
            rd.pop(j)
            changed = True
    if not changed:
        return num, den
    new_num = num[-1] * poly.fromroots(rn)
    new_den = den[-1] * poly.fromroots(rd)
    return new_num, new_den


def schur_algorithm(f: RationalSchurFn, steps: int, unimodular_tol=1e-10):
    """Schur parameters γ_0..γ_{steps-1}; stops early after a unimodular γ."""
    num = np.array(f.numerator)
    den = np.array(f.denominator)
    out = []
    for _ in range(steps):
        d0 = den[0]
        if d0 == 0:
            raise PoleError("iterate has a pole at 0")
        num, den = num / d0, den / d0
        gamma = num[0]
        if abs(gamma) > 1 + 1e-8:
            raise NotSchurError(f"Schur parameter of modulus {abs(gamma):.12g} > 1")
        out.append(complex(gamma))
        if abs(gamma) >= 1 - unimodular_tol:
            break
        lead = poly.add(num, -gamma * den)
        new_den = poly.add(den, -np.conj(gamma) * num)
        new_num = lead[1:] if len(lead) > 1 else np.zeros(1, dtype=complex)
        scale = max(np.max(np.abs(new_den)), 1e-300)
        new_num = poly.trim(new_num, 1e-13 * scale / max(np.max(np.abs(new_num)), 1e-300))
        new_den = poly.trim(new_den, 1e-13)
        if np.max(np.abs(new_num)) <= 1e-14 * scale:
            new_num = np.zeros(1, dtype=complex)
        num, den = _strip_common_roots(new_num, new_den)
    return out


def schur_algorithm_series(coeffs, steps):
    """Schur algorithm on a truncated Taylor series.  Each step consumes one
    coefficient, so at most ``len(coeffs)`` parameters are produced."""
    f = np.array(coeffs, dtype=complex)
    out = []
    for _ in range(min(steps, len(f))):
        gamma = f[0]
        out.append(complex(gamma))
        if abs(gamma) >= 1:
            break
        m = len(f)
        num = f.copy()
        num[0] -= gamma
        den = -np.conj(gamma) * f
        den[0] += 1.0
        # (num / z) / den as series of length m-1
        top = num[1:]
        q = np.zeros(m - 1, dtype=complex)
        for k in range(m - 1):
            q[k] = (top[k] - np.dot(q[:k], den[k:0:-1])) / den[0]
        f = q
    return out


def schur_params_closed_form(word: opuc.VerblunskyWord):
    """(-λ conj(α_{n-1}), ..., -λ conj(α_0), λ): the Schur parameters of λ B_n."""
    lam = word.terminal
    if lam is None:
        raise InputError("word must carry a terminal lambda")
    a = word.alphas
    return [complex(-lam * np.conj(x)) for x in a[::-1]] + [complex(lam)]


def caratheodory(x, z):
    """Carathéodory function of a Schur function ``(1 + z f)/(1 - z f)`` or
    of a point-mass measure ``Σ w_j (node_j + z)/(node_j - z)``."""
    z = complex(z)
    if isinstance(x, RationalSchurFn):
        if abs(z) >= 1:
            raise InputError("Schur form needs |z| < 1")
        zf = z * x(z)
        if abs(1 - zf) < 1e-14:
            raise PoleError("1 - z f(z) vanishes")
        return (1 + zf) / (1 - zf)
    if isinstance(x, opuc.UnitCircleMeasure):
        d = x.nodes - z
        if np.min(np.abs(d)) < 1e-14:
            raise PoleError("z coincides with a node")
        return complex(np.sum(x.weights * (x.nodes + z) / d))
    raise InputError("expected a RationalSchurFn or UnitCircleMeasure")


def schur_from_caratheodory(F, z):
    """Inverse of the Schur-to-Carathéodory map: f = (F - 1)/(z (F + 1))."""
    return (F - 1) / (z * (F + 1))


def caratheodory_Fn(word: opuc.VerblunskyWord, z):
    """Ψ_n^*(z) / Φ_n^*(z) for the interior part of ``word``."""
    w = word.without_terminal()
    n = w.n
    phistar = opuc.szego_forward(w).phistar(n)
    psistar = opuc.second_kind(w).phistar(n)
    return poly.polyval(psistar, z) / poly.polyval(phistar, z)
