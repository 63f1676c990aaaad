"""Szegő recursion and the conversions between Verblunsky coefficients,
monic orthogonal polynomials and probability measures on the circle.

Moment convention: ``c_k = ∫ exp(-i k θ) dμ(θ)``, so the Gram matrix of the
monomials ``1, z, ..., z**m`` is the Hermitian Toeplitz matrix
``G[j, k] = c_{j-k}`` (inner products conjugate-linear in the first slot).

Recursion (forward)::

    Φ_{k+1}  = z Φ_k - conj(α_k) Φ_k^*
    Φ_{k+1}^* = Φ_k^* - α_k z Φ_k

and ``‖Φ_k‖ = ρ_0 ... ρ_{k-1}`` with ``ρ_j = sqrt(1 - |α_j|**2)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import poly
from .errors import (
    DegenerateMeasureError,
    IllConditionedError,
    InputError,
    InversionError,
    NotSchurStableError,
)

ALPHA_MARGIN = 1e-14
UNIMODULAR_TOL = 1e-12
NODE_SEPARATION = 1e-10


def _as_complex(x, what):
    z = complex(x)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise InputError(f"{what} must be finite")
    return z


@dataclass(frozen=True)
class VerblunskyWord:
    """Coefficients α_0..α_{n-1} in the open disk, optionally followed by a
    unimodular terminal λ (stored with modulus exactly 1)."""

    interior: tuple = ()
    terminal: complex | None = None

    def __post_init__(self):
        alphas = tuple(_as_complex(a, "Verblunsky coefficient") for a in self.interior)
        for j, a in enumerate(alphas):
            if not abs(a) < 1 - ALPHA_MARGIN:
                raise InputError(f"|alpha_{j}| = {abs(a):.17g} is not < 1")
        object.__setattr__(self, "interior", alphas)
        if self.terminal is not None:
            lam = _as_complex(self.terminal, "terminal")
            if abs(abs(lam) - 1) > UNIMODULAR_TOL:
                raise InputError(f"terminal has modulus {abs(lam):.17g}, expected 1")
            object.__setattr__(self, "terminal", lam / abs(lam))

    @property
    def n(self) -> int:
        return len(self.interior)

    @property
    def alphas(self) -> np.ndarray:
        return np.array(self.interior, dtype=complex)

    @property
    def rhos(self) -> np.ndarray:
        return np.sqrt(1 - np.abs(self.alphas) ** 2)

    def with_terminal(self, lam) -> "VerblunskyWord":
        return VerblunskyWord(self.interior, lam)

    def without_terminal(self) -> "VerblunskyWord":
        return VerblunskyWord(self.interior)

    def negated(self) -> "VerblunskyWord":
        """The word of the second-kind polynomials: every sign flipped,
        including the terminal."""
        lam = None if self.terminal is None else -self.terminal
        return VerblunskyWord(tuple(-a for a in self.interior), lam)

    def all_coefficients(self) -> np.ndarray:
        out = list(self.interior)
        if self.terminal is not None:
            out.append(self.terminal)
        return np.array(out, dtype=complex)


@dataclass(frozen=True, eq=False)
class OpucSequence:
    """Φ_0..Φ_N, their reversals, and norms.  When the word has a terminal
    the last entry is the paraorthogonal polynomial and its norm is 0."""

    phis: list
    phistars: list
    norms: np.ndarray
    word: VerblunskyWord = field(repr=False)

    @property
    def has_terminal(self) -> bool:
        return self.word.terminal is not None

    def phi(self, k) -> np.ndarray:
        return np.array(self.phis[k].coeffs)

    def phistar(self, k) -> np.ndarray:
        return np.array(self.phistars[k])

    def orthonormal(self, k) -> np.ndarray:
        """φ_k = Φ_k / ‖Φ_k‖ (undefined for the terminal polynomial)."""
        if self.norms[k] == 0:
            raise InputError("the paraorthogonal polynomial has norm zero")
        return self.phi(k) / self.norms[k]


def szego_step(phi, phistar, alpha):
    """One forward step; returns (Φ_{k+1}, Φ_{k+1}^*) as arrays."""
    zphi = poly.shift(phi)
    nphi = zphi - np.conj(alpha) * np.concatenate([phistar, [0]])
    nstar = np.concatenate([phistar, [0]]) - alpha * zphi
    nphi[-1] = 1.0
    return nphi, nstar


def szego_forward(word: VerblunskyWord) -> OpucSequence:
    phi = np.ones(1, dtype=complex)
    star = np.ones(1, dtype=complex)
    phis = [poly.MonicPoly(phi)]
    stars = [star]
    norms = [1.0]
    for a in word.all_coefficients():
        phi, star = szego_step(phi, star, a)
        phis.append(poly.MonicPoly(phi))
        stars.append(star)
        norms.append(norms[-1] * np.sqrt(max(1 - abs(a) ** 2, 0.0)))
    if word.terminal is not None:
        norms[-1] = 0.0
    return OpucSequence(phis, stars, np.array(norms), word)


def popuc(word: VerblunskyWord, lam=None) -> np.ndarray:
    """Φ_{n+1}(z; λ) = z Φ_n - conj(λ) Φ_n^*.  ``lam`` defaults to the
    word's terminal."""
    if lam is None:
        lam = word.terminal
    if lam is None:
        raise InputError("a terminal lambda is required")
    base = szego_forward(word.without_terminal())
    phi, _ = szego_step(base.phi(word.n), base.phistar(word.n), lam)
    return phi


def second_kind(word: VerblunskyWord) -> OpucSequence:
    """Second-kind sequence Ψ: the sign of every coefficient is flipped,
    terminal included (the convention that makes Φ and Ψ zeros interlace)."""
    return szego_forward(word.negated())


def inverse_step(phi_k):
    """Φ_k -> (Φ_{k-1}, α_{k-1}) by inverse Szegő recursion."""
    phi_k = poly.as_coeffs(phi_k)
    k = len(phi_k) - 1
    alpha = -np.conj(phi_k[0])
    rho2 = 1 - abs(alpha) ** 2
    if not rho2 > 0:
        raise InversionError(f"|alpha_{k - 1}| = {abs(alpha):.6g} >= 1 during inverse recursion")
    num = phi_k + np.conj(alpha) * poly.star(phi_k, k)
    # num has zero constant term: divide by z
    prev = num[1:] / rho2
    prev[-1] = 1.0
    return prev, alpha


def verblunsky_from_phi(phi_n, margin=1e-10) -> VerblunskyWord:
    """Recover α_0..α_{n-1} from a monic polynomial with zeros in the disk."""
    c = poly.as_coeffs(phi_n)
    if c[-1] != 1:
        raise InputError("polynomial must be monic")
    n = len(c) - 1
    if n >= 1:
        r = poly.roots(c)
        if np.max(np.abs(r)) >= 1 - margin:
            raise NotSchurStableError(
                f"a zero has modulus {np.max(np.abs(r)):.12g}; all must lie inside the disk"
            )
    alphas = []
    for _ in range(n):
        c, a = inverse_step(c)
        alphas.append(a)
    return VerblunskyWord(tuple(alphas[::-1]))


@dataclass(frozen=True, eq=False)
class UnitCircleMeasure:
    """Finitely many distinct unimodular nodes with positive weights summing to 1."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        z = np.array(self.nodes, dtype=complex).ravel()
        w = np.array(self.weights, dtype=float).ravel()
        if len(z) == 0 or len(z) != len(w):
            raise InputError("nodes and weights must be nonempty and of equal length")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(w))):
            raise InputError("nodes and weights must be finite")
        if np.any(np.abs(np.abs(z) - 1) > UNIMODULAR_TOL):
            raise InputError("nodes must lie on the unit circle")
        if np.any(w <= 0):
            raise InputError("weights must be positive")
        if abs(w.sum() - 1) > 1e-12:
            raise InputError(f"weights sum to {w.sum():.17g}, expected 1")
        if len(z) > 1:
            d = np.abs(z[:, None] - z[None, :]) + np.eye(len(z)) * 4
            if d.min() <= NODE_SEPARATION:
                raise DegenerateMeasureError("measure has (nearly) coincident nodes")
        z = z / np.abs(z)
        z.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "nodes", z)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.nodes)

    def moments(self, K) -> np.ndarray:
        """c_0..c_K with c_k = Σ w_j conj(node_j)**k."""
        k = np.arange(K + 1)
        return (self.weights[None, :] * np.conj(self.nodes)[None, :] ** k[:, None]).sum(axis=1)


def verblunsky_from_cyclic(U, v):
    """Verblunsky coefficients of the pair (U, v), U unitary with cyclic unit
    vector v: the spectral measure of v for U, expressed through Szegő
    recursion run on vectors (Arnoldi-style with reorthogonalization).

    ``U`` may be a 1-D array, meaning the diagonal matrix with those entries.
    Returns ``(interior alphas, terminal)``.
    """
    v = np.asarray(v, dtype=complex)
    N = len(v)
    if np.ndim(U) == 1:
        diag = np.asarray(U, dtype=complex)
        apply = lambda x: diag * x  # noqa: E731
    else:
        mat = np.asarray(U, dtype=complex)
        apply = lambda x: mat @ x  # noqa: E731
    phi = v / np.linalg.norm(v)
    phistar = phi.copy()
    basis = [phi]
    alphas = []
    for ell in range(N):
        uphi = apply(phi)
        abar = np.vdot(phistar, uphi)
        if ell == N - 1:
            if abs(abar) < 1 - 1e-6:
                raise DegenerateMeasureError("vector is not cyclic (measure has fewer points)")
            return np.array(alphas, dtype=complex), np.conj(abar) / abs(abar)
        alpha = np.conj(abar)
        rho2 = 1 - abs(alpha) ** 2
        if rho2 <= 1e-14:
            raise DegenerateMeasureError("measure has fewer distinct points than expected")
        rho = np.sqrt(rho2)
        nphi = (uphi - abar * phistar) / rho
        nstar = (phistar - alpha * uphi) / rho
        for _ in range(2):
            for b in basis:
                nphi = nphi - np.vdot(b, nphi) * b
        nphi = nphi / np.linalg.norm(nphi)
        nstar = nstar / np.linalg.norm(nstar)
        alphas.append(alpha)
        basis.append(nphi)
        phi, phistar = nphi, nstar
    raise AssertionError("unreachable")


def verblunsky_from_moments(c, n, terminal=False) -> VerblunskyWord:
    """α_0..α_{n-1} from moments c_0..c_n by orthogonalizing monomials
    against the Toeplitz Gram matrix (Cholesky).  With ``terminal=True`` the
    last coefficient is taken as the unimodular terminal."""
    c = np.asarray(c, dtype=complex)
    if len(c) < n + 1:
        raise InputError(f"need {n + 1} moments, got {len(c)}")
    c = c / c[0].real
    idx = np.arange(n + 1)
    diff = idx[:, None] - idx[None, :]
    G = np.where(diff >= 0, c[np.abs(diff)], np.conj(c[np.abs(diff)]))
    alphas = []
    for k in range(1, n + 1):
        sub = G[:k, :k]
        try:
            L = np.linalg.cholesky(sub)
        except np.linalg.LinAlgError as exc:
            raise DegenerateMeasureError("moment matrix is not positive definite") from exc
        y = np.linalg.solve(L, -G[:k, k])
        x = np.linalg.solve(L.conj().T, y)
        alphas.append(-np.conj(x[0]))
    if terminal:
        lam = alphas.pop()
        if abs(abs(lam) - 1) > 1e-6:
            raise DegenerateMeasureError(f"terminal coefficient has modulus {abs(lam):.6g}")
        return VerblunskyWord(tuple(alphas), lam / abs(lam))
    for j, a in enumerate(alphas):
        if abs(a) >= 1 - ALPHA_MARGIN:
            raise DegenerateMeasureError(f"|alpha_{j}| >= 1: measure is supported on too few points")
    return VerblunskyWord(tuple(alphas))


def verblunsky_from_measure(mu: UnitCircleMeasure, method="arnoldi") -> VerblunskyWord:
    """Word of an N-point measure: N-1 interior coefficients plus the
    unimodular terminal.

    ``method="arnoldi"`` runs the recursion on the vector of square-root
    weights under multiplication by the nodes; ``method="moments"`` solves
    the Toeplitz moment system instead.  The two are independent routes.
    """
    N = len(mu)
    if method == "moments":
        return verblunsky_from_moments(mu.moments(N), N, terminal=True)
    if method != "arnoldi":
        raise InputError(f"unknown method {method!r}")
    alphas, lam = verblunsky_from_cyclic(mu.nodes, np.sqrt(mu.weights))
    return VerblunskyWord(tuple(alphas), lam)


def bernstein_szego_moments(phi_n, K, margin=1e-6) -> np.ndarray:
    """Moments c_0..c_K of c·dθ/|Φ_n(e^{iθ})|², normalized so c_0 = 1.

    This measure has Φ_0..Φ_n (built from ``phi_n`` by inverse recursion)
    as its first monic orthogonal polynomials.  Computed by the trapezoid
    rule on max(4096, 64(n+K)) equispaced points.
    """
    c = poly.as_coeffs(phi_n)
    n = len(c) - 1
    if n >= 1:
        r = poly.roots(c)
        if np.max(np.abs(r)) >= 1 - margin:
            raise IllConditionedError(
                f"a zero has modulus {np.max(np.abs(r)):.12g}, too close to the circle"
            )
    M = max(4096, 64 * (n + K))
    theta = 2 * np.pi * np.arange(M) / M
    dens = 1.0 / np.abs(poly.polyval(c, np.exp(1j * theta))) ** 2
    dens = dens / dens.sum()
    k = np.arange(K + 1)
    return np.exp(-1j * np.outer(k, theta)) @ dens
