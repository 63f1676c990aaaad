"""GGT matrices: the matrix of multiplication by z in the orthonormal
polynomial basis, either compressed (a contraction) or, with a unimodular
terminal coefficient, unitary.

Entries (0-based, α_{-1} = -1)::

    G[k, l] = -conj(α_l) α_{k-1} ρ_k ρ_{k+1} ... ρ_{l-1}    (k <= l)
    G[l+1, l] = ρ_l
    G[k, l] = 0                                              (k >= l + 2)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, opuc, poly
from .errors import (
    ConvergenceError,
    InputError,
    InternalConsistencyError,
    NotCompletelyNonUnitaryError,
    NotContractionError,
    NotDefectOneError,
)

JACOBI_TOL = 1e-15
JACOBI_SWEEPS = 60


@dataclass(frozen=True, eq=False)
class GGTMatrix:
    entries: np.ndarray
    kind: str  # "contraction" or "unitary"

    def __post_init__(self):
        e = np.array(self.entries, dtype=complex)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)
        if self.kind not in ("contraction", "unitary"):
            raise InputError(f"unknown kind {self.kind!r}")

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)


def ggt_entries(alphas, rhos=None):
    """Dense GGT matrix built from α_0..α_{N-1} (the last may be unimodular)."""
    a = np.asarray(alphas, dtype=complex)
    N = len(a)
    if rhos is None:
        rhos = np.sqrt(np.maximum(1 - np.abs(a) ** 2, 0.0))
    G = np.zeros((N, N), dtype=complex)
    prev = np.concatenate([[-1.0], a[:-1]]) if N else a
    for l in range(N):
        prod = 1.0
        for k in range(l, -1, -1):
            if k < l:
                prod *= rhos[k]
            G[k, l] = -np.conj(a[l]) * prev[k] * prod
        if l + 1 < N:
            G[l + 1, l] = rhos[l]
    return G


def ggt_build(word: opuc.VerblunskyWord) -> GGTMatrix:
    if word.terminal is None:
        return GGTMatrix(ggt_entries(word.alphas), "contraction")
    return GGTMatrix(ggt_entries(word.all_coefficients()), "unitary")


def hessenberg_char_poly(H) -> np.ndarray:
    """det(z - H) for an upper Hessenberg matrix by the leading-minor
    recurrence."""
    H = np.asarray(H, dtype=complex)
    n = H.shape[0]
    ps = [np.ones(1, dtype=complex)]
    for k in range(n):
        nxt = poly.shift(ps[k]) - H[k, k] * np.concatenate([ps[k], [0]])
        sub = 1.0 + 0j
        for i in range(k - 1, -1, -1):
            sub *= H[i + 1, i]
            term = H[i, k] * sub
            if term != 0:
                nxt[: len(ps[i])] -= term * ps[i]
        nxt[-1] = 1.0
        ps.append(nxt)
    return ps[n]


def char_poly(G: GGTMatrix) -> poly.MonicPoly:
    return poly.MonicPoly(hessenberg_char_poly(G.entries))


def _flip_coeffs(alphas):
    a = np.asarray(alphas, dtype=complex)
    last = a[-1]
    beta = -last * np.conj(a[-2::-1])
    return np.concatenate([beta, [last]])


def head_flip(word: opuc.VerblunskyWord) -> opuc.VerblunskyWord:
    """Coefficients β of the same unitary seen from the last basis vector:
    β_j = -α_{n-1} conj(α_{n-2-j}) for j <= n-2 and β_{n-1} = α_{n-1}.
    Also checks J G(α)^T J == G(β)."""
    if word.terminal is None:
        raise InputError("head_flip needs a word with a unimodular terminal")
    a = word.all_coefficients()
    b = _flip_coeffs(a)
    Ga = ggt_entries(a)
    Gb = ggt_entries(b)
    flipped = Ga.T[::-1, ::-1]
    err = np.max(np.abs(flipped - Gb)) if len(a) else 0.0
    if err > 1e-12:
        raise InternalConsistencyError(f"J G^T J differs from G(beta) by {err:.3e}")
    return opuc.VerblunskyWord(tuple(b[:-1]), b[-1])


def _svd(A):
    w, v, _, ok = kernels.jacobi_svd(A, JACOBI_TOL, JACOBI_SWEEPS)
    if not ok:
        raise ConvergenceError("Jacobi SVD did not converge")
    s = np.linalg.norm(w, axis=0)
    order = np.argsort(-s, kind="stable")
    return w[:, order], s[order], v[:, order]


def polar_unitary(w, s):
    """Unitary factor columns: w_j / s_j, completing null columns by
    Gram–Schmidt against the standard basis."""
    n = w.shape[1]
    scale = max(s[0], 1e-300) if len(s) else 1.0
    cols = []
    for j in range(n):
        if s[j] > 1e-13 * scale:
            cols.append(w[:, j] / s[j])
        else:
            cols.append(None)
    basis = [c for c in cols if c is not None]
    for j in range(n):
        if cols[j] is not None:
            continue
        for e in np.eye(n, dtype=complex):
            x = e.copy()
            for _ in range(2):
                for b in basis:
                    x = x - np.vdot(b, x) * b
            nx = np.linalg.norm(x)
            if nx > 1e-6:
                cols[j] = x / nx
                basis.append(cols[j])
                break
    # re-orthonormalize the whole set to remove accumulated drift
    Q = np.array(cols).T
    for j in range(n):
        for i in range(j):
            Q[:, j] -= np.vdot(Q[:, i], Q[:, j]) * Q[:, i]
        Q[:, j] /= np.linalg.norm(Q[:, j])
    return Q


def contraction_to_verblunsky(A, tol=1e-9) -> opuc.VerblunskyWord:
    """Verblunsky coefficients of a completely non-unitary contraction with
    defect index one, i.e. the word whose GGT contraction is unitarily
    equivalent to ``A``.

    Route: A = U B (polar form), x = unit vector spanning ran(1 - A^*A),
    α = coefficients of the pair (U, x), β = head flip of α, and the last
    coefficient is scaled by the smallest singular value a.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InputError("expected a nonempty square matrix")
    if not np.all(np.isfinite(A)):
        raise InputError("matrix entries must be finite")
    n = A.shape[0]
    w, s, v = _svd(A)
    if s[0] > 1 + tol:
        raise NotContractionError(f"||A|| = {s[0]:.12g} > 1")
    defect = 1 - np.minimum(s, 1.0) ** 2
    if defect[-1] <= tol or (n > 1 and defect[-2] > tol):
        rank = int(np.sum(defect > tol))
        raise NotDefectOneError(f"rank(1 - A*A) = {rank}, expected 1")
    eig = np.linalg.eigvals(A)
    if np.max(np.abs(eig)) >= 1 - tol:
        raise NotCompletelyNonUnitaryError(
            f"A has an eigenvalue of modulus {np.max(np.abs(eig)):.12g}"
        )
    a = s[-1]
    x = v[:, -1]
    U = polar_unitary(w, s) @ v.conj().T
    if n == 1:
        # the 1x1 GGT unitary with coefficient β is [conj(β)]
        beta = np.array([np.conj(U[0, 0]) / abs(U[0, 0])])
    else:
        alphas, lam = opuc.verblunsky_from_cyclic(U, x)
        beta = head_flip(opuc.VerblunskyWord(tuple(alphas), lam)).all_coefficients()
    gamma = np.array(beta, dtype=complex)
    gamma[-1] = a * gamma[-1]
    word = opuc.VerblunskyWord(tuple(gamma))
    got = char_poly(ggt_build(word)).coeffs
    want = np.poly(A)[::-1]
    err = np.max(np.abs(got - want))
    if err > 1e-8:
        raise InternalConsistencyError(f"characteristic polynomials differ by {err:.3e}")
    return word
