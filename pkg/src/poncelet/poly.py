"""Complex polynomials in ascending coefficient order.

A polynomial is a 1-D complex array ``c`` with ``c[k]`` the coefficient of
``z**k``.  :class:`MonicPoly` wraps such an array when the leading
coefficient is exactly one.  Every function here also accepts plain arrays.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import kernels
from .errors import ConvergenceError, DegreeError, InputError

CLUSTER_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class MonicPoly:
    """Monic polynomial; ``coeffs[degree] == 1`` holds exactly."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or len(c) == 0:
            raise InputError("coefficient vector must be one-dimensional and nonempty")
        if not np.all(np.isfinite(c)):
            raise InputError("coefficients must be finite")
        if c[-1] != 1:
            raise InputError("leading coefficient of a MonicPoly must be exactly 1")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs, rtol=1e-12):
        """Trim negligible top coefficients and divide by the leading one."""
        c = trim(coeffs, rtol)
        c = c / c[-1]
        c[-1] = 1.0
        return cls(c)

    @classmethod
    def from_roots(cls, zs):
        c = fromroots(zs)
        c[-1] = 1.0
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return polyval(self.coeffs, z)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coeffs, dtype=dtype)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"MonicPoly(degree={self.degree}, coeffs={self.coeffs!r})"


def as_coeffs(p) -> np.ndarray:
    """Return the coefficient array of ``p`` as a fresh complex array."""
    if isinstance(p, MonicPoly):
        return np.array(p.coeffs)
    c = np.array(p, dtype=complex).ravel()
    if len(c) == 0:
        c = np.zeros(1, dtype=complex)
    return c


def degree(p) -> int:
    c = as_coeffs(p)
    nz = np.nonzero(c)[0]
    return int(nz[-1]) if len(nz) else 0


def trim(p, rtol=0.0) -> np.ndarray:
    """Drop top coefficients with modulus <= rtol * max modulus."""
    c = as_coeffs(p)
    scale = np.max(np.abs(c)) if len(c) else 0.0
    k = len(c)
    while k > 1 and abs(c[k - 1]) <= rtol * scale:
        k -= 1
    return c[:k]


def pad(p, n) -> np.ndarray:
    """Coefficient array of length ``n + 1``; raises if degree(p) > n."""
    c = as_coeffs(p)
    if degree(c) > n:
        raise DegreeError(f"polynomial of degree {degree(c)} exceeds {n}")
    out = np.zeros(n + 1, dtype=complex)
    m = min(len(c), n + 1)
    out[:m] = c[:m]
    return out


def star(p, n) -> np.ndarray:
    """The reversal ``tau_n``: ``z**n * conj(p(1/conj(z)))``."""
    if n < 0:
        raise DegreeError("n must be nonnegative")
    return np.conj(pad(p, n)[::-1])


def polyval(p, z):
    """Horner evaluation at a scalar or array of points."""
    c = as_coeffs(p)
    zarr = np.asarray(z, dtype=complex)
    out = kernels.horner(c, zarr.reshape(-1)).reshape(zarr.shape)
    return out[()] if out.ndim == 0 else out


def deriv(p) -> np.ndarray:
    c = as_coeffs(p)
    if len(c) == 1:
        return np.zeros(1, dtype=complex)
    return c[1:] * np.arange(1, len(c))


def add(p, q) -> np.ndarray:
    a, b = as_coeffs(p), as_coeffs(q)
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=complex)
    out[: len(a)] += a
    out[: len(b)] += b
    return out


def mul(p, q) -> np.ndarray:
    return npoly.polymul(as_coeffs(p), as_coeffs(q)).astype(complex)


def shift(p, k=1) -> np.ndarray:
    """Multiply by ``z**k``."""
    return np.concatenate([np.zeros(k, dtype=complex), as_coeffs(p)])


def fromroots(zs) -> np.ndarray:
    """Monic polynomial with the given roots."""
    zs = np.asarray(zs, dtype=complex).ravel()
    c = np.ones(1, dtype=complex)
    for z in zs:
        c = np.concatenate([[0], c]) - z * np.concatenate([c, [0]])
    return c


def _initial_guess(c):
    d = len(c) - 1
    center = -c[d - 1] / (d * c[d])
    shifted = npoly.polyfromroots([-center])  # z + center
    # coefficients of p(z + center) via repeated synthetic composition
    q = np.zeros(1, dtype=complex)
    for a in c[::-1]:
        q = npoly.polymul(q, shifted).astype(complex)
        q[0] += a
    q = q / q[-1]
    # Fujiwara-type radius bound about the centroid
    ratios = np.abs(q[:-1][::-1]) ** (1.0 / np.arange(1, d + 1))
    radius = max(float(np.max(ratios)), 1e-3)
    angles = 2 * np.pi * np.arange(d) / d + 0.4 + np.pi / (2 * d) * (np.sqrt(2) - 1)
    return center + radius * np.exp(1j * angles)


def roots(p, tol=None, maxiter=500):
    """All roots with multiplicity.

    Exact zero roots are split off first; the rest come from Aberth
    iteration with deterministic starting points followed by Newton polish.
    Each root ``r`` satisfies ``|p(r)| <= tol * sum_k |c_k| |r|**k``
    (a componentwise backward-error bound).
    """
    c = trim(p)
    if not np.all(np.isfinite(c)):
        raise InputError("coefficients must be finite")
    d = len(c) - 1
    if d < 1:
        raise DegreeError("roots() needs degree >= 1")
    if tol is None:
        tol = 1e-12
    nzero = int(np.argmax(c != 0))
    core = c[nzero:]
    found = np.zeros(nzero, dtype=complex)
    if len(core) == 1:
        return found
    z, _, _ = kernels.aberth(core, _initial_guess(core), maxiter, 1e-15)
    z = np.asarray(z, dtype=complex)
    dcore = deriv(core)
    for _ in range(3):
        val = polyval(core, z)
        dval = polyval(dcore, z)
        ok = dval != 0
        step = np.where(ok, val / np.where(ok, dval, 1.0), 0.0)
        newz = z - step
        better = np.abs(polyval(core, newz)) < np.abs(val)
        z = np.where(better, newz, z)
    res = backward_error(core, z)
    # near-multiple roots limit attainable accuracy; allow eps**(1/m) scaling
    bad = res > tol * _multiplicity_slack(z)
    if np.any(bad):
        raise ConvergenceError(
            f"root finder did not converge (max backward error {res.max():.3e})",
            residuals=res,
        )
    return np.concatenate([found, z])


def _multiplicity_slack(z):
    mult = cluster_multiplicity(z)
    return np.where(mult > 1, 1e4, 1.0)


def backward_error(p, z):
    """Componentwise backward error ``|p(z)| / sum |c_k| |z|^k``."""
    c = as_coeffs(p)
    z = np.asarray(z, dtype=complex)
    num = np.abs(polyval(c, z))
    den = kernels.horner(np.abs(c).astype(complex), np.abs(z).astype(complex)).real
    return num / np.where(den == 0, 1.0, den)


def cluster_multiplicity(zs, tol=CLUSTER_TOL):
    """For each value, the number of values within ``tol`` of it."""
    zs = np.asarray(zs, dtype=complex)
    if len(zs) == 0:
        return np.zeros(0, dtype=int)
    dist = np.abs(zs[:, None] - zs[None, :])
    return (dist <= tol).sum(axis=1)


def cluster_roots(zs, tol=CLUSTER_TOL):
    """Group nearly equal roots; returns a list of ``(mean, multiplicity)``."""
    zs = list(np.asarray(zs, dtype=complex))
    out = []
    while zs:
        z0 = zs.pop(0)
        group = [z0] + [z for z in zs if abs(z - z0) <= tol]
        zs = [z for z in zs if abs(z - z0) > tol]
        out.append((complex(np.mean(group)), len(group)))
    return out


def sort_by_angle(zs, start=0.0):
    """Sort by argument measured counterclockwise from angle ``start``."""
    zs = np.asarray(zs, dtype=complex)
    key = np.mod(np.angle(zs) - start, 2 * np.pi)
    return zs[np.argsort(key, kind="stable")]
