import numpy as np
import pytest

from conftest import random_word
from poncelet import geometry, ggt, numrange, opuc, poly, popuc

SHIFT2 = opuc.VerblunskyWord((0, 0))
OMEGA = np.exp(2j * np.pi / 3)


def test_tangent_points_trivial():
    z = numrange.tangent_points(SHIFT2, 1)
    mids = [(1 + OMEGA) / 2, (OMEGA + OMEGA**2) / 2, (OMEGA**2 + 1) / 2]
    assert np.allclose(np.sort_complex(z), np.sort_complex(mids), atol=1e-14)


def test_tangent_point_laws(rng):
    for n in range(2, 8):
        w = random_word(rng, n, rmax=0.8)
        lam = np.exp(1j * rng.uniform(0, 2 * np.pi))
        f = popuc.popuc_zeros(w, lam)
        z = f.tangent_points
        a, b = f.zeros, np.roll(f.zeros, -1)
        ratio = np.abs(z - a) / np.abs(z - b)
        assert np.allclose(ratio, f.weights / np.roll(f.weights, -1), rtol=1e-10)
        p1, p2 = np.prod(np.abs(z - a)), np.prod(np.abs(z - b))
        assert abs(p1 - p2) < 1e-9 * p1
        # on the segment, strictly inside
        cross = np.imag(np.conj(b - a) * (z - a)) / np.abs(b - a)
        assert np.max(np.abs(cross)) < 1e-11
        t = np.real(np.conj(b - a) * (z - a)) / np.abs(b - a) ** 2
        assert np.all((t > 0) & (t < 1))
        # each ζ_j touches N(A) along the edge's outward normal
        A = ggt.ggt_build(w).entries
        normal = np.angle(b - a) - np.pi / 2
        h = numrange.support_function(A, normal)
        assert np.max(np.abs(h - np.real(np.exp(-1j * normal) * z))) < 1e-6


def test_sweep_shift_circle():
    for n in range(2, 7):
        c = numrange.boundary_sweep(opuc.VerblunskyWord((0,) * n), 256)
        r = numrange.support_function(np.diag(np.ones(n - 1), -1), [0.3])[0]
        assert abs(r - np.cos(np.pi / (n + 1))) < 1e-12
        assert np.max(np.abs(np.abs(c.samples) - r)) < 1e-8


def test_sweep_single_point():
    a = 0.3 + 0.4j
    c = numrange.boundary_sweep(opuc.VerblunskyWord((a,)), 16)
    assert len(c) == 1 and abs(c.samples[0] - np.conj(a)) < 1e-14


def test_oracle_examples():
    c = numrange.support_oracle(np.diag([1.0, -1.0]), 2 * np.pi * np.arange(8) / 8 + 0.1)
    assert np.all(np.isclose(np.abs(c.samples), 1))
    assert np.allclose(c.samples.imag, 0, atol=1e-14)
    c = numrange.support_oracle([[0, 0], [1, 0]], 2 * np.pi * np.arange(64) / 64)
    assert np.allclose(np.abs(c.samples), 0.5, atol=1e-13)


def test_hausdorff_sweep_vs_oracle(rng):
    angles = 2 * np.pi * np.arange(256) / 256
    for n in (2, 3, 5):
        w = random_word(rng, n, rmax=0.8)
        sweep = numrange.boundary_sweep(w, 256)
        oracle = numrange.support_oracle(w, angles, refine_tol=1e-9)
        assert sweep.hausdorff(oracle) < 1e-5


def test_contains():
    assert numrange.contains(SHIFT2, 0)
    assert not numrange.contains(SHIFT2, 0.51)


def test_contains_spectrum_and_polygons(rng):
    for n in range(2, 6):
        w = random_word(rng, n, rmax=0.8)
        eig = poly.roots(opuc.szego_forward(w).phi(n))
        assert all(numrange.contains(w, e, slack=1e-8) for e in eig)
        polys = numrange.outer_polygons(w, 64)
        inside = eig.mean()
        assert all(numrange.in_polygon(inside, p) for p in polys)
        A = ggt.ggt_build(w).entries
        phi = 0.7
        # just beyond the supporting line in direction phi
        far = inside + (numrange.support_function(A, [phi])[0] - np.real(np.exp(-1j * phi) * inside) + 0.02) * np.exp(1j * phi)
        assert not numrange.contains(w, far)
        assert not all(numrange.in_polygon(far, p) for p in polys)


def test_sweep_inside_polygons(rng):
    w = random_word(rng, 4, rmax=0.8)
    c = numrange.boundary_sweep(w, 128)
    for p in numrange.outer_polygons(w, 16):
        assert all(numrange.in_polygon(z, p, slack=1e-8) for z in c.samples)


def test_n2_is_ellipse(rng):
    for _ in range(5):
        w = random_word(rng, 2, rmax=0.8)
        A = ggt.ggt_build(w).entries
        a1, a2 = np.linalg.eigvals(A)
        minor = np.sqrt(np.trace(A.conj().T @ A).real - abs(a1) ** 2 - abs(a2) ** 2)
        semimajor = np.hypot(minor / 2, abs(a1 - a2) / 2)
        ell = geometry.Ellipse((a1, a2), semimajor)
        phi = np.linspace(0, 2 * np.pi, 97)
        assert np.max(np.abs(ell.support(phi) - numrange.support_function(A, phi))) < 1e-12
        sweep = numrange.boundary_sweep(w, 256)
        assert sweep.hausdorff(ell.to_curve(512)) < 1e-6


def test_chords():
    w = opuc.VerblunskyWord((0.2, -0.1j, 0.3))
    segs = numrange.kippenhahn_chords(w, 10)
    assert segs.shape == (10 * 6, 2)
    tri = numrange.kippenhahn_chords(SHIFT2, 1)
    z = popuc.popuc_zeros(SHIFT2, 1).zeros
    edges = {frozenset((round(a.real, 9), round(a.imag, 9)) for a in s) for s in tri}
    expect = {frozenset((round(a.real, 9), round(a.imag, 9)) for a in (z[i], z[(i + 1) % 3])) for i in range(3)}
    assert edges == expect
