import numpy as np
import pytest

from conftest import random_word
from poncelet import opuc, poly, popuc, schur
from poncelet.errors import NotSchurError, PoleError


def test_constant_and_identity():
    f = schur.RationalSchurFn(np.array([0.3 + 0.2j]), np.array([1.0]))
    g = schur.schur_algorithm(f, 4)
    assert np.allclose(g, [0.3 + 0.2j, 0, 0, 0])
    assert np.allclose(schur.schur_algorithm(schur.RationalSchurFn([0, 1], [1]), 5), [0, 1])


def test_not_schur():
    with pytest.raises(NotSchurError):
        schur.RationalSchurFn([1.5], [1])
    with pytest.raises(NotSchurError):
        schur.RationalSchurFn([1], [0.5, 1])


def test_blaschke_schur_parameters_example():
    w = opuc.VerblunskyWord((0.5, 1j / 3), 1j)
    expect = [-1 / 3, -0.5j, 1j]
    assert np.allclose(schur.schur_params_closed_form(w), expect, atol=1e-15)
    got = schur.schur_algorithm(schur.blaschke(w, 1j), 5)
    assert len(got) == 3 and np.allclose(got, expect, atol=1e-12)
    assert np.allclose(schur.schur_params_closed_form(opuc.VerblunskyWord((0, 0), 1)), [0, 0, 1])


def test_closed_form_matches_algorithm(rng):
    for n in range(1, 7):
        w = random_word(rng, n, terminal=True)
        got = schur.schur_algorithm(schur.blaschke(w, w.terminal), n + 3)
        assert np.allclose(got, schur.schur_params_closed_form(w), atol=1e-10, rtol=0)


def test_blaschke_unimodular(rng):
    z = np.exp(2j * np.pi * np.arange(512) / 512)
    for n in range(1, 7):
        b = schur.blaschke(random_word(rng, n))
        assert np.max(np.abs(np.abs(b(z)) - 1)) < 1e-12


def test_caratheodory_forms(rng):
    assert schur.caratheodory(schur.RationalSchurFn([0], [1]), 0.3 + 0.1j) == 1
    mu = opuc.UnitCircleMeasure(np.exp(1j * np.array([0.1, 2.0, 4.0])), [0.2, 0.3, 0.5])
    assert abs(schur.caratheodory(mu, 0) - 1) < 1e-15
    with pytest.raises(PoleError):
        schur.caratheodory(mu, np.exp(0.1j))


def test_caratheodory_of_nu(rng):
    for n in range(1, 7):
        w = random_word(rng, n, terminal=True)
        lam = w.terminal
        nu = popuc.popuc_zeros(w).measure()
        Pp = opuc.popuc(w, lam)
        Pm = opuc.popuc(w, -lam)
        for z in 0.95 * np.sqrt(rng.uniform(size=16)) * np.exp(2j * np.pi * rng.uniform(size=16)):
            lhs = schur.caratheodory(nu, z)
            rhs = -poly.polyval(Pm, z) / poly.polyval(Pp, z)
            assert abs(lhs - rhs) < 1e-9 * (1 + abs(rhs))


def test_schur_function_of_nu(rng):
    for n in range(1, 7):
        w = random_word(rng, n, terminal=True)
        nu = popuc.popuc_zeros(w).measure()
        b = schur.blaschke(w, w.terminal)
        for z in 0.9 * np.sqrt(rng.uniform(size=16)) * np.exp(2j * np.pi * rng.uniform(size=16)):
            f = schur.schur_from_caratheodory(schur.caratheodory(nu, z), z)
            assert abs(f - b(z)) < 1e-9


def test_Fn_examples(rng):
    assert schur.caratheodory_Fn(opuc.VerblunskyWord(()), 0.4) == 1
    assert abs(schur.caratheodory_Fn(opuc.VerblunskyWord((0, 0)), 0.4j) - 1) < 1e-15
    z = 0.3 - 0.6j
    assert abs(schur.caratheodory_Fn(opuc.VerblunskyWord((0.5,)), z) - (1 + z / 2) / (1 - z / 2)) < 1e-15
    w = random_word(rng, 5, rmax=0.95)
    zs = 0.999 * np.sqrt(rng.uniform(size=256)) * np.exp(2j * np.pi * rng.uniform(size=256))
    assert np.all(np.real(schur.caratheodory_Fn(w, zs)) > 0)


def test_geronimus(rng):
    K = 14
    for n in range(1, 6):
        w = random_word(rng, n, rmax=0.7)
        c = opuc.bernstein_szego_moments(opuc.szego_forward(w).phi(n), K)
        F = np.concatenate([[1.0], 2 * c[1:]])
        # f = (F - 1) / (z (F + 1)) as a power series
        num = F[1:]
        den = F.copy()
        den[0] += 1
        m = len(num)
        q = np.zeros(m, dtype=complex)
        for k in range(m):
            q[k] = (num[k] - np.dot(q[:k], den[k:0:-1])) / den[0]
        got = schur.schur_algorithm_series(q, n + 3)
        assert np.allclose(got[:n], w.alphas, atol=1e-7)
        assert np.allclose(got[n:], 0, atol=1e-7)
