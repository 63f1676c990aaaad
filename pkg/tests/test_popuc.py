import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_word
from poncelet import opuc, poly, popuc, schur
from poncelet.errors import InputError, PoleError

CUBE = np.exp(2j * np.pi * np.arange(3) / 3)


def interlace(a, b):
    ang = np.mod(np.angle(np.concatenate([a, b])), 2 * np.pi)
    tag = np.concatenate([np.zeros(len(a)), np.ones(len(b))])[np.argsort(ang)]
    return bool(np.all(tag != np.roll(tag, 1)))


def test_trivial_frames():
    f = popuc.popuc_zeros(opuc.VerblunskyWord((0, 0)), 1)
    assert np.allclose(f.zeros, CUBE, atol=1e-14)
    assert np.allclose(f.weights, 1 / 3) and np.allclose(f.christoffel, 1 / 3)
    f = popuc.popuc_zeros(opuc.VerblunskyWord((0, 0)), -1)
    assert np.allclose(f.zeros ** 3, -1, atol=1e-14)


def test_lambda_required():
    with pytest.raises(InputError):
        popuc.popuc_zeros(opuc.VerblunskyWord((0.1,)))
    with pytest.raises(InputError):
        popuc.popuc_zeros(opuc.VerblunskyWord((0.1,)), 0.5)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 2**32 - 1))
def test_frame_invariants(n, seed):
    r = np.random.default_rng(seed)
    w = random_word(r, n, rmax=0.95, terminal=True)
    f = popuc.popuc_zeros(w)
    assert abs(f.weights.sum() - 1) < 1e-11
    assert np.allclose(np.abs(f.zeros), 1, atol=1e-11)
    ang = np.mod(np.angle(f.zeros), 2 * np.pi)
    assert np.all(np.diff(ang) > 0)
    assert abs(popuc.lambda_from_zeros(f.zeros) - w.terminal) < 1e-10
    P = opuc.popuc(w)
    assert np.max(np.abs(poly.polyval(P, f.zeros))) < 1e-10


def test_interlacing(rng):
    for n in range(1, 9):
        w = random_word(rng, n)
        a = popuc.popuc_zeros(w, 1).zeros
        b = popuc.popuc_zeros(w, 1j).zeros
        assert interlace(a, b)


def test_winding(rng):
    for n in range(1, 8):
        w = random_word(rng, n, rmax=0.95)
        pm = popuc._PhaseMap(w)
        th = np.linspace(0, 2 * np.pi, 20001)
        ph = np.unwrap(np.angle(pm.value(th)))
        assert abs((ph[-1] - ph[0]) - 2 * np.pi * (n + 1)) < 1e-8


def test_weight_formulas_agree(rng):
    for n in range(1, 9):
        w = random_word(rng, n, terminal=True)
        f = popuc.popuc_zeros(w)
        m2 = popuc.eigenvector_weights(w, w.terminal, f.zeros)
        m3 = popuc.gorkin_weights(w, f.zeros)
        assert np.max(np.abs(f.weights - m2)) < 1e-9
        assert np.max(np.abs(f.weights - m3)) < 1e-9
        assert abs(np.sum(1 / f.christoffel * f.christoffel) - (n + 1)) < 1e-12


def test_m_function_examples():
    d = opuc.UnitCircleMeasure([1.0], [1.0])
    assert abs(popuc.m_function(d, 0.3j) - 1 / (0.3j - 1)) < 1e-15
    u = opuc.UnitCircleMeasure(CUBE, np.ones(3) / 3)
    z = 0.4 + 0.7j
    assert abs(popuc.m_function(u, z) - z**2 / (z**3 - 1)) < 1e-14
    with pytest.raises(PoleError):
        popuc.m_function(u, 1.0)


def test_m_function_resolvent(rng):
    for n in range(1, 8):
        w = random_word(rng, n, terminal=True)
        f = popuc.popuc_zeros(w)
        a = popuc.m_function(f, 2.0)
        b = popuc.resolvent_entry(w, w.terminal, 2.0)
        assert abs(a - b) < 1e-9 * (1 + abs(a))


def test_nu_examples():
    assert np.allclose(popuc.nu_verblunsky(popuc.popuc_zeros(opuc.VerblunskyWord((0, 0)), 1)).all_coefficients(), [0, 0, 1])
    w = opuc.VerblunskyWord((0.5, 1j / 3), 1j)
    nu = popuc.nu_verblunsky(popuc.popuc_zeros(w))
    assert np.allclose(nu.all_coefficients(), [-1 / 3, -0.5j, 1j], atol=1e-12)
    assert np.allclose(nu.all_coefficients(), schur.schur_params_closed_form(w), atol=1e-15)


def test_nu_roundtrip(rng):
    for n in range(1, 7):
        w = random_word(rng, n, terminal=True)
        f = popuc.popuc_zeros(w)
        got = opuc.verblunsky_from_measure(f.measure(), "moments").all_coefficients()
        assert np.max(np.abs(got - popuc.nu_closed_form(w, w.terminal).all_coefficients())) < 1e-9


def test_frames_match_single(rng):
    w = random_word(rng, 5)
    lams = np.exp(2j * np.pi * np.arange(7) / 7)
    for lam, f in zip(lams, popuc.popuc_frames(w, lams)):
        g = popuc.popuc_zeros(w, lam)
        assert np.allclose(f.zeros, g.zeros, atol=1e-13)
        assert np.allclose(f.weights, g.weights, atol=1e-13)
