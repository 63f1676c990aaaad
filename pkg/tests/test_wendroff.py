import numpy as np
import pytest

from conftest import random_word, set_distance
from poncelet import opuc, poly, popuc, wendroff
from poncelet.errors import (
    DegenerateParametersError,
    InputError,
    NotRealizableError,
    ProductConditionError,
)

CUBE = np.exp(2j * np.pi * np.arange(3) / 3)
CUBE_NEG = -CUBE


def test_interlace_examples(rng):
    assert wendroff.interlace_check(wendroff.CircularConfiguration(CUBE, CUBE_NEG))
    bad = np.exp(1j * np.array([0.1, 0.2, 3.0]))
    assert not wendroff.interlace_check(wendroff.CircularConfiguration(CUBE, bad))
    for n in range(1, 7):
        w = random_word(rng, n)
        cfg = wendroff.CircularConfiguration(popuc.popuc_zeros(w, 1).zeros, popuc.popuc_zeros(w, 1j).zeros)
        assert wendroff.interlace_check(cfg)


def test_configuration_validation():
    with pytest.raises(InputError):
        wendroff.CircularConfiguration([1, 1j], [-1])
    with pytest.raises(InputError):
        wendroff.CircularConfiguration([1, 1], [-1, 1j])
    with pytest.raises(InputError):
        wendroff.CircularConfiguration([1, 0.5], [-1, 1j])


def test_two_popuc_trivial():
    word, lam, mu = wendroff.reconstruct_from_two_popuc(wendroff.CircularConfiguration(CUBE, CUBE_NEG))
    assert np.allclose(word.alphas, 0, atol=1e-14)
    assert abs(lam - 1) < 1e-14 and abs(mu + 1) < 1e-14


def test_two_popuc_roundtrip(rng):
    for n in range(1, 8):
        w = random_word(rng, n)
        mu = np.exp(1j)
        cfg = wendroff.CircularConfiguration(popuc.popuc_zeros(w, 1).zeros, popuc.popuc_zeros(w, mu).zeros)
        got, lam, mu2 = wendroff.reconstruct_from_two_popuc(cfg)
        assert np.max(np.abs(got.alphas - w.alphas)) < 1e-8
        assert abs(lam - 1) < 1e-10 and abs(mu2 - mu) < 1e-10


def test_polynomial_identities(rng):
    for n in range(1, 7):
        w = random_word(rng, n)
        a, b = popuc.popuc_zeros(w, 1j).zeros, popuc.popuc_zeros(w, -0.6 + 0.8j).zeros
        Q, R, P, lam, mu = wendroff.two_popuc_polynomials(a, b)
        assert np.max(np.abs(poly.star(Q, n + 1) + lam * Q)) < 1e-12
        assert np.max(np.abs(poly.star(R, n + 1) + mu * R)) < 1e-12
        Ps = poly.pad(poly.star(P, n), n + 1)
        assert np.max(np.abs(poly.shift(P) - np.conj(lam) * Ps - Q)) < 1e-11
        assert np.max(np.abs(poly.shift(P) - np.conj(mu) * Ps - R)) < 1e-11


def test_equal_parameters_rejected():
    # same zero set twice -> λ == μ
    z = np.exp(1j * np.array([0.3, 2.0, 4.0]))
    with pytest.raises(DegenerateParametersError):
        wendroff.reconstruct_from_two_popuc(wendroff.CircularConfiguration(z, z), check_interlacing=False)


def test_perturbed_rejected(rng):
    w = random_word(rng, 4)
    a = popuc.popuc_zeros(w, 1).zeros
    b = popuc.popuc_zeros(w, 1j).zeros.copy()
    # move one second-set point into the neighbouring arc
    b[0] = a[1] * np.exp(0.5j * np.angle(a[2] / a[1]))
    with pytest.raises(NotRealizableError):
        wendroff.reconstruct_from_two_popuc(wendroff.CircularConfiguration(a, b))


def test_second_kind_trivial():
    word, lam = wendroff.reconstruct_second_kind(wendroff.CircularConfiguration(CUBE, CUBE_NEG))
    assert np.allclose(word.alphas, 0, atol=1e-14) and abs(lam - 1) < 1e-14
    rot = CUBE * np.exp(1j * np.pi / 3 + 0.1j)
    rot = rot * np.exp(-1j * np.angle(np.prod(rot)) / 3)
    with pytest.raises(ProductConditionError):
        wendroff.reconstruct_second_kind(wendroff.CircularConfiguration(CUBE, rot))


def _second_kind_cfg(w):
    lam = w.terminal
    a = popuc.popuc_zeros(w.without_terminal(), lam).zeros
    b = popuc.popuc_zeros(w.without_terminal().negated(), -lam).zeros
    return wendroff.CircularConfiguration(a, b)


def test_second_kind_roundtrip(rng):
    for n in range(1, 8):
        w = random_word(rng, n, terminal=True)
        cfg = _second_kind_cfg(w)
        assert wendroff.interlace_check(cfg)
        got, lam = wendroff.reconstruct_second_kind(cfg)
        assert np.max(np.abs(got.alphas - w.alphas)) < 1e-8
        assert abs(lam - w.terminal) < 1e-10


def test_masses(rng):
    for n in range(1, 7):
        cfg = _second_kind_cfg(random_word(rng, n, terminal=True))
        w, y = cfg.first, cfg.second
        c = wendroff.caratheodory_masses(w, y)
        assert abs(c.sum() - 1) < 1e-10
        # analytic residues at the poles
        num, _ = wendroff.quasi_caratheodory(w, y)
        ana = [poly.polyval(num, wj) / (2 * np.prod([1 - np.conj(wk) * wj for wk in w if wk != wj])) for wj in w]
        assert np.allclose(c, ana, atol=1e-10)
        # f is purely imaginary on the circle away from its poles
        num, den = wendroff.quasi_caratheodory(w, y)
        probe = np.exp(1j * (np.linspace(0, 2 * np.pi, 64, endpoint=False) + 1e-3))
        d = np.min(np.abs(probe[:, None] - w[None, :]), axis=1)
        probe = probe[d > 1e-3]
        f = poly.polyval(num, probe) / poly.polyval(den, probe)
        assert np.max(np.abs(f.real)) < 1e-9


def test_second_kind_interlace(rng):
    for n in range(1, 8):
        assert wendroff.interlace_check(_second_kind_cfg(random_word(rng, n, terminal=True)))
