import numpy as np
import pytest

from poncelet import opuc


def random_alphas(rng, n, rmax=0.9):
    r = rmax * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def random_word(rng, n, rmax=0.9, terminal=False):
    lam = np.exp(2j * np.pi * rng.uniform()) if terminal else None
    return opuc.VerblunskyWord(tuple(random_alphas(rng, n, rmax)), lam)


def random_unimodular(rng, k=None):
    return np.exp(2j * np.pi * rng.uniform(size=k))


def cyclic_sorted(zs):
    zs = np.asarray(zs)
    return zs[np.argsort(np.mod(np.angle(zs), 2 * np.pi))]


def set_distance(a, b):
    d = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)
