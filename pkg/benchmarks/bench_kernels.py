"""Time the numpy and compiled kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 20]
"""
import argparse
import timeit

import numpy as np

from poncelet import kernels


def _inputs(n, rng):
    c = np.concatenate([[1.0], rng.normal(size=n) + 1j * rng.normal(size=n)]).astype(complex)
    z = rng.normal(size=512) + 1j * rng.normal(size=512)
    M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    H = (M + M.conj().T) / 2
    r = np.abs(c[1:]).max() + 1
    z0 = r * np.exp(2j * np.pi * (np.arange(n) + 0.25) / n)
    return c, z, H, M, z0


def bench(repeat=20, sizes=(4, 8, 16)):
    rng = np.random.default_rng(1)
    rows = []
    backs = kernels.backends()
    for n in sizes:
        c, z, H, M, z0 = _inputs(n, rng)
        cases = {
            "horner": lambda k: k.horner(c, z),
            "aberth": lambda k: k.aberth(c, z0, 500, 1e-14),
            "jacobi_eigh": lambda k: k.jacobi_eigh(H, 1e-14, 60),
            "jacobi_svd": lambda k: k.jacobi_svd(M, 1e-15, 60),
        }
        for name, fn in cases.items():
            t = {}
            for b, mod in backs.items():
                t[b] = min(timeit.repeat(lambda: fn(mod), number=5, repeat=repeat)) / 5
            rows.append((name, n, t))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    rows = bench(args.repeat)
    backs = list(rows[0][2])
    print(f"{'kernel':<12} {'n':>3} " + " ".join(f"{b + ' [ms]':>14}" for b in backs) + "   speedup")
    for name, n, t in rows:
        sp = t["python"] / t["cython"] if "cython" in t else float("nan")
        print(f"{name:<12} {n:>3} " + " ".join(f"{1e3 * t[b]:>14.4f}" for b in backs) + f"   {sp:7.1f}x")


if __name__ == "__main__":
    main()
