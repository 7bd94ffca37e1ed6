"""Compare the numba and numpy backends of the two modular kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 300]

Shapes follow the interpolation workload: points in 24 variables evaluated
on cubic monomials, then a row reduction mod p of the resulting matrix.
Both backends must return identical results; the script exits 1 otherwise.
"""

import argparse
import itertools
import sys
import time

import numpy as np

from lievariety import _kernels
from lievariety.arith import PRIMES

P = PRIMES[0]


def cubic_exponents(nvars: int, count: int, rng) -> np.ndarray:
    monos = list(itertools.combinations_with_replacement(range(nvars), 3))
    pick = rng.choice(len(monos), size=min(count, len(monos)), replace=False)
    exps = np.zeros((len(pick), nvars), dtype=np.int64)
    for row, k in enumerate(sorted(pick)):
        for v in monos[k]:
            exps[row, v] += 1
    return exps


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=300, help="number of monomials (columns)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if not _kernels.HAVE_NUMBA:
        print("numba is not available (or LIEVARIETY_NUMBA=0); nothing to compare")
        return 0
    rng = np.random.default_rng(args.seed)
    exps = cubic_exponents(24, args.size, rng)
    pts = rng.integers(-20, 21, size=(int(1.5 * args.size), 24), dtype=np.int64)

    results = {}
    for backend in ("numba", "numpy"):
        # first call outside the timing: numba compiles (or loads its cache) here
        M = _kernels.eval_monomials_mod(exps, pts, P, backend=backend)
        R, piv = _kernels.rref_mod(M, P, backend=backend)
        t_eval = best_of(lambda: _kernels.eval_monomials_mod(exps, pts, P, backend=backend), args.repeat)
        t_rref = best_of(lambda: _kernels.rref_mod(M, P, backend=backend), args.repeat)
        results[backend] = (M, R[:len(piv)], piv, t_eval, t_rref)

    (Mn, Rn, pn, en, rn), (Mp, Rp, pp, ep, rp) = results["numba"], results["numpy"]
    same = np.array_equal(Mn, Mp) and np.array_equal(pn, pp) and np.array_equal(Rn, Rp)
    print(f"matrix {Mn.shape[0]} x {Mn.shape[1]}, rank {len(pn)}, p = {P}")
    print(f"{'kernel':<20}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    print(f"{'eval_monomials_mod':<20}{en:>12.4f}{ep:>12.4f}{ep / en:>10.1f}")
    print(f"{'rref_mod':<20}{rn:>12.4f}{rp:>12.4f}{rp / rn:>10.1f}")
    print("results identical" if same else "RESULTS DIFFER")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
