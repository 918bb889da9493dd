"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from palfkit import _pykernels, words
from palfkit.psl2 import rho

try:
    from palfkit import _ckernels
except ImportError:
    _ckernels = None


def smith_inputs(count, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(3, 6)
        out.append([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
    return out


def sanov_inputs(count, z, seed=0, max_len=12):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        w = words.reduce(rng.choice((1, -1, 2, -2)) for _ in range(rng.randint(4, max_len)))
        m = rho(w, z)
        out.append((m.a, m.b, m.c, m.d, z))
    return out


def run_smith(mod, inputs):
    for m in inputs:
        try:
            mod.smith(m)
        except OverflowError:
            _pykernels.smith(m)


def run_sanov(mod, inputs):
    for args in inputs:
        try:
            mod.sanov_descent(*args)
        except OverflowError:
            _pykernels.sanov_descent(*args)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    cases = [("smith 3x3..6x6", run_smith, smith_inputs(500)),
             ("sanov z=2", run_sanov, sanov_inputs(2000, 2)),
             ("sanov z=5", run_sanov, sanov_inputs(2000, 5, max_len=8))]
    print(f"{'kernel':<18}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn, inputs in cases:
        py = min(timeit.repeat(lambda: fn(_pykernels, inputs), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:<18}{py:>12.1f}{'n/a':>12}{'':>10}")
            continue
        cy = min(timeit.repeat(lambda: fn(_ckernels, inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<18}{py:>12.1f}{cy:>12.1f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
