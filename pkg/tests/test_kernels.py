import random

import pytest

from oracles import mat_mul_general, minor_gcd_divisors
from palfkit import _pykernels, kernels, words
from palfkit.psl2 import rho

ck = pytest.importorskip("palfkit._ckernels") if kernels.BACKEND == "cython" else None


def _check_smith(mod, rows):
    u, d, v = mod.smith(rows)
    assert mat_mul_general(mat_mul_general(u, rows), v) == [list(r) for r in d]
    k = min(len(rows), len(rows[0]))
    diag = [d[i][i] for i in range(k)]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    assert diag == minor_gcd_divisors(rows)


@pytest.mark.parametrize("seed", range(200))
def test_python_smith(seed):
    rng = random.Random(seed)
    rows = [[rng.randint(-4, 4) for _ in range(rng.randint(1, 4))]]
    rows += [[rng.randint(-4, 4) for _ in rows[0]] for _ in range(rng.randint(0, 3))]
    _check_smith(_pykernels, rows)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="extension not built")
@pytest.mark.parametrize("seed", range(200))
def test_backends_agree_on_smith(seed):
    rng = random.Random(1000 + seed)
    nr, nc = rng.randint(1, 6), rng.randint(1, 6)
    rows = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
    try:
        got = ck.smith(rows)
    except OverflowError:
        # transforms outgrew the compiled range; the dispatcher must fall back
        got = kernels.smith(rows)
    assert got == _pykernels.smith(rows)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="extension not built")
@pytest.mark.parametrize("z", [2, 3, 5])
def test_backends_agree_on_sanov(z):
    rng = random.Random(z)
    for _ in range(300):
        w = words.reduce(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 9)))
        m = rho(w, z)
        assert ck.sanov_descent(m.a, m.b, m.c, m.d, z) == _pykernels.sanov_descent(m.a, m.b, m.c, m.d, z)
    for _ in range(300):
        a, b = rng.randint(-20, 20), rng.randint(-20, 20)
        args = (a, b, 0, 1) if a == 1 else (1, b, 0, 1)
        assert ck.sanov_descent(*args, z) == _pykernels.sanov_descent(*args, z)


def test_overflow_falls_back():
    big = 10 ** 30
    u, d, v = kernels.smith([[big, 0], [0, 3 * big]])
    assert [d[0][0], d[1][1]] == [big, 3 * big]
    m = rho((1,) * 40 + (2,) * 40, 7)
    assert kernels.sanov_descent(m.a, m.b, m.c, m.d, 7) == [(1, 40), (2, 40)]


def test_pure_python_switch():
    import os
    import subprocess
    import sys
    env = dict(os.environ, PALFKIT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from palfkit import kernels, kirby; print(kernels.BACKEND, kirby.smith_normal_form([[2,0],[0,3]]).divisors)"],
        env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split(maxsplit=1) == ["python", "(1, 6)\n"]
