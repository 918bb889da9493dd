import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import leibniz_det, mat_mul_general, minor_gcd_divisors
from palfkit.curves import CURVE_A, CURVE_B, Boundary, HoleSet, Surface
from palfkit.factor import TwistTuple
from palfkit.kirby import (
    AbelianGroup, PreconditionFailed, block_form, boundary_h1, cancellation_pivots, chain_from_tuple,
    cokernel, euler_char, filling_verdict, h1_total_space, integer_det, is_homology_sphere,
    smith_normal_form,
)

D1, D2, D3 = Boundary(1), Boundary(2), Boundary(3)
ANNULUS_CORE = HoleSet(frozenset({1}), 2)
RP3 = TwistTuple((ANNULUS_CORE, ANNULUS_CORE), Surface(2))

small = st.integers(-3, 3)
matrices = st.integers(1, 4).flatmap(
    lambda nr: st.integers(1, 4).flatmap(
        lambda nc: st.lists(st.lists(small, min_size=nc, max_size=nc), min_size=nr, max_size=nr)))


def test_chain_examples():
    assert chain_from_tuple(TwistTuple.of(D1, D2, D3)).A == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    cols = chain_from_tuple(TwistTuple.of(D1, CURVE_B, CURVE_A)).columns()
    assert cols == [(1, 0, 0), (0, 1, 1), (1, 1, 0)]
    assert chain_from_tuple(RP3).A == ((1, 1),)


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).divisors == (1, 6)
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).divisors == (1, 1, 1)
    assert smith_normal_form([[1, 1]]).divisors == (1,)


def test_h1_examples():
    assert h1_total_space(chain_from_tuple(TwistTuple.of(D1, D2, D3))).is_trivial
    assert h1_total_space(chain_from_tuple(TwistTuple.of(D1, CURVE_B, CURVE_A))).is_trivial
    assert h1_total_space(chain_from_tuple(TwistTuple.of(D1, D2, CURVE_A))) == AbelianGroup(1)


def test_euler_char_examples():
    from palfkit.kirby import ChainPresentation
    assert euler_char(ChainPresentation(3, 3, ())) == 1
    assert euler_char(ChainPresentation(1, 2, ())) == 2
    assert euler_char(ChainPresentation(3, 0, ())) == -2


def test_block_form_examples():
    assert block_form(chain_from_tuple(RP3)).Q == ((0, 1, 1), (1, -1, 0), (1, 0, -1))
    one = chain_from_tuple(TwistTuple((ANNULUS_CORE,), Surface(2)))
    assert block_form(one).Q == ((0, 1), (1, -1))
    empty = chain_from_tuple(TwistTuple((), Surface(4)))
    assert block_form(empty).Q == ((0, 0, 0),) * 3


def test_boundary_h1_examples():
    assert boundary_h1(chain_from_tuple(RP3)) == AbelianGroup(0, (2,))
    assert boundary_h1(chain_from_tuple(TwistTuple.of(D1, D2, D3))).is_trivial
    assert boundary_h1(chain_from_tuple(TwistTuple.of(D1, D2))).free_rank >= 1


def test_homology_sphere_examples():
    r = is_homology_sphere(TwistTuple.of(D1, CURVE_B, CURVE_A))
    assert r.is_homology_sphere and r.det_a == -1
    r = is_homology_sphere(TwistTuple.of(D1, D2, CURVE_A))
    assert not r.is_homology_sphere and r.det_a == 0
    r = is_homology_sphere(RP3, 2)
    assert not r.is_homology_sphere and r.h1_boundary.order == 2


def test_filling_examples():
    f = filling_verdict(TwistTuple.of(D1, CURVE_B, CURVE_A))
    assert "dichotomy holds" in f.verdict and f.case == 3
    assert f.euler_characteristic == 1 and f.handles_after_cancellation == (1, 1, 1)
    assert filling_verdict(TwistTuple.of(D1, D2, D3)).case == 1
    with pytest.raises(PreconditionFailed) as exc:
        filling_verdict(TwistTuple.of(CURVE_A, CURVE_A, CURVE_B))
    assert exc.value.check == "homology_sphere"
    with pytest.raises(PreconditionFailed) as exc:
        filling_verdict(TwistTuple.of(D1, CURVE_B))
    assert exc.value.check == "length"
    with pytest.raises(PreconditionFailed) as exc:
        filling_verdict(RP3)
    assert exc.value.check == "page"


@given(matrices)
@settings(max_examples=300)
def test_snf_matches_minor_oracle(m):
    s = smith_normal_form(m)
    assert list(s.divisors) == minor_gcd_divisors(m)
    assert abs(leibniz_det(s.left)) == 1 and abs(leibniz_det(s.right)) == 1
    d = mat_mul_general(mat_mul_general(s.left, m), s.right)
    assert all(d[i][j] == (s.divisors[i] if i == j else 0) for i in range(len(d)) for j in range(len(d[0])))


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(m):
    assert integer_det(m) == leibniz_det(m)


def _hole_curves(holes):
    n = holes - 1
    return [HoleSet(frozenset(s), holes) for k in range(1, n + 1) for s in itertools.combinations(range(1, n + 1), k)]


@pytest.mark.parametrize("holes", [2, 3, 4])
def test_boundary_order_is_det_squared(holes):
    curves = _hole_curves(holes)
    n = holes - 1
    for cycles in itertools.product(curves, repeat=n):
        chain = chain_from_tuple(TwistTuple(cycles, Surface(holes)))
        hb = boundary_h1(chain)
        det = leibniz_det([list(r) for r in chain.A])
        assert (hb.order is not None) == (det != 0)
        if det:
            assert hb.order == det * det


def test_cancellation_residual_is_unit_for_unimodular():
    rng = random.Random(11)
    curves = _hole_curves(4) + [Boundary(1), Boundary(2), Boundary(3)]
    for _ in range(300):
        cycles = tuple(rng.choice(curves) for _ in range(3))
        chain = chain_from_tuple(TwistTuple(cycles, Surface(4)))
        if abs(integer_det(chain.A)) == 1:
            pivots, residual = cancellation_pivots(chain.A)
            assert len(pivots) == 2 and residual in (((1,),), ((-1,),))


def test_cokernel_of_zero_columns():
    assert cokernel([(), (), ()], nrows=3, ncols=0) == AbelianGroup(3)
    assert str(AbelianGroup(1, (2, 4))) == "Z/2 + Z/4 + Z"
