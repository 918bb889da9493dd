"""Integer homology of the PALF total space and its boundary.

A factorization on the page S_{0,n+1} gives a handle decomposition with
``n`` 1-handles (one per non-outer hole) and one (-1)-framed 2-handle per
vanishing cycle.  The boundary map ``A`` has the hole class of cycle j as
column j.  Surgering the 1-handles gives a 2-handlebody whose
intersection form is ``[[0, A], [A^T, B]]``; on a planar page distinct
cycles pushed to distinct pages do not link, so ``B = -I``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from palfkit import kernels
from palfkit.curves import Curve, Unsupported, homology_vector, is_boundary


class PreconditionFailed(ValueError):
    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


class CurveUnsupported(Unsupported):
    pass


Matrix = tuple  # tuple of row tuples


def _matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


@dataclass(frozen=True)
class SmithForm:
    divisors: tuple
    left: Matrix  # U
    right: Matrix  # V, with U * M * V = diag(divisors)
    shape: tuple


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    rows = _matrix(rows)
    nr = len(rows)
    nc = len(rows[0]) if nr else (ncols or 0)
    if nr == 0 or nc == 0:
        eye = lambda k: tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        return SmithForm((), eye(nr), eye(nc), (nr, nc))
    u, d, v = kernels.smith(rows)
    divisors = tuple(d[i][i] for i in range(min(nr, nc)))
    return SmithForm(divisors, _matrix(u), _matrix(v), (nr, nc))


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple = ()

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


def cokernel(rows: Sequence[Sequence[int]], nrows: int | None = None, ncols: int | None = None) -> AbelianGroup:
    """``Z^nrows / image`` of the matrix."""
    rows = _matrix(rows)
    n = len(rows) if nrows is None else nrows
    snf = smith_normal_form(rows, ncols)
    nonzero = [d for d in snf.divisors if d]
    return AbelianGroup(n - len(nonzero), tuple(d for d in nonzero if d > 1))


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class ChainPresentation:
    n: int  # 1-handles
    m: int  # 2-handles
    A: Matrix  # n x m boundary map

    def columns(self) -> list[tuple]:
        return [tuple(self.A[i][j] for i in range(self.n)) for j in range(self.m)]


def chain_from_tuple(t, page_holes: int | None = None) -> ChainPresentation:
    """Boundary map of the handle decomposition attached to a factorization."""
    cycles: Sequence[Curve] = t.cycles if hasattr(t, "cycles") else tuple(t)
    holes = page_holes if page_holes is not None else (
        t.surface.holes if hasattr(t, "surface") else cycles[0].holes)
    cols = []
    for c in cycles:
        if c.holes != holes:
            raise CurveUnsupported(f"curve {c} is not on the {holes}-holed page")
        cols.append(homology_vector(c))
    n = holes - 1
    A = tuple(tuple(col[i] for col in cols) for i in range(n))
    return ChainPresentation(n, len(cols), A)


def h1_total_space(chain: ChainPresentation) -> AbelianGroup:
    return cokernel(chain.A, nrows=chain.n, ncols=chain.m)


def euler_char(chain: ChainPresentation) -> int:
    return 1 - chain.n + chain.m


@dataclass(frozen=True)
class BlockForm:
    Q: Matrix

    @property
    def size(self) -> int:
        return len(self.Q)


def block_form(chain: ChainPresentation) -> BlockForm:
    n, m = chain.n, chain.m
    rows = []
    for i in range(n):
        rows.append((0,) * n + chain.A[i])
    for j in range(m):
        rows.append(tuple(chain.A[i][j] for i in range(n)) + tuple(-int(k == j) for k in range(m)))
    return BlockForm(tuple(rows))


def boundary_h1(chain: ChainPresentation) -> AbelianGroup:
    return cokernel(block_form(chain).Q)


@dataclass(frozen=True)
class HomologySphereReport:
    is_homology_sphere: bool
    n: int
    m: int
    det_a: int | None
    h1_total: AbelianGroup
    h1_boundary: AbelianGroup
    snf_a: tuple
    snf_q: tuple

    @property
    def consistent(self) -> bool:
        """The two presentations must agree on triviality."""
        return self.h1_boundary.is_trivial == self.is_homology_sphere


def is_homology_sphere(t, page_holes: int | None = None) -> HomologySphereReport:
    """Boundary is a homology sphere iff there are n cycles and coker(A) = 0."""
    chain = chain_from_tuple(t, page_holes)
    h1 = h1_total_space(chain)
    hb = boundary_h1(chain)
    det_a = integer_det(chain.A) if chain.n == chain.m else None
    verdict = chain.n == chain.m and h1.is_trivial
    report = HomologySphereReport(
        verdict, chain.n, chain.m, det_a, h1, hb,
        smith_normal_form(chain.A, chain.m).divisors,
        smith_normal_form(block_form(chain).Q).divisors,
    )
    if not report.consistent:
        raise AssertionError(f"H_1 presentations disagree for {t}")
    return report


def cancellation_pivots(A: Sequence[Sequence[int]]) -> tuple[list[tuple[int, int]], Matrix]:
    """Greedily cancel 1-handle/2-handle pairs through ±1 entries.

    Each pivot ``(row, col)`` removes a 1-handle and the 2-handle running
    over it once; the other 2-handles are slid off the cancelled 1-handle.
    Returns the pivots (original indices) and the residual matrix.
    """
    rows = list(range(len(A)))
    cols = list(range(len(A[0]) if A else 0))
    m = {(i, j): A[i][j] for i in rows for j in cols}
    pivots = []
    while len(rows) > 1:
        pick = None
        for j in cols:
            for i in rows:
                if abs(m[i, j]) == 1:
                    pick = (i, j)
                    break
            if pick:
                break
        if pick is None:
            break
        pi, pj = pick
        e = m[pi, pj]
        for k in cols:
            if k != pj and m[pi, k]:
                f = m[pi, k] * e  # e = ±1 so e^-1 = e
                for i in rows:
                    m[i, k] -= f * m[i, pj]
        rows.remove(pi)
        cols.remove(pj)
        pivots.append(pick)
    residual = tuple(tuple(m[i, j] for j in cols) for i in rows)
    return pivots, residual


@dataclass(frozen=True)
class FillingReport:
    case: int
    det_a: int
    h1_total: AbelianGroup
    euler_characteristic: int
    pivots: tuple
    residual: Matrix
    handles_after_cancellation: tuple  # (0-handles, 1-handles, 2-handles)
    verdict: str


DICHOTOMY = "D4-or-Mazur dichotomy holds: X is D^4 if the boundary is S^3, otherwise of Mazur type"


def filling_verdict(t) -> FillingReport:
    """Handle-level summary of the filling given by a length-3 factorization on S_{0,4}."""
    cycles = t.cycles if hasattr(t, "cycles") else tuple(t)
    holes = t.surface.holes if hasattr(t, "surface") else cycles[0].holes
    if holes != 4:
        raise PreconditionFailed("page", f"page must be the 4-holed sphere, got {holes} holes")
    if len(cycles) != 3:
        raise PreconditionFailed("length", f"need 3 vanishing cycles, got {len(cycles)}")
    hs = is_homology_sphere(t, 4)
    if not hs.is_homology_sphere:
        raise PreconditionFailed(
            "homology_sphere", f"not a homology sphere (det A = {hs.det_a}, H_1(X) = {hs.h1_total})")
    chain = chain_from_tuple(t, 4)
    chi = euler_char(chain)
    pivots, residual = cancellation_pivots(chain.A)
    if len(pivots) != 2 or residual not in (((1,),), ((-1,),)):
        raise AssertionError(f"unimodular 3x3 boundary map did not reduce to ±1: {residual}")
    nb = sum(is_boundary(c) for c in cycles)
    return FillingReport(
        case={3: 1, 2: 2, 1: 3}.get(nb, 0),
        det_a=hs.det_a,
        h1_total=hs.h1_total,
        euler_characteristic=chi,
        pivots=tuple(pivots),
        residual=residual,
        handles_after_cancellation=(1, chain.n - len(pivots), chain.m - len(pivots)),
        verdict=DICHOTOMY,
    )
