"""Isotopy classes of simple closed curves on planar surfaces.

On the 4-holed sphere every essential non-boundary curve is a rational
slope ``p/q`` (via the pillowcase double cover), and two slopes meet
``2|ps - qr|`` times.  Holes are labelled ``1..n`` with hole ``n`` the
outer one; H_1 has basis d_1..d_{n-1} and d_n = -(d_1 + ... + d_{n-1}).

For pages with more holes only boundary curves and explicit hole sets
are modelled, which is all the homology engine needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union


class CurveError(ValueError):
    pass


class ZeroVector(CurveError):
    pass


class Unsupported(CurveError):
    pass


@dataclass(frozen=True, order=True)
class Surface:
    """The sphere with ``holes`` boundary components."""

    holes: int = 4

    def __post_init__(self) -> None:
        if self.holes < 2:
            raise CurveError(f"a planar page needs at least 2 holes, got {self.holes}")


SIGMA04 = Surface(4)


def canonical_slope(p: int, q: int) -> tuple[int, int]:
    """Reduce ``(p, q)`` to lowest terms with ``q >= 0`` and ``1/0`` for q = 0."""
    if p == 0 and q == 0:
        raise ZeroVector("(0, 0) is not a slope")
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


@dataclass(frozen=True, order=True)
class Boundary:
    """Curve parallel to boundary component ``index``."""

    index: int
    holes: int = 4

    def __post_init__(self) -> None:
        Surface(self.holes)
        if not 1 <= self.index <= self.holes:
            raise CurveError(f"boundary index {self.index} outside 1..{self.holes}")

    @property
    def surface(self) -> Surface:
        return Surface(self.holes)

    def __str__(self) -> str:
        return f"d{self.index}"


@dataclass(frozen=True, order=True)
class Slope:
    """Essential non-boundary curve on the 4-holed sphere, stored canonically."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if (self.p, self.q) != canonical_slope(self.p, self.q):
            raise CurveError(f"{self.p}/{self.q} is not in canonical form; use Slope.of")

    @classmethod
    def of(cls, p: int, q: int) -> Slope:
        return cls(*canonical_slope(p, q))

    @property
    def holes(self) -> int:
        return 4

    @property
    def surface(self) -> Surface:
        return SIGMA04

    @property
    def height(self) -> int:
        return max(abs(self.p), abs(self.q))

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True, order=True)
class HoleSet:
    """Homology-only curve on a general page, given by the holes it encloses.

    The side containing the outer hole is never stored: ``{1, 4}`` on the
    4-holed sphere is normalised to ``{2, 3}``.
    """

    enclosed: frozenset
    holes: int

    def __post_init__(self) -> None:
        Surface(self.holes)
        s = frozenset(int(i) for i in self.enclosed)
        full = frozenset(range(1, self.holes + 1))
        if not s or not s <= full:
            raise CurveError(f"hole set {sorted(s)} not a nonempty subset of 1..{self.holes}")
        if self.holes in s:
            s = full - s
        if not s:
            raise CurveError("hole set encloses every hole; the curve is inessential")
        object.__setattr__(self, "enclosed", s)

    @property
    def surface(self) -> Surface:
        return Surface(self.holes)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.enclosed)) + "}"


Curve = Union[Boundary, Slope, HoleSet]

# the three named curves of the lantern configuration
CURVE_A = Slope(1, 0)
CURVE_B = Slope(0, 1)
CURVE_C = Slope(1, 1)


def is_boundary(c: Curve) -> bool:
    if isinstance(c, Boundary):
        return True
    if isinstance(c, HoleSet):
        return len(c.enclosed) == 1 or len(c.enclosed) == c.holes - 1
    return False


def intersection_number(c1: Curve, c2: Curve) -> int:
    """Geometric intersection number; slopes meet ``2|ps - qr|`` times."""
    if c1.holes != c2.holes:
        raise CurveError("curves live on different surfaces")
    if is_boundary(c1) or is_boundary(c2):
        return 0
    if isinstance(c1, Slope) and isinstance(c2, Slope):
        return 2 * abs(c1.p * c2.q - c1.q * c2.p)
    raise Unsupported("intersection numbers need slope coordinates (4-holed sphere)")


def parity_class(c: Curve) -> tuple[int, int] | None:
    """Mod-2 reduction of a slope; ``None`` for boundary curves."""
    if isinstance(c, Boundary):
        return None
    if not isinstance(c, Slope):
        raise Unsupported("parity classes are defined for slopes only")
    return c.p % 2, c.q % 2


_PARITY_HOLES = {
    (1, 0): frozenset({1, 2}),
    (0, 1): frozenset({2, 3}),
    (1, 1): frozenset({1, 3}),
}


def hole_class(c: Curve) -> frozenset:
    """Holes enclosed by ``c`` on the side away from the outer hole."""
    if isinstance(c, Boundary):
        if c.index == c.holes:
            return frozenset(range(1, c.holes))
        return frozenset({c.index})
    if isinstance(c, HoleSet):
        return c.enclosed
    return _PARITY_HOLES[parity_class(c)]


def homology_vector(c: Curve) -> tuple[int, ...]:
    """Class of ``c`` in H_1 = Z^(n-1), sign fixed by the enclosed side."""
    s = hole_class(c)
    return tuple(1 if i in s else 0 for i in range(1, c.holes))


def slopes_up_to(height: int) -> list[Slope]:
    """All slopes with ``max(|p|, |q|) <= height``, sorted by (height, p, q)."""
    out = set()
    for q in range(0, height + 1):
        for p in range(-height, height + 1):
            if (p, q) != (0, 0) and gcd(p, q) == 1:
                out.add(Slope.of(p, q))
    return sorted(out, key=lambda s: (s.height, abs(s.p) + s.q, s.p, s.q))
