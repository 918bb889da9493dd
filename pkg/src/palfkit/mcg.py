"""Normal forms in the mapping class group of the 4-holed sphere.

Mod(S_{0,4}) is Z^4 x F_2: the four boundary twists are central and the
twists ``A = t_a`` (slope 1/0) and ``B = t_b`` (slope 0/1) generate a free
group.  An element is stored as its boundary exponent vector plus a freely
reduced word in A, B (letters ``±1``, ``±2``, see :mod:`palfkit.words`).

Slopes move under ``sigma``, which sends A to ``[[1,-2],[0,1]]`` and B to
``[[1,0],[2,1]]``; the twist along slope ``p/q`` maps to the transvection
``[[1+2pq, -2p^2], [2q^2, 1-2pq]]``.  The twist along slope 1/1 is pinned
by the lantern relation as ``A^-1 B^-1`` times all four boundary twists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from palfkit import words
from palfkit.curves import (
    CURVE_A,
    CURVE_B,
    CURVE_C,
    Boundary,
    Curve,
    Slope,
    Unsupported,
    parity_class,
)
from palfkit.psl2 import IDENTITY, ProjMatrix, generators

A, B = 1, 2


class ClassMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MappingClass:
    boundary: tuple = (0, 0, 0, 0)
    word: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary", tuple(int(x) for x in self.boundary))
        if len(self.boundary) != 4:
            raise ValueError("boundary exponents must be a 4-vector")
        object.__setattr__(self, "word", words.reduce(self.word))

    def __mul__(self, other: MappingClass) -> MappingClass:
        return multiply(self, other)

    def __pow__(self, k: int) -> MappingClass:
        return MappingClass(tuple(k * x for x in self.boundary), words.power(self.word, k))

    def inverse(self) -> MappingClass:
        return invert(self)

    def __str__(self) -> str:
        delta = "(" + ",".join(str(x) for x in self.boundary) + ")"
        return f"delta={delta} word={words.format_word(self.word)}"


IDENTITY_CLASS = MappingClass()
T_A = MappingClass(word=(A,))
T_B = MappingClass(word=(B,))
# lantern: t_c = t_a^-1 t_b^-1 t_d1 t_d2 t_d3 t_d4
T_C = MappingClass((1, 1, 1, 1), (-A, -B))


def letter(x: int) -> MappingClass:
    return MappingClass(word=(x,))


def multiply(g: MappingClass, h: MappingClass) -> MappingClass:
    """``g ∘ h`` (h acts first)."""
    return MappingClass(
        tuple(x + y for x, y in zip(g.boundary, h.boundary)),
        words.mul(g.word, h.word),
    )


def product(factors: Iterable[MappingClass]) -> MappingClass:
    out = IDENTITY_CLASS
    for f in factors:
        out = out * f
    return out


def invert(g: MappingClass) -> MappingClass:
    return MappingClass(tuple(-x for x in g.boundary), words.inverse(g.word))


def conjugate(g: MappingClass, h: MappingClass) -> MappingClass:
    """``g h g^-1``."""
    return g * h * invert(g)


def sigma(g: MappingClass | Sequence[int]) -> ProjMatrix:
    """Image in PSL(2, Z) governing the action on slopes."""
    word = g.word if isinstance(g, MappingClass) else g
    gens = generators(2)
    m = IDENTITY
    for x in word:
        m = m * gens[x]
    return m


def act_on_curve(g: MappingClass, c: Curve) -> Curve:
    if isinstance(c, Boundary):
        return c
    if not isinstance(c, Slope):
        raise Unsupported("mapping classes act on boundary curves and slopes only")
    return Slope.of(*sigma(g).apply(c.p, c.q))


_BASES = {(1, 0): CURVE_A, (0, 1): CURVE_B, (1, 1): CURVE_C}
# letters in tie-break order: A before B, positive before negative
_LETTERS = (A, -A, B, -B)


def _unapply(x: int, p: int, q: int) -> tuple[int, int]:
    # sigma(x)^-1 applied to (p, q)
    if x == A:
        return p + 2 * q, q
    if x == -A:
        return p - 2 * q, q
    if x == B:
        return p, q - 2 * p
    return p, q + 2 * p


@lru_cache(maxsize=65536)
def twist_conjugator_word(c: Curve, base: Curve) -> MappingClass:
    """A word ``w`` with ``act_on_curve(w, base) == c``, found by Farey descent.

    Each step strips the letter that strictly shrinks ``|p| + |q|``.
    """
    if not isinstance(c, Slope) or not isinstance(base, Slope):
        raise Unsupported("conjugator words exist only between slopes")
    if parity_class(c) != parity_class(base):
        raise ClassMismatch(f"{c} and {base} lie in different parity classes")
    letters: list[int] = []
    p, q = c.p, c.q
    while True:
        if Slope.of(p, q) == base:
            break
        size = abs(p) + abs(q)
        step = None
        for x in _LETTERS:
            p2, q2 = _unapply(x, p, q)
            if abs(p2) + abs(q2) < size:
                step = (x, p2, q2)
                break
        if step is None:
            break
        x, p, q = step
        letters.append(x)
    tail = Slope.of(p, q)
    if tail != base:
        # descent ends at a minimal slope of the class other than base;
        # only slope -1/1 vs base 1/1 can occur, and A carries 1/1 there
        for x in _LETTERS:
            if Slope.of(*sigma((x,)).apply(base.p, base.q)) == tail:
                letters.append(x)
                break
        else:
            raise AssertionError(f"descent from {c} stalled at {tail}")
    w = MappingClass(word=tuple(letters))
    assert act_on_curve(w, base) == c
    return w


@lru_cache(maxsize=65536)
def dehn_twist(c: Curve) -> MappingClass:
    """Right-handed Dehn twist as a normal form."""
    if isinstance(c, Boundary):
        if c.holes != 4:
            raise Unsupported("mapping class arithmetic is for the 4-holed sphere")
        e = [0, 0, 0, 0]
        e[c.index - 1] = 1
        return MappingClass(tuple(e))
    if not isinstance(c, Slope):
        raise Unsupported(f"no Dehn twist normal form for hole-set curve {c}")
    base = _BASES[parity_class(c)]
    core = {CURVE_A: T_A, CURVE_B: T_B, CURVE_C: T_C}[base]
    w = twist_conjugator_word(c, base)
    return conjugate(w, core)


@dataclass(frozen=True, order=True)
class AbelianClass:
    delta: tuple = (0, 0, 0, 0)
    ab: tuple = (0, 0)

    def __add__(self, other: AbelianClass) -> AbelianClass:
        return AbelianClass(
            tuple(x + y for x, y in zip(self.delta, other.delta)),
            tuple(x + y for x, y in zip(self.ab, other.ab)),
        )


def abelianize(g: MappingClass) -> AbelianClass:
    return AbelianClass(g.boundary, words.exponent_sums(g.word))


def is_central(g: MappingClass) -> bool:
    return not g.word


def are_conjugate(g: MappingClass, h: MappingClass) -> bool:
    return g.boundary == h.boundary and words.are_conjugate(g.word, h.word)

