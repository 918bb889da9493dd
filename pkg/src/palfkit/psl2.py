"""Exact PSL(2, Z) arithmetic and the free Sanov subgroups.

For ``z >= 2`` the matrices ``U = [[1, -z], [0, 1]]`` and
``L = [[1, 0], [z, 1]]`` generate a free group of rank two.  ``rho`` sends
the first letter of a two-letter word to ``U`` and the second to ``L``;
``sanov_decompose`` inverts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from palfkit import kernels, words


class PSLError(ValueError):
    pass


class BadZ(PSLError):
    pass


class NotMember(PSLError):
    pass


@dataclass(frozen=True)
class ProjMatrix:
    """``[[a, b], [c, d]]`` up to sign, first nonzero entry positive."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise PSLError(f"determinant of {self.rows()} is not 1")
        lead = next(x for x in (self.a, self.b, self.c, self.d) if x)
        if lead < 0:
            for name in "abcd":
                object.__setattr__(self, name, -getattr(self, name))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> ProjMatrix:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __mul__(self, other: ProjMatrix) -> ProjMatrix:
        return proj_mul(self, other)

    def inverse(self) -> ProjMatrix:
        return ProjMatrix(self.d, -self.b, -self.c, self.a)

    def apply(self, p: int, q: int) -> tuple[int, int]:
        """Action on column vectors ``(p, q)``, not projectivised."""
        return self.a * p + self.b * q, self.c * p + self.d * q

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = ProjMatrix(1, 0, 0, 1)


def proj_mul(m: ProjMatrix, n: ProjMatrix) -> ProjMatrix:
    return ProjMatrix(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
    )


def generators(z: int) -> dict[int, ProjMatrix]:
    return {
        1: ProjMatrix(1, -z, 0, 1),
        -1: ProjMatrix(1, z, 0, 1),
        2: ProjMatrix(1, 0, z, 1),
        -2: ProjMatrix(1, 0, -z, 1),
    }


def rho(word: Sequence[int], z: int) -> ProjMatrix:
    """Image of a word in letters ``±1`` (U) and ``±2`` (L)."""
    if z < 2:
        raise BadZ(f"z = {z}: the representation is faithful only for z >= 2")
    gens = generators(z)
    m = IDENTITY
    for x in word:
        m = m * gens[x]
    return m


def abs_trace(m: ProjMatrix) -> int:
    return abs(m.a + m.d)


@dataclass(frozen=True)
class TraceTest:
    accepted: bool
    sign: int  # sign of the (1,1) entry when accepted, else 0
    trace: int  # |2 - a^2 z^2|
    reference: int  # |2 - z^2|


def conjugate_trace_test(c: ProjMatrix, z: int) -> TraceTest:
    """Can conjugating the first generator by ``c`` keep the trace of its product with the second?

    With ``a`` the (1,1) entry of ``c``, the product has |trace|
    ``|2 - a^2 z^2|``; acceptance needs it to match ``|2 - z^2|`` with
    ``a = ±1``.
    """
    a = c.a
    trace = abs(2 - a * a * z * z)
    reference = abs(2 - z * z)
    ok = trace == reference and abs(a) == 1
    return TraceTest(ok, (1 if a > 0 else -1) if ok else 0, trace, reference)


def sanov_decompose(m: ProjMatrix, z: int) -> tuple[int, ...]:
    """The unique reduced word ``w`` with ``rho(w, z) == m``."""
    if z < 2:
        raise BadZ(f"z = {z}: the Sanov subgroup is free only for z >= 2")
    syl = kernels.sanov_descent(m.a, m.b, m.c, m.d, z)
    if syl is None:
        raise NotMember(f"{m} is not in the Sanov subgroup for z = {z}")
    return words.from_syllables(syl)


def transvection_matrix(p: int, q: int) -> ProjMatrix:
    """Image of the twist along slope ``p/q`` on the 4-holed sphere."""
    return ProjMatrix(1 + 2 * p * q, -2 * p * p, 2 * q * q, 1 - 2 * p * q)


def fixes(m: ProjMatrix, p: int, q: int) -> bool:
    x, y = m.apply(p, q)
    return x * q - y * p == 0
