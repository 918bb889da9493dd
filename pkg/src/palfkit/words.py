"""Reduced words in the free group on two letters.

Letters are nonzero ints: ``1`` and ``2`` are the generators, ``-1`` and
``-2`` their inverses.  Words are tuples, read in composition order (the
leftmost letter is applied last).
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple


def reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def mul(*words: Sequence[int]) -> Word:
    return reduce(x for w in words for x in w)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        return power(inverse(w), -k)
    return reduce(tuple(w) * k)


def exponent_sums(w: Sequence[int]) -> tuple[int, int]:
    s1 = sum(1 if x == 1 else -1 for x in w if abs(x) == 1)
    s2 = sum(1 if x == 2 else -1 for x in w if abs(x) == 2)
    return s1, s2


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Split a reduced word as ``u * core * u^-1`` with ``core`` cyclically reduced."""
    w = tuple(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[:i], w[i:j + 1]


def conjugator(u: Sequence[int], v: Sequence[int]) -> Word | None:
    """Some ``g`` with ``g u g^-1 == v``, or ``None`` if u, v are not conjugate."""
    x, cu = cyclic_reduce(reduce(u))
    y, cv = cyclic_reduce(reduce(v))
    if len(cu) != len(cv):
        return None
    if not cu:
        return ()
    doubled = cu + cu
    for k in range(len(cu)):
        if doubled[k:k + len(cu)] == cv:
            # cv = p^-1 cu p with p = cu[:k]
            p = cu[:k]
            return mul(y, inverse(p), inverse(x))
    return None


def are_conjugate(u: Sequence[int], v: Sequence[int]) -> bool:
    return conjugator(u, v) is not None


def syllables(w: Sequence[int]) -> list[tuple[int, int]]:
    """Run-length form: ``[(generator, exponent), ...]``."""
    out: list[list[int]] = []
    for x in w:
        g, e = abs(x), (1 if x > 0 else -1)
        if out and out[-1][0] == g:
            out[-1][1] += e
        else:
            out.append([g, e])
    return [(g, e) for g, e in out if e]


def from_syllables(syl: Iterable[tuple[int, int]]) -> Word:
    letters: list[int] = []
    for g, e in syl:
        letters.extend([g if e > 0 else -g] * abs(e))
    return reduce(letters)


def format_word(w: Sequence[int], names: tuple[str, str] = ("A", "B")) -> str:
    if not w:
        return "1"
    parts = []
    for g, e in syllables(w):
        name = names[g - 1]
        parts.append(name if e == 1 else f"{name}^{e}")
    return "·".join(parts)


def all_reduced(length: int) -> Iterable[Word]:
    """Every reduced word of exactly ``length`` letters."""
    if length == 0:
        yield ()
        return
    stack: list[tuple[int, ...]] = [(x,) for x in (1, -1, 2, -2)]
    while stack:
        w = stack.pop()
        if len(w) == length:
            yield w
            continue
        for x in (1, -1, 2, -2):
            if x != -w[-1]:
                stack.append(w + (x,))
