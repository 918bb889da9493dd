"""Text syntax for curves, twist tuples, twist words and matrices.

    curve  := 'd' INT | INT '/' INT | '{' INT (',' INT)* '}'
    tuple  := curve (',' curve)*
    word   := ('t(' curve ')' ('^' INT)?)*

Slopes must be typed in lowest terms; ``2/4`` is rejected rather than
silently reduced.
"""

from __future__ import annotations

import json
import re
from math import gcd

from palfkit.curves import Boundary, CurveError, HoleSet, Slope, Surface
from palfkit.factor import TwistTuple
from palfkit.mcg import IDENTITY_CLASS, MappingClass, dehn_twist


class ParseError(ValueError):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonCoprime(ParseError):
    pass


class EmptyTuple(ParseError):
    pass


_BOUNDARY = re.compile(r"d(\d+)$")
_SLOPE = re.compile(r"([+-]?\d+)\s*/\s*([+-]?\d+)$")
_HOLES = re.compile(r"\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}$")


def parse_curve(text: str, holes: int = 4, offset: int = 0):
    stripped = text.strip()
    pos = offset + (len(text) - len(text.lstrip()))
    if not stripped:
        raise ParseError("expected a curve", pos)
    try:
        if m := _BOUNDARY.match(stripped):
            return Boundary(int(m.group(1)), holes)
        if m := _SLOPE.match(stripped):
            p, q = int(m.group(1)), int(m.group(2))
            if holes != 4:
                raise ParseError(f"slope {stripped} needs the 4-holed sphere (page has {holes} holes)", pos)
            if gcd(p, q) != 1:
                raise NonCoprime(f"slope {stripped} is not in lowest terms", pos)
            return Slope.of(p, q)
        if m := _HOLES.match(stripped):
            return HoleSet(frozenset(int(x) for x in m.group(1).split(",")), holes)
    except CurveError as exc:
        raise ParseError(str(exc), pos) from None
    raise ParseError(f"cannot read curve {stripped!r}", pos)


def _split_top_level(text: str) -> list[tuple[int, str]]:
    """Split on commas outside braces, keeping each piece's start offset."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced '}'", i)
        elif ch == "," and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    if depth:
        raise ParseError("unbalanced '{'", len(text))
    parts.append((start, text[start:]))
    return parts


def parse_tuple(text: str, holes: int = 4) -> TwistTuple:
    if not text.strip():
        raise EmptyTuple("empty tuple", 0)
    Surface(holes)
    cycles = tuple(parse_curve(piece, holes, start) for start, piece in _split_top_level(text))
    return TwistTuple(cycles, Surface(holes))


_FACTOR = re.compile(r"\s*t\(([^)]*)\)(?:\^\s*([+-]?\d+))?\s*")


def parse_word(text: str) -> MappingClass:
    """``t(1/0) t(0/1) t(d1)`` is t_a ∘ t_b ∘ t_d1."""
    pos, g = 0, IDENTITY_CLASS
    while pos < len(text):
        m = _FACTOR.match(text, pos)
        if not m:
            if not text[pos:].strip():
                break
            raise ParseError("expected t(<curve>)", pos)
        c = parse_curve(m.group(1), 4, m.start(1))
        k = int(m.group(2)) if m.group(2) is not None else 1
        g = g * dehn_twist(c) ** k
        pos = m.end()
    return g


def parse_matrix(text: str) -> list[list[int]]:
    """``[[1,2],[3,4]]`` or rows separated by ``;`` (``1 2; 3 4``)."""
    s = text.strip()
    try:
        if s.startswith("["):
            rows = json.loads(s)
        else:
            rows = [[int(x) for x in r.replace(",", " ").split()] for r in s.split(";") if r.strip()]
    except ValueError as exc:
        raise ParseError(f"cannot read matrix: {exc}", 0) from None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows", 0)
    if rows and len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows have different lengths", 0)
    if not all(isinstance(x, int) for r in rows for x in r):
        raise ParseError("matrix entries must be integers", 0)
    return rows


def format_tuple(t: TwistTuple) -> str:
    return str(t)
