"""Positive factorizations, Hurwitz moves and total conjugation.

A factorization is a :class:`TwistTuple` ``(c_1, ..., c_m)`` of curves;
its total monodromy is ``t_{c_m} ∘ ... ∘ t_{c_1}``.  Twists are always
stored by their curves: a conjugate ``g t_c g^-1`` is the twist along
``g(c)``.

Equivalence verdicts carry a :class:`MoveCertificate` which is replayed
against the target before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from palfkit import words
from palfkit.curves import (
    CURVE_A,
    CURVE_B,
    CURVE_C,
    SIGMA04,
    Boundary,
    Curve,
    Slope,
    Surface,
    Unsupported,
    intersection_number,
    is_boundary,
    parity_class,
    slopes_up_to,
)
from palfkit.mcg import (
    IDENTITY_CLASS,
    AbelianClass,
    MappingClass,
    abelianize,
    act_on_curve,
    are_conjugate,
    dehn_twist,
    invert,
    letter,
    product,
    sigma,
    twist_conjugator_word,
)
from palfkit.psl2 import (
    NotMember,
    ProjMatrix,
    conjugate_trace_test,
    sanov_decompose,
    transvection_matrix,
)


class FactorError(ValueError):
    pass


class IndexOutOfRange(FactorError):
    pass


class LengthMismatch(FactorError):
    pass


class InvalidStep(FactorError):
    pass


@dataclass(frozen=True)
class TwistTuple:
    cycles: tuple
    surface: Surface = SIGMA04

    def __post_init__(self) -> None:
        object.__setattr__(self, "cycles", tuple(self.cycles))
        for c in self.cycles:
            if c.holes != self.surface.holes:
                raise FactorError(f"curve {c} does not live on a {self.surface.holes}-holed sphere")

    @classmethod
    def of(cls, *cycles: Curve) -> TwistTuple:
        holes = cycles[0].holes if cycles else 4
        return cls(tuple(cycles), Surface(holes))

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def __getitem__(self, i):
        return self.cycles[i]

    def replace(self, cycles: Iterable[Curve]) -> TwistTuple:
        return TwistTuple(tuple(cycles), self.surface)

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.cycles)


@dataclass(frozen=True)
class HurwitzMove:
    index: int  # 1-based; acts on slots index, index + 1
    forward: bool = True

    def inverse(self) -> HurwitzMove:
        return HurwitzMove(self.index, not self.forward)

    def __str__(self) -> str:
        return f"H{self.index}{'' if self.forward else '^-1'}"


@dataclass(frozen=True)
class Conjugate:
    by: MappingClass

    def inverse(self) -> Conjugate:
        return Conjugate(invert(self.by))

    def __str__(self) -> str:
        return f"conj[{words.format_word(self.by.word)}]"


Step = Union[HurwitzMove, Conjugate]


@dataclass(frozen=True)
class MoveCertificate:
    steps: tuple = ()

    def __add__(self, other: MoveCertificate) -> MoveCertificate:
        return MoveCertificate(self.steps + other.steps)

    def inverse(self) -> MoveCertificate:
        return MoveCertificate(tuple(s.inverse() for s in reversed(self.steps)))

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.steps) or "(empty)"

    def simplified(self) -> MoveCertificate:
        """Merge adjacent conjugations, drop central ones, cancel move/inverse pairs."""
        out: list[Step] = []
        for s in self.steps:
            if isinstance(s, Conjugate):
                if out and isinstance(out[-1], Conjugate):
                    s = Conjugate(s.by * out.pop().by)
                if not s.by.word:
                    continue
            elif out and isinstance(out[-1], HurwitzMove) and out[-1] == s.inverse():
                out.pop()
                continue
            out.append(s)
        return MoveCertificate(tuple(out))


@dataclass
class Verdict:
    status: str  # equivalent | distinguished | unknown | not_applicable
    reason: str = ""
    certificate: MoveCertificate | None = None
    details: dict = field(default_factory=dict)

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"


def _require_sigma04(t: TwistTuple) -> None:
    if t.surface.holes != 4:
        raise Unsupported("mapping class arithmetic is only available on the 4-holed sphere")


def total_monodromy(t: TwistTuple) -> MappingClass:
    _require_sigma04(t)
    return product(dehn_twist(c) for c in reversed(t.cycles))


def twist_act(c: Curve, x: Curve, power: int = 1) -> Curve:
    """``t_c^power (x)``, using the transvection image of the twist."""
    if isinstance(c, Boundary) or isinstance(x, Boundary):
        return x
    m = transvection_matrix(c.p, c.q)
    if power < 0:
        m, power = m.inverse(), -power
    p, q = x.p, x.q
    for _ in range(power):
        p, q = m.apply(p, q)
    return Slope.of(p, q)


def hurwitz_move(t: TwistTuple, i: int, forward: bool = True) -> TwistTuple:
    """Rewrite slots ``i, i+1`` (1-based) keeping the total monodromy."""
    _require_sigma04(t)
    if not 1 <= i < len(t):
        raise IndexOutOfRange(f"Hurwitz move at {i} on a tuple of length {len(t)}")
    cs = list(t.cycles)
    x, y = cs[i - 1], cs[i]
    if forward:
        cs[i - 1], cs[i] = y, twist_act(y, x)
    else:
        cs[i - 1], cs[i] = twist_act(x, y, -1), x
    return t.replace(cs)


def total_conjugate(t: TwistTuple, psi: MappingClass) -> TwistTuple:
    _require_sigma04(t)
    if not psi.word:
        return t
    return t.replace(act_on_curve(psi, c) for c in t.cycles)


def ab_invariant(t: TwistTuple) -> tuple:
    """Sorted multiset of the abelianized twists."""
    _require_sigma04(t)
    return tuple(sorted(abelianize(dehn_twist(c)) for c in t.cycles))


def replay(t: TwistTuple, cert: MoveCertificate | Sequence[Step]) -> TwistTuple:
    steps = cert.steps if isinstance(cert, MoveCertificate) else cert
    for k, s in enumerate(steps):
        if isinstance(s, HurwitzMove):
            try:
                t = hurwitz_move(t, s.index, s.forward)
            except IndexOutOfRange as exc:
                raise InvalidStep(f"step {k}: {exc}") from None
        elif isinstance(s, Conjugate):
            t = total_conjugate(t, s.by)
        else:
            raise InvalidStep(f"step {k}: unknown step {s!r}")
    return t


def _verified(t1: TwistTuple, t2: TwistTuple, cert: MoveCertificate, **details) -> Verdict:
    cert = cert.simplified()
    got = replay(t1, cert)
    if got != t2:
        raise AssertionError(f"certificate replays to ({got}), expected ({t2})")
    return Verdict("equivalent", certificate=cert, details=details)


# -- equivalence search ---------------------------------------------------

def _curve_key(c: Curve) -> tuple:
    if isinstance(c, Boundary):
        return (0, c.index, 0)
    return (1, c.p, c.q)


def _state_key(t: TwistTuple) -> tuple:
    size = sum(abs(c.p) + abs(c.q) for c in t.cycles if isinstance(c, Slope))
    return (size, tuple(_curve_key(c) for c in t.cycles))


_GEN_LETTERS = (1, -1, 2, -2)


def canonicalize(t: TwistTuple) -> tuple[TwistTuple, MappingClass]:
    """Greedy descent under conjugation by single letters.

    Returns ``(s, psi)`` with ``s == total_conjugate(t, psi)``.  Not a true
    normal form for conjugacy orbits; searches using it are sound but may
    miss connections.
    """
    psi = IDENTITY_CLASS
    key = _state_key(t)
    while True:
        best = None
        for x in _GEN_LETTERS:
            cand = total_conjugate(t, letter(x))
            k = _state_key(cand)
            if k < key and (best is None or k < best[0]):
                best = (k, cand, x)
        if best is None:
            return t, psi
        key, t, x = best
        psi = letter(x) * psi


def _expand(state: TwistTuple):
    for i in range(1, len(state)):
        for fwd in (True, False):
            nxt = hurwitz_move(state, i, fwd)
            canon, psi = canonicalize(nxt)
            steps = (HurwitzMove(i, fwd),)
            if psi.word:
                steps += (Conjugate(psi),)
            yield canon, steps


def equivalence_bfs(
    t1: TwistTuple,
    t2: TwistTuple,
    max_states: int = 50_000,
    max_depth: int = 40,
) -> Verdict:
    """Bidirectional search by Hurwitz moves on conjugation-canonical states.

    ``distinguished`` only on a proven invariant mismatch; ``unknown`` when
    the budget runs out.
    """
    _require_sigma04(t1)
    _require_sigma04(t2)
    if len(t1) != len(t2):
        raise LengthMismatch(f"lengths {len(t1)} and {len(t2)} differ")
    if t1 == t2:
        return _verified(t1, t2, MoveCertificate(), explored=0)
    if ab_invariant(t1) != ab_invariant(t2):
        return Verdict("distinguished", "abelianized twist multisets differ")
    if not are_conjugate(total_monodromy(t1), total_monodromy(t2)):
        return Verdict("distinguished", "total monodromies are not conjugate")

    start = []
    for t in (t1, t2):
        c, psi = canonicalize(t)
        start.append((c, (Conjugate(psi),) if psi.word else ()))
    seen = [{start[0][0]: start[0][1]}, {start[1][0]: start[1][1]}]
    frontier = [[start[0][0]], [start[1][0]]]

    def meet(state):
        path1 = MoveCertificate(seen[0][state])
        path2 = MoveCertificate(seen[1][state])
        cert = path1 + path2.inverse()
        return _verified(t1, t2, cert, explored=len(seen[0]) + len(seen[1]))

    if start[0][0] in seen[1]:
        return meet(start[0][0])
    for depth in range(max_depth):
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        if not frontier[side]:
            side = 1 - side
        if not frontier[side]:
            return Verdict("unknown", "search space exhausted without a connection",
                           details={"explored": len(seen[0]) + len(seen[1])})
        nxt = []
        mine, other = seen[side], seen[1 - side]
        for state in frontier[side]:
            base = mine[state]
            for s, steps in _expand(state):
                if s in mine:
                    continue
                mine[s] = base + steps
                if s in other:
                    return meet(s)
                nxt.append(s)
                if len(seen[0]) + len(seen[1]) > max_states:
                    return Verdict("unknown", f"state budget {max_states} exhausted",
                                   details={"explored": len(seen[0]) + len(seen[1])})
        frontier[side] = nxt
    return Verdict("unknown", f"depth budget {max_depth} exhausted",
                   details={"explored": len(seen[0]) + len(seen[1])})


def hurwitz_orbit(t: TwistTuple, max_depth: int = 3, max_states: int = 1000) -> list[TwistTuple]:
    """Tuples reachable by at most ``max_depth`` Hurwitz moves, in BFS order."""
    _require_sigma04(t)
    seen = {t: 0}
    order = [t]
    frontier = [t]
    for _ in range(max_depth):
        nxt = []
        for s in frontier:
            for i in range(1, len(s)):
                for fwd in (True, False):
                    u = hurwitz_move(s, i, fwd)
                    if u not in seen and len(seen) < max_states:
                        seen[u] = seen[s] + 1
                        order.append(u)
                        nxt.append(u)
        frontier = nxt
    return order


# -- the length-3 classifier ---------------------------------------------

_BASES = {(1, 0): CURVE_A, (0, 1): CURVE_B, (1, 1): CURVE_C}


def _boundary_to_front(t: TwistTuple) -> tuple[TwistTuple, MoveCertificate]:
    """Bubble boundary curves to the front, sorted by index.

    Any Hurwitz move touching a boundary twist is a plain swap.
    """
    steps = []
    cs = list(t.cycles)

    def smaller(x, y):
        # should x sit before y?
        if is_boundary(x) and not is_boundary(y):
            return True
        return is_boundary(x) and is_boundary(y) and x.index < y.index

    changed = True
    while changed:
        changed = False
        for i in range(len(cs) - 1):
            if smaller(cs[i + 1], cs[i]):
                t = hurwitz_move(t, i + 1, True)
                steps.append(HurwitzMove(i + 1, True))
                cs = list(t.cycles)
                changed = True
    return t, MoveCertificate(tuple(steps))


def _pair_basis(gamma: Slope, beta: Slope):
    """Integer basis ``P = [gamma | s*beta]`` conjugating sigma onto rho.

    In this basis sigma(t_gamma) = [[1,-z],[0,1]] and sigma(t_beta) =
    [[1,0],[z,1]] with z = i(gamma, beta).
    """
    det = gamma.p * beta.q - gamma.q * beta.p
    s = 1 if det > 0 else -1
    return (gamma.p, s * beta.p, gamma.q, s * beta.q), abs(det)


def rho_of(g: MappingClass, gamma: Slope, beta: Slope) -> ProjMatrix | None:
    """``rho(g)`` for ``g`` in the subgroup generated by t_gamma, t_beta, else ``None``.

    Computed as ``P^-1 sigma(g) P``; a non-integral result certifies that
    ``g`` lies outside the subgroup.
    """
    (p11, p12, p21, p22), det = _pair_basis(gamma, beta)
    m = sigma(g)
    # adj(P) * M * P
    mp = (m.a * p11 + m.b * p21, m.a * p12 + m.b * p22,
          m.c * p11 + m.d * p21, m.c * p12 + m.d * p22)
    r = (p22 * mp[0] - p12 * mp[2], p22 * mp[1] - p12 * mp[3],
         -p21 * mp[0] + p11 * mp[2], -p21 * mp[1] + p11 * mp[3])
    if any(x % det for x in r):
        return None
    return ProjMatrix(*(x // det for x in r))


def pair_word(g: MappingClass, gamma: Slope, beta: Slope) -> tuple | None:
    """Word in letters ``±1`` (t_gamma) and ``±2`` (t_beta) equal to ``g``, if any."""
    z = intersection_number(gamma, beta)
    r = rho_of(g, gamma, beta)
    if r is None:
        return None
    try:
        w = sanov_decompose(r, z)
    except NotMember:
        return None
    tg, tb = dehn_twist(gamma), dehn_twist(beta)
    gens = {1: tg, -1: invert(tg), 2: tb, -2: invert(tb)}
    if product(gens[x] for x in w).word != g.word:
        raise AssertionError("sigma is faithful on F_2; rho word must reproduce g")
    return w


def _solve_beta_power(gamma: Slope, beta: Slope, target: Slope) -> int | None:
    """``n`` with ``t_beta^n(gamma) == target``, if one exists."""
    e = beta.p * gamma.q - beta.q * gamma.p  # det(beta, gamma)
    # t_beta^n(gamma) = gamma - 2 n e beta (as vectors, up to sign)
    for sgn in (1, -1):
        dx, dy = sgn * target.p - gamma.p, sgn * target.q - gamma.q
        if dx * beta.q - dy * beta.p:
            continue
        k = dx // beta.p if beta.p else dy // beta.q
        if k % (2 * e) == 0:
            n = -k // (2 * e)
            if twist_act(beta, gamma, n) == target:
                return n
    return None


def classify_length3(t1: TwistTuple, t2: TwistTuple) -> Verdict:
    """Constructive equivalence of two length-3 factorizations of conjugate monodromies.

    Follows the uniqueness argument: move the boundary twist to the front,
    match the remaining twists up to conjugacy, read off the relative
    conjugator in the free subgroup generated by the two non-boundary
    twists through its PSL(2, Z) image, and turn its two-syllable
    decomposition into an explicit conjugation chain.  Conjugate but
    unequal totals are first aligned by one total conjugation.
    """
    _require_sigma04(t1)
    _require_sigma04(t2)
    if len(t1) != 3 or len(t2) != 3:
        return Verdict("not_applicable", "both tuples must have length 3")
    phi1, phi2 = total_monodromy(t1), total_monodromy(t2)
    if phi1 == phi2:
        return _classify_equal_totals(t1, t2)
    w = words.conjugator(phi1.word, phi2.word) if phi1.boundary == phi2.boundary else None
    if w is None:
        return Verdict("not_applicable", "unequal total monodromies (not conjugate)")
    align = MappingClass(word=w)
    v = _classify_equal_totals(total_conjugate(t1, align), t2)
    if not v.equivalent:
        return v
    return _verified(t1, t2, MoveCertificate((Conjugate(align),)) + v.certificate,
                     total_conjugator=align, **v.details)


def _classify_equal_totals(t1: TwistTuple, t2: TwistTuple) -> Verdict:
    if ab_invariant(t1) != ab_invariant(t2):
        return Verdict("not_applicable", "abelianized twist multisets differ")
    nb = sum(is_boundary(c) for c in t1.cycles)
    if nb == 0:
        return Verdict("not_applicable", "no boundary curve among the vanishing cycles")

    s1, m1 = _boundary_to_front(t1)
    s2, m2 = _boundary_to_front(t2)
    case = {3: 1, 2: 2, 1: 3}[nb]
    if nb >= 2:
        # remaining twist is pinned by the total; tuples agree after sorting
        if s1 != s2:
            raise AssertionError("equal totals must give equal sorted tuples")
        return _verified(t1, t2, m1 + m2.inverse(), case=case)

    delta, beta, gamma = s1.cycles
    _, beta2, gamma2 = s2.cycles
    if parity_class(beta2) != parity_class(beta):
        s2 = hurwitz_move(s2, 2, True)
        m2 = m2 + MoveCertificate((HurwitzMove(2, True),))
        _, beta2, gamma2 = s2.cycles
    z = intersection_number(gamma, beta)
    if z == 0:
        return Verdict("not_applicable", "the non-boundary cycles are isotopic (i = 0)")

    base_b = _BASES[parity_class(beta)]
    base_g = _BASES[parity_class(gamma)]
    psi1 = twist_conjugator_word(beta2, base_b) * invert(twist_conjugator_word(beta, base_b))
    psi2 = twist_conjugator_word(gamma2, base_g) * invert(twist_conjugator_word(gamma, base_g))
    theta = invert(psi1) * psi2
    details = {
        "case": case,
        "z": z,
        "psi1": psi1,
        "psi2": psi2,
        "theta": theta,
        "psi1_in_subgroup": pair_word(psi1, gamma, beta) is not None,
        "psi2_in_subgroup": pair_word(psi2, gamma, beta) is not None,
    }
    target = act_on_curve(theta, gamma)
    theta_word = pair_word(theta, gamma, beta)
    if theta_word is not None:
        r = rho_of(theta, gamma, beta)
        test = conjugate_trace_test(r, z)
        details.update(route="subgroup", rho_theta=r, trace_test=test, theta_word=theta_word)
        if not test.accepted:
            return Verdict("not_applicable", f"trace test rejected rho(theta) = {r}", details=details)
        syl = words.syllables(theta_word)
        # rho(theta) = [[1, kz], [lz, 1 + klz^2]] = rho(t_beta^l t_gamma^-k)
        n = syl[0][1] if syl and syl[0][0] == 2 else 0
        rest = syl[1:] if n else syl
        if len(rest) > 1 or (rest and rest[0][0] != 1):
            return Verdict("not_applicable", f"theta = {theta_word} is not t_beta^n t_gamma^m",
                           details=details)
        m = rest[0][1] if rest else 0
        details.update(beta_power=n, gamma_power=m)
        if twist_act(beta, gamma, n) != target:
            raise AssertionError("theta(gamma) must equal t_beta^n(gamma)")
    else:
        n = _solve_beta_power(gamma, beta, target)
        details.update(route="fallback")
        if n is None:
            return Verdict("not_applicable",
                           "relative conjugator lies outside the subgroup and theta(gamma) "
                           "is not a t_beta-translate of gamma", details=details)
        details.update(beta_power=n)

    t_beta_n = dehn_twist(beta) ** n
    chain = MoveCertificate((Conjugate(MappingClass(word=t_beta_n.word)), Conjugate(psi1)))
    return _verified(t1, t2, m1 + chain + m2.inverse(), **details)


# -- enumeration ------------------------------------------------------------

_KINDS = (
    ("d1", AbelianClass((1, 0, 0, 0), (0, 0))),
    ("d2", AbelianClass((0, 1, 0, 0), (0, 0))),
    ("d3", AbelianClass((0, 0, 1, 0), (0, 0))),
    ("d4", AbelianClass((0, 0, 0, 1), (0, 0))),
    ((1, 0), AbelianClass((0, 0, 0, 0), (1, 0))),
    ((0, 1), AbelianClass((0, 0, 0, 0), (0, 1))),
    ((1, 1), AbelianClass((1, 1, 1, 1), (-1, -1))),
)


def kind_compositions(phi: MappingClass, m: int) -> list[tuple]:
    """Multisets of twist kinds (boundary index or parity class) whose abelianizations sum to phi's."""
    target = abelianize(phi)
    out = []
    for combo in itertools.combinations_with_replacement(range(len(_KINDS)), m):
        total = AbelianClass()
        for k in combo:
            total = total + _KINDS[k][1]
        if total == target:
            out.append(tuple(_KINDS[k][0] for k in combo))
    return out


def _conj_length(c: Slope) -> int:
    return len(twist_conjugator_word(c, _BASES[parity_class(c)]).word)


def _candidates(kind, height: int, max_conj: int) -> list[Curve]:
    if isinstance(kind, str):
        return [Boundary(int(kind[1:]))]
    return [s for s in slopes_up_to(height)
            if parity_class(s) == kind and _conj_length(s) <= max_conj]


def _twist_curve(r: MappingClass, kind) -> Curve | None:
    """The curve ``c`` of the given kind with ``t_c == r``, if any."""
    if isinstance(kind, str):
        c = Boundary(int(kind[1:]))
        return c if dehn_twist(c) == r else None
    base = _BASES[kind]
    core = dehn_twist(base)
    if r.boundary != core.boundary:
        return None
    w = words.conjugator(core.word, r.word)
    if w is None:
        return None
    c = act_on_curve(MappingClass(word=w), base)
    return c if dehn_twist(c) == r else None


def enumerate_factorizations(
    phi: MappingClass, m: int, height: int = 3, max_conj: int = 2
) -> list[TwistTuple]:
    """All length-``m`` positive factorizations of ``phi`` within the bounds.

    Slopes are limited to ``max(|p|, |q|) <= height`` and to canonical
    conjugator words of length ``<= max_conj``.  Abelianization fixes the
    multiset of twist kinds; the last factor is solved for exactly.
    """
    if m < 1:
        return [TwistTuple(())] if phi == IDENTITY_CLASS else []
    found = set()
    for kinds in kind_compositions(phi, m):
        for order in set(itertools.permutations(kinds)):
            pools = [_candidates(k, height, max_conj) for k in order[:-1]]
            for head in itertools.product(*pools):
                partial = product(dehn_twist(c) for c in reversed(head))
                last = _twist_curve(phi * invert(partial), order[-1])
                if last is None:
                    continue
                if isinstance(last, Slope) and (last.height > height or _conj_length(last) > max_conj):
                    continue
                found.add(TwistTuple(head + (last,)))
    return sorted(found, key=lambda t: tuple(_curve_key(c) for c in t.cycles))
