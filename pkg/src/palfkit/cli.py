"""Command-line front end.

Exit status: 0 on success or a positive verdict, 1 on a negative verdict
(not a homology sphere, not shown equivalent, no factorizations found),
2 on input or dispatch errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Any, Sequence

from palfkit import factor, kirby, words
from palfkit.curves import Boundary, CurveError, HoleSet, Slope
from palfkit.dsl import ParseError, parse_matrix, parse_tuple, parse_word
from palfkit.factor import Conjugate, HurwitzMove, MoveCertificate, TwistTuple
from palfkit.mcg import MappingClass
from palfkit.psl2 import ProjMatrix, PSLError

SCHEMA = 1


class UsageError(ValueError):
    pass


def to_json(x: Any) -> Any:
    """Plain JSON-ready data for any report value."""
    if isinstance(x, (Boundary, Slope, HoleSet)):
        return str(x)
    if isinstance(x, TwistTuple):
        return [str(c) for c in x.cycles]
    if isinstance(x, MappingClass):
        return {"delta": list(x.boundary), "word": words.format_word(x.word), "text": str(x)}
    if isinstance(x, ProjMatrix):
        return x.rows()
    if isinstance(x, kirby.AbelianGroup):
        return {"free_rank": x.free_rank, "torsion": list(x.torsion), "text": str(x)}
    if isinstance(x, MoveCertificate):
        return [to_json(s) for s in x.steps]
    if isinstance(x, HurwitzMove):
        return {"move": "hurwitz", "index": x.index, "forward": x.forward}
    if isinstance(x, Conjugate):
        return {"move": "conjugate", "by": to_json(x.by)}
    if isinstance(x, factor.Verdict):
        return {"status": x.status, "reason": x.reason,
                "certificate": to_json(x.certificate) if x.certificate is not None else None,
                "details": to_json(x.details)}
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: to_json(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(to_json(v) for v in x)
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return str(x)


# -- subcommands ------------------------------------------------------------
# each returns (report, exit_code, text)

def _tuple_arg(args, k=0):
    return parse_tuple(args.inputs[k], args.page)


def _hs_report(args):
    t = _tuple_arg(args)
    r = kirby.is_homology_sphere(t, args.page)
    report = {
        "tuple": to_json(t), "page_holes": args.page,
        "is_homology_sphere": r.is_homology_sphere, "n": r.n, "m": r.m, "det_a": r.det_a,
        "snf_a": list(r.snf_a), "snf_q": list(r.snf_q),
        "h1_total": to_json(r.h1_total), "h1_boundary": to_json(r.h1_boundary),
    }
    return t, r, report


def cmd_check_hs(args):
    t, r, report = _hs_report(args)
    text = (f"{t}: {'homology sphere' if r.is_homology_sphere else 'not a homology sphere'}"
            f" (n={r.n}, m={r.m}, det A={r.det_a}, H1(boundary)={r.h1_boundary})")
    return report, 0 if r.is_homology_sphere else 1, text


def cmd_h1(args):
    t, r, report = _hs_report(args)
    text = f"H1(X) = {r.h1_total}\nH1(boundary) = {r.h1_boundary}"
    return report, 0, text


def cmd_verdict(args):
    t = _tuple_arg(args)
    try:
        f = kirby.filling_verdict(t)
    except kirby.PreconditionFailed as exc:
        if exc.check != "homology_sphere":
            raise
        report = {"tuple": to_json(t), "verdict": None, "precondition": exc.check, "reason": str(exc)}
        return report, 1, f"{t}: {exc}"
    report = {"tuple": to_json(t), **to_json(f)}
    text = (f"{t}: case ({f.case}), det A = {f.det_a}, chi = {f.euler_characteristic}, "
            f"handles after cancellation (0,1,2) = {f.handles_after_cancellation}\n{f.verdict}")
    return report, 0, text


def cmd_total(args):
    t = _tuple_arg(args)
    g = factor.total_monodromy(t)
    return {"tuple": to_json(t), "total": to_json(g)}, 0, str(g)


def _verdict_output(v: factor.Verdict):
    code = 0 if v.equivalent else 1
    text = v.status + (f": {v.reason}" if v.reason else "")
    if v.certificate is not None:
        text += f"\ncertificate: {v.certificate}"
    return to_json(v), code, text


def cmd_equiv(args):
    t1, t2 = _tuple_arg(args, 0), _tuple_arg(args, 1)
    v = factor.equivalence_bfs(t1, t2, max_states=args.budget)
    return _verdict_output(v)


def cmd_classify(args):
    t1, t2 = _tuple_arg(args, 0), _tuple_arg(args, 1)
    return _verdict_output(factor.classify_length3(t1, t2))


def cmd_enum(args):
    source = args.inputs[0]
    phi = parse_word(source) if "t(" in source else factor.total_monodromy(parse_tuple(source))
    found = factor.enumerate_factorizations(phi, args.length, args.height, args.conj_length)
    report = {"monodromy": to_json(phi), "length": args.length, "height": args.height,
              "conj_length": args.conj_length, "count": len(found),
              "factorizations": [to_json(t) for t in found]}
    text = "\n".join(str(t) for t in found) or "no factorizations within the bounds"
    return report, 0 if found else 1, text


def cmd_snf(args):
    rows = parse_matrix(args.inputs[0])
    s = kirby.smith_normal_form(rows)
    g = kirby.cokernel(rows)
    report = {"matrix": rows, "divisors": list(s.divisors), "left": to_json(s.left),
              "right": to_json(s.right), "cokernel": to_json(g)}
    return report, 0, f"divisors: {list(s.divisors)}\ncokernel: {g}"


def cmd_orbit(args):
    t = _tuple_arg(args)
    orbit = factor.hurwitz_orbit(t, args.depth, args.budget)
    report = {"tuple": to_json(t), "depth": args.depth, "count": len(orbit),
              "orbit": [to_json(s) for s in orbit]}
    return report, 0, "\n".join(str(s) for s in orbit)


COMMANDS = {
    "check-hs": (cmd_check_hs, 1, "test whether the boundary is an integral homology sphere"),
    "h1": (cmd_h1, 1, "first homology of the total space and of its boundary"),
    "verdict": (cmd_verdict, 1, "filling verdict for a length-3 factorization on S_{0,4}"),
    "total": (cmd_total, 1, "normal form of the total monodromy"),
    "equiv": (cmd_equiv, 2, "Hurwitz/conjugation equivalence by bidirectional search"),
    "classify": (cmd_classify, 2, "certifying classifier for length-3 factorizations"),
    "enum": (cmd_enum, 1, "enumerate positive factorizations of a monodromy"),
    "snf": (cmd_snf, 1, "Smith normal form of an integer matrix"),
    "orbit": (cmd_orbit, 1, "bounded Hurwitz orbit of a tuple"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="palfkit", description="Lefschetz fibration toolkit on planar pages")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, nargs, help_) in COMMANDS.items():
        p = sub.add_parser(verb, help=help_)
        p.add_argument("inputs", nargs="*", help=f"{nargs} input(s); omit when using --file")
        p.add_argument("--file", help="read inputs from a file, one per non-blank line")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--page", type=int, default=4, help="number of holes of the page (default 4)")
        if verb in ("equiv", "orbit"):
            p.add_argument("--budget", type=int, default=50_000 if verb == "equiv" else 1000,
                           help="state budget")
        if verb == "orbit":
            p.add_argument("--depth", type=int, default=3)
        if verb == "enum":
            p.add_argument("-m", "--length", type=int, default=3)
            p.add_argument("-H", "--height", type=int, default=3)
            p.add_argument("-L", "--conj-length", type=int, default=2)
    return parser


def _load_inputs(args) -> None:
    need = COMMANDS[args.verb][1]
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        args.inputs = list(args.inputs) + lines
    if len(args.inputs) != need:
        raise UsageError(f"{args.verb} takes {need} input(s), got {len(args.inputs)}")


def run(argv: Sequence[str]) -> tuple[dict, int, str]:
    """Dispatch one command; returns ``(report, exit_code, text)``."""
    args = build_parser().parse_args(list(argv))
    try:
        _load_inputs(args)
        report, code, text = COMMANDS[args.verb][0](args)
    except (ParseError, CurveError, PSLError, factor.FactorError, kirby.PreconditionFailed,
            UsageError, OSError, ValueError) as exc:
        report, code, text = {"error": type(exc).__name__, "message": str(exc)}, 2, f"error: {exc}"
    report = {"schema": SCHEMA, "command": args.verb, "exit_code": code, **report}
    return report, code, text


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args_json = "--json" in argv
        report, code, text = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return 2 if exc.code else 0
    if args_json:
        sys.stdout.write(render(report))
    elif code == 2:
        print(text, file=sys.stderr)
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
