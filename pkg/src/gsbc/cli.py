"""Command-line front end: ``gsbc {eval,validate,learn,check,demo}``.

Exit codes: 0 success/pass, 1 finding (counterexample, violation, NoMatch),
2 usage error, 3 budget or scale exhaustion.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chl import (
    Bounded,
    Determined,
    Split,
    check_commutation,
    check_determination,
    classify_radius,
    learn_partition,
)
from .codes import BlackBoxMap, as_black_box, evaluate, radius_at
from .config import parse_config, parse_pattern
from .cylinder import validate_partition
from .errors import BudgetExceeded, GSBCError, NoMatch, ParseError, ScaleError, Undecided
from .files import load_code, load_partition, resolve_builtin

EXIT_OK, EXIT_FINDING, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def parse_range(text: str) -> list[int]:
    """``"0..4"`` (inclusive) or ``"0,3,5"``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return sorted({int(t) for t in text.split(",")})
    except ValueError:
        raise ParseError(f"bad index range {text!r}; use a..b or a,b,c") from None


def _emit(args, lines: list[str], payload: dict):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_eval(args) -> int:
    code = load_code(args.code)
    x = parse_config(args.config)
    window = parse_range(args.window)
    outputs, radii = [], []
    for g in window:
        try:
            outputs.append(evaluate(code, x, g, args.budget))
            radii.append(radius_at(code, x, g, args.budget))
        except GSBCError as exc:
            exc.at_index = g
            raise
    show = lambda r: "-" if r is None else str(r)
    lines = [
        f"code: {code.name}",
        f"config: {x}",
        f"window: {args.window}",
        "output: " + " ".join(map(str, outputs)),
        "radius: " + " ".join(map(show, radii)),
    ]
    _emit(args, lines, {"code": code.name, "config": str(x), "window": window,
                        "output": outputs, "radius": radii})
    return EXIT_OK


def cmd_validate(args) -> int:
    P = load_partition(args.partition)
    rep = validate_partition(P, args.radius, args.max_symbol)
    lines = [
        f"partition: {args.partition} ({len(P)} cylinders)",
        f"scale: R={args.radius} M={args.max_symbol} ({rep.checked} patterns)",
        "disjoint: " + ("yes" if rep.disjoint else "no"),
    ]
    for b1, c1, b2, c2 in rep.violations:
        lines.append(f"violation: output {b1} {c1} overlaps output {b2} {c2}")
    for c1, c2 in rep.undecided:
        lines.append(f"undecided: {c1} vs {c2}")
    if rep.covered:
        lines.append(f"covered at R={args.radius}")
    else:
        lines.append(f"uncovered: {len(rep.uncovered)} patterns (may need larger R or M)")
        lines += [f"warning: uncovered {p}" for p in rep.uncovered]
    _emit(args, lines, rep.to_json())
    return EXIT_OK if rep.disjoint else EXIT_FINDING


def _load_map(ref: str):
    code = load_code(ref, black_box=True)
    return code if isinstance(code, BlackBoxMap) else as_black_box(code)


def cmd_learn(args) -> int:
    m = _load_map(args.map)
    learned = learn_partition(m, args.radius, args.max_symbol, budget=args.budget)
    summary = learned.summary()
    outputs = " ".join(map(str, summary["outputs"])) or "none"
    lines = [
        f"map: {m.name}",
        f"scale: R={args.radius} M={args.max_symbol}",
        f"learned: {summary['cylinders']} cylinders over outputs {outputs}",
        f"unresolved: {summary['unresolved']} patterns",
    ]
    lines += [f"no local determination found for {p}" for p in learned.unresolved]
    for s in learned.certificates:
        lines.append(f"split certificate: {s.extension1} -> {s.outputs[0]}, {s.extension2} -> {s.outputs[1]}")
    if args.out:
        Path(args.out).write_text(json.dumps(learned.partition.to_json(), indent=2) + "\n", encoding="utf-8")
        lines.append(f"wrote {args.out}")
    payload = dict(summary, map=m.name,
                   unresolved_patterns=[p.to_json() for p in learned.unresolved],
                   certificates=[s.to_json() for s in learned.certificates],
                   partition=learned.partition.to_json())
    _emit(args, lines, payload)
    return EXIT_OK if not learned.unresolved else EXIT_EXHAUSTED


def cmd_check(args) -> int:
    if args.mode == "commute":
        m = load_code(args.map)
        rep = check_commutation(m, args.samples, parse_range(args.shifts), args.seed,
                                args.max_symbol, args.budget)
        lines = [f"map: {m.name}", f"tested: {rep.tested} comparisons (seed {args.seed})"]
        if rep.passed:
            lines.append("verdict: pass")
        else:
            c = rep.counterexample
            lines.append(f"verdict: counterexample x={c.x} g={c.g} h={c.h} "
                         f"Phi(shift(h,x))_g={c.lhs} Phi(x)_(g+h)={c.rhs}")
        lines += [f"finding: {f['x']} g={f['g']} h={f['h']}: {f['error']}" for f in rep.findings]
        _emit(args, lines, dict(rep.to_json(), map=m.name))
        return EXIT_OK if rep.passed else EXIT_FINDING

    if args.mode == "determine":
        m = _load_map(args.map)
        p = parse_pattern(args.pattern)
        tails = [parse_range(t) if ".." in t else [int(v) for v in t.split(",")] for t in args.tail] or None
        res = check_determination(m, p, args.max_symbol, tails, budget=args.budget)
        lines = [f"map: {m.name}", f"pattern: {p}"]
        if isinstance(res, Determined):
            lines.append(f"determined: output {res.output} on all {res.tested} tested extensions")
            code = EXIT_OK
        elif isinstance(res, Split):
            lines += [
                "split: no local determination at this pattern",
                f"  {res.extension1} -> {res.outputs[0]}",
                f"  {res.extension2} -> {res.outputs[1]}",
            ]
            code = EXIT_FINDING
        else:
            lines.append(f"unresolved: {res.reason}")
            code = EXIT_EXHAUSTED
        _emit(args, lines, dict(res.to_json(), map=m.name))
        return code

    c = load_code(args.map)
    if isinstance(c, BlackBoxMap):
        raise ParseError("check radius needs a classical or generalized code, not a black box")
    res = classify_radius(c, args.radius, args.max_symbol, args.budget)
    lines = [f"code: {c.name}", f"scale: R={args.radius} M={args.max_symbol}"]
    if isinstance(res, Bounded):
        lines.append(f"bounded({res.radius}) over {res.checked} checked cases")
    else:
        lines.append(f"exceeds({res.limit}): x={res.witness} needs radius {res.radius} at g={res.g}")
    lines += [f"finding: {f}" for f in res.findings]
    _emit(args, lines, dict(res.to_json(), code=c.name))
    return EXIT_OK if isinstance(res, Bounded) else EXIT_FINDING


def cmd_demo(args) -> int:
    R, M = args.max_radius, args.max_symbol
    shifts = range(9)
    code1 = resolve_builtin("builtin:example1")
    formula1 = resolve_builtin("builtin:example1", black_box=True)
    map2 = resolve_builtin("builtin:example2?blocks=[[0,1]]")

    com1 = check_commutation(code1, args.samples, shifts, args.seed)
    learn1 = learn_partition(formula1, R, M)
    rad1 = classify_radius(code1, R, R + 2)
    com2 = check_commutation(map2, args.samples, shifts, args.seed)
    learn2 = learn_partition(map2, R, M)
    zeros = learn2.certificates[0] if learn2.certificates else None

    mark = lambda ok: "yes" if ok else "no"
    det1 = "yes" if not learn1.unresolved else f"partial ({len(learn1.unresolved)} unresolved)"
    rad_txt = (f"bounded({rad1.radius})" if isinstance(rad1, Bounded)
               else f"unbounded (x={rad1.witness} needs {rad1.radius} > R={R})")
    lines = [
        f"scale: R={R} M={M} samples={args.samples} seed={args.seed}",
        "",
        f"{'map':<10} {'commuting':<10} {'determined':<22} radius",
        f"{'example1':<10} {mark(com1.passed):<10} {det1:<22} {rad_txt}",
        f"{'example2':<10} {mark(com2.passed):<10} {mark(not learn2.unresolved):<22} n/a (black box)",
        "",
        "example1: Phi(x)_j = x_(j + x_j)",
        "  claim: continuous and shift commuting, with variable radius",
        f"  observed: {com1.tested} commutation checks passed; "
        f"{len(learn1.partition)} cylinders learned, {len(learn1.unresolved)} unresolved",
        "example2: Phi(x)_j = max_(i >= j) x_i on {0,1}^N",
        "  claim: shift commuting but not continuous",
        f"  observed: {com2.tested} commutation checks passed; "
        f"{len(learn2.unresolved)} pattern(s) without local determination",
    ]
    if zeros is not None:
        lines.append(f"  certificate: {zeros.pattern}: {zeros.extension1} -> {zeros.outputs[0]}, "
                     f"{zeros.extension2} -> {zeros.outputs[1]}")
    payload = {
        "scale": {"radius": R, "max_symbol": M, "samples": args.samples, "seed": args.seed},
        "example1": {"commutation": com1.to_json(), "learned": learn1.summary(), "radius": rad1.to_json()},
        "example2": {"commutation": com2.to_json(), "learned": learn2.summary(),
                     "certificate": zeros.to_json() if zeros else None},
    }
    _emit(args, lines, payload)
    ok = com1.passed and com2.passed and not isinstance(rad1, Bounded) and bool(learn2.unresolved)
    return EXIT_OK if ok else EXIT_FINDING


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--budget", type=int, default=None, help="probe budget per coordinate")

    p = _Parser(prog="gsbc", description="Generalized sliding block codes over infinite alphabets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate a code on a window")
    e.add_argument("code", help="code JSON path or builtin:NAME")
    e.add_argument("--config", required=True, help='config literal, e.g. "2,0,5,1,3;0"')
    e.add_argument("--window", default="0..9", help="indices a..b or a,b,c")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("validate", parents=[common], help="check a partition file")
    v.add_argument("partition")
    v.add_argument("-R", "--radius", type=int, default=2)
    v.add_argument("-M", "--max-symbol", type=int, default=2)
    v.set_defaults(func=cmd_validate)

    lr = sub.add_parser("learn", parents=[common], help="learn the cylinder partition of a map")
    lr.add_argument("map")
    lr.add_argument("-R", "--radius", type=int, default=3)
    lr.add_argument("-M", "--max-symbol", type=int, default=3)
    lr.add_argument("--out", default=None, help="write the learned partition JSON here")
    lr.set_defaults(func=cmd_learn)

    c = sub.add_parser("check", parents=[common], help="commutation, determination or radius checks")
    c.add_argument("mode", choices=["commute", "determine", "radius"])
    c.add_argument("map")
    c.add_argument("--shifts", default="0..8")
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("--pattern", default="", help='e.g. "0@0,0@1" (symbol@index)')
    c.add_argument("--tail", action="append", default=[], help="tail period, e.g. 0,1 (repeatable)")
    c.add_argument("-R", "--radius", type=int, default=3)
    c.add_argument("-M", "--max-symbol", type=int, default=None)
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("demo", parents=[common], help="run both example maps end to end")
    d.add_argument("--max-radius", type=int, default=3)
    d.add_argument("--max-symbol", type=int, default=3)
    d.add_argument("--samples", type=int, default=50)
    d.set_defaults(func=cmd_demo)
    return p


def _defaults(args):
    if getattr(args, "command", None) == "check" and args.max_symbol is None:
        args.max_symbol = {"commute": 5, "determine": 1, "radius": args.radius + 2}[args.mode]


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _defaults(args)
        return args.func(args)
    except ParseError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoMatch as exc:
        print(_where(exc) + f"no match: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except (BudgetExceeded, ScaleError, Undecided) as exc:
        print(_where(exc) + f"exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except GSBCError as exc:
        print(_where(exc) + f"error: {exc}", file=sys.stderr)
        return EXIT_FINDING


def _where(exc) -> str:
    return f"at index {exc.at_index}: " if exc.at_index is not None else ""


if __name__ == "__main__":
    sys.exit(main())
