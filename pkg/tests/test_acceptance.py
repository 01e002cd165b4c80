"""Acceptance criteria, one test each.

Every test prints a PASS/FAIL line (also collected in the pytest terminal
summary) with its measured runtime against the pinned limit.  Run alone with

    pytest tests/test_acceptance.py -v -s
"""
import random
import subprocess
import sys
import time
from contextlib import contextmanager

from gsbc import (
    Bounded,
    EventuallyPeriodic,
    Exceeds,
    FullShift,
    GeneralizedCode,
    Monoid,
    Pattern,
    Split,
    as_black_box,
    broken_map,
    builtin_example1,
    builtin_example2,
    check_commutation,
    check_determination,
    classical_radius,
    classical_to_generalized,
    classify_radius,
    compile_partition,
    cylinder_contains,
    eval_classical,
    eval_generalized,
    evaluate,
    identity_code,
    learn_partition,
    variable_radius,
)
from gsbc.codes import example1_formula, match_at
from gsbc.config import overlay
from gsbc.cylinder import pattern_rows
from gsbc.generators import random_classical_code, random_partition


@contextmanager
def criterion(log, number, title, limit_s):
    """Times the block and records one PASS/FAIL line; over the limit fails."""
    start = time.perf_counter()
    ok, why = False, ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        why = f" ({str(exc).splitlines()[0] if str(exc) else 'assertion failed'})"
        raise
    finally:
        elapsed = time.perf_counter() - start
        if ok and limit_s is not None and elapsed >= limit_s:
            ok, why = False, " (over the time limit)"
        limit = f" < {limit_s:g}s" if limit_s is not None else ""
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{elapsed:.2f}s{limit}]{why}"
        log.append(line)
        print(line)
    assert ok, line


def random_ep(rng, max_prefix, max_symbol, max_period=3):
    prefix = tuple(rng.randint(0, max_symbol) for _ in range(rng.randint(0, max_prefix)))
    period = tuple(rng.randint(0, max_symbol) for _ in range(rng.randint(1, max_period)))
    return EventuallyPeriodic(prefix, period)


def test_criterion_1_example1_dual_representation(acceptance_log):
    code, formula = builtin_example1()
    rng = random.Random(20240101)
    configs = [random_ep(rng, 20, 20) for _ in range(1000)]
    with criterion(acceptance_log, 1, "example 1 prober == direct formula on 1000 configs x g in 0..10", 5):
        mismatches = [
            (x, g)
            for x in configs
            for g in range(11)
            if evaluate(code, x, g) != evaluate(formula, x, g)
            or evaluate(code, x, g) != x.get(g + x.get(g))
        ]
        assert not mismatches, f"{len(mismatches)} mismatches, first {mismatches[0]}"


def test_criterion_2_commutation(acceptance_log):
    rng = random.Random(2)
    maps = [builtin_example1()[0], builtin_example2([[0, 1]]), identity_code()]
    scales = []
    for _ in range(20):
        R, M = rng.randint(0, 3), rng.randint(1, 3)
        scales.append(M)
        maps.append(GeneralizedCode(random_partition(rng, Monoid.N, R, M), name=f"random R={R} M={M}"))
    with criterion(acceptance_log, 2, "commutation: 23 maps pass, broken map refuted (200 samples)", 30):
        for k, m in enumerate(maps):
            max_symbol = scales[k - 3] if k >= 3 else 5
            rep = check_commutation(m, samples=200, shift_range=range(9), seed=42 + k, max_symbol=max_symbol)
            assert rep.passed, f"{m.name}: {rep.counterexample}"
            assert not rep.findings, f"{m.name}: {rep.findings[0]}"
            assert rep.tested == 200 * 81
        bad = check_commutation(broken_map(), samples=200, shift_range=range(9), seed=42)
        assert not bad.passed, "broken map was not refuted"
        ce = bad.counterexample
        assert evaluate(broken_map(), ce.x.shift(ce.h), ce.g) != evaluate(broken_map(), ce.x, ce.g + ce.h)


def test_criterion_3_example2_non_continuity(acceptance_log):
    m = builtin_example2([[0, 1]])
    with criterion(acceptance_log, 3, "example 2: all-zero patterns split for k <= 8, none learned at R=8 M=1", 10):
        for k in range(1, 9):
            zeros = Pattern.of({i: 0 for i in range(k)})
            r = check_determination(m, zeros, 1)
            assert isinstance(r, Split), f"k={k}: {r}"
            assert evaluate(m, r.extension1, 0) != evaluate(m, r.extension2, 0)
        learned = learn_partition(m, 8, 1)
        for k in range(1, 10):
            zeros = overlay(Pattern.of({i: 0 for i in range(k)}), [0], Monoid.N)
            hits = [c for _, c in learned.partition.ordered() if cylinder_contains(c, zeros)]
            assert not hits, f"learned {hits[0]} covers the zero configuration"


def test_criterion_4_theorem_roundtrip(acceptance_log):
    rng = random.Random(4)
    partitions = [random_partition(rng, Monoid.N, 2, 2) for _ in range(20)]
    ball = (0, 1, 2)
    words = FullShift().enumerate_words(ball, 2)
    rows = pattern_rows(words, ball)
    with criterion(acceptance_log, 4, "round trip partition -> black box -> learn -> compile, 20 partitions", 60):
        for k, part in enumerate(partitions):
            original = GeneralizedCode(part)
            learned = learn_partition(as_black_box(original), 2, 2)
            assert not learned.unresolved, f"partition {k}: {len(learned.unresolved)} unresolved"
            compiled = compile_partition(learned.partition)
            want, _ = compile_partition(part).match_rows(ball, rows)
            got, _ = compiled.match_rows(ball, rows)
            assert want.tolist() == got.tolist(), f"partition {k} disagrees on the ball"
            for w in words:
                for g in range(3):
                    x = overlay(w.translate(g), [0], Monoid.N)
                    assert compiled.match(x.shift(g)).output == evaluate(original, x, g)


def test_criterion_5_classical_embedding(acceptance_log):
    rng = random.Random(5)
    codes = [random_classical_code(rng, Monoid.Z if k % 2 else Monoid.N, 2) for k in range(10)]
    with criterion(acceptance_log, 5, "classical tables: embedding agrees, radius bounded(classical)", 30):
        for c in codes:
            gen = classical_to_generalized(c, 2)
            lo, hi = min(c.neighborhood + (0,)), max(c.neighborhood + (0,))
            for w in FullShift().enumerate_words(range(lo, hi + 1), 2):
                for g in (-1, 0, 1) if c.monoid is Monoid.Z else (0, 1):
                    x = overlay(w.translate(g), [0], c.monoid)
                    assert eval_classical(c, x, g) == eval_generalized(gen, x, g)
            r = classify_radius(c, 2, 2)
            assert r == Bounded(classical_radius(c), r.checked), f"{c.neighborhood}: {r}"


def test_criterion_6_unbounded_radius(acceptance_log):
    code, _ = builtin_example1()
    with criterion(acceptance_log, 6, "example 1 exceeds R for R = 1..5; r(x,g) = x_g for x_g <= 10", None):
        for R in range(1, 6):
            r = classify_radius(code, R, R + 2)
            assert isinstance(r, Exceeds) and r.limit == R, f"R={R}: {r}"
            assert r.radius > R
            assert variable_radius(code, r.witness, r.g) == r.radius
            assert evaluate(code, r.witness, r.g) == example1_formula(r.witness, r.g)
        for n in range(11):
            for g in (0, 3):
                x = overlay(Pattern.of({g: n}), [1], Monoid.N)
                assert variable_radius(code, x, g) == n
                assert match_at(code, x, g).witness == ((0,) if n == 0 else (0, n))


CLI_RUNS = [
    ["demo", "--seed", "7"],
    ["demo", "--max-radius", "1"],
    ["check", "commute", "builtin:example1", "--samples", "50"],
    ["check", "commute", "builtin:broken"],
    ["check", "commute", "builtin:example2?blocks=[[0,1]]", "--samples", "50", "--seed", "3"],
    ["check", "determine", "builtin:example2?blocks=[[0,1]]", "--pattern", "0@0,0@1"],
    ["check", "determine", "builtin:example1", "--pattern", "1@0,4@1", "-M", "3", "--json"],
    ["check", "radius", "builtin:example1", "-R", "3"],
    ["learn", "builtin:example1", "-R", "3", "-M", "3"],
    ["learn", "builtin:example2?blocks=[[0,1]]", "-R", "4", "-M", "1", "--json"],
]


def test_criterion_7_cli_determinism(acceptance_log):
    def run(argv):
        p = subprocess.run([sys.executable, "-m", "gsbc.cli", *argv], capture_output=True, check=False)
        return p.returncode, p.stdout, p.stderr

    with criterion(acceptance_log, 7, f"byte-identical CLI output across two runs ({len(CLI_RUNS)} invocations)", None):
        for argv in CLI_RUNS:
            first, second = run(argv), run(argv)
            assert first == second, f"gsbc {' '.join(argv)} differs between runs"
            assert first[1], f"gsbc {' '.join(argv)} printed nothing"
