"""Desk-scale checks of the characterization of generalized sliding block
codes as the continuous, shift-commuting maps.

* :func:`check_commutation` searches for (x, g, h) with
  Phi(shift(h, x))_g != Phi(x)_{g+h}.
* :func:`check_determination` tests whether the output at index 0 is fixed
  on a cylinder (local determination, i.e. continuity at that cylinder).
* :func:`learn_partition` rebuilds the partition C_b = {x : Phi(x)_0 = b}
  from a black box, one determined cylinder at a time.
* :func:`classify_radius` separates bounded-radius (classical) codes from
  codes whose radius grows with the configuration.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .codes import ClassicalCode, Code, classical_to_generalized, evaluate, variable_radius
from .config import Config, Pattern, overlay
from .cylinder import ExplicitPartition, PartitionMatcher, ProceduralPartition, match_probe
from .errors import GSBCError, NoMatch
from .monoid import Monoid
from .shift_space import ForbiddenPatterns, ShiftSpace, SubalphabetUnion, check_enumeration


def _describe(exc: Exception) -> str:
    return f"{type(exc).__name__}: {exc}"


@dataclass(frozen=True)
class Counterexample:
    x: Config
    g: int
    h: int
    lhs: int
    rhs: int

    def to_json(self):
        return {"x": str(self.x), "g": self.g, "h": self.h, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class CommutationReport:
    tested: int
    seed: int
    counterexample: Counterexample | None = None
    findings: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self):
        return {
            "verdict": "pass" if self.passed else "counterexample",
            "tested": self.tested,
            "seed": self.seed,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
            "findings": self.findings,
        }


def check_commutation(
    m: Code,
    samples: int = 200,
    shift_range: Iterable[int] = range(9),
    seed: int = 42,
    max_symbol: int = 5,
    budget: int | None = None,
) -> CommutationReport:
    """Compare Phi(shift(h, x))_g with Phi(x)_{g+h} on seeded random configs
    of the map's domain space, for all g, h in ``shift_range``."""
    rng = random.Random(seed)
    shifts = sorted(set(shift_range))
    report = CommutationReport(0, seed)
    for _ in range(samples):
        x = m.space.sample_config(rng, m.monoid, max_symbol)
        for h in shifts:
            for g in shifts:
                try:
                    lhs = evaluate(m, x.shift(h), g, budget)
                    rhs = evaluate(m, x, g + h, budget)
                except GSBCError as exc:
                    report.findings.append({"x": str(x), "g": g, "h": h, "error": _describe(exc)})
                    continue
                report.tested += 1
                if lhs != rhs:
                    report.counterexample = Counterexample(x, g, h, lhs, rhs)
                    return report
    return report


@dataclass(frozen=True)
class Determined:
    output: int
    certificate: Pattern
    tested: int

    kind = "determined"

    def to_json(self):
        return {"result": self.kind, "output": self.output,
                "certificate": self.certificate.to_json(), "tested": self.tested}


@dataclass(frozen=True)
class Split:
    pattern: Pattern
    extension1: Config
    extension2: Config
    outputs: tuple[int, int]

    kind = "split"

    def to_json(self):
        return {"result": self.kind, "pattern": self.pattern.to_json(),
                "extension1": str(self.extension1), "extension2": str(self.extension2),
                "outputs": list(self.outputs)}


@dataclass(frozen=True)
class Unresolved:
    pattern: Pattern
    reason: str

    kind = "unresolved"

    def to_json(self):
        return {"result": self.kind, "pattern": self.pattern.to_json(), "reason": self.reason}


DeterminationResult = Union[Determined, Split, Unresolved]


def next_free_index(p: Pattern, monoid: Monoid) -> int:
    k = 0
    while monoid.probe_order(k) in p:
        k += 1
    return monoid.probe_order(k)


def completions(
    p: Pattern,
    monoid: Monoid,
    space: ShiftSpace,
    max_symbol: int,
    free_indices: Sequence[int],
    tail_periods: Sequence[Sequence[int]],
):
    """Configurations of ``space`` extending p: every assignment <= max_symbol
    on ``free_indices``, all other coordinates taken from each tail period."""
    free = [i for i in free_indices if i not in p]
    alphabet = space.alphabet_hint(max_symbol)
    for symbols in itertools.product(alphabet, repeat=len(free)):
        q = Pattern(p.items + tuple(zip(free, symbols)))
        for tail in tail_periods:
            x = overlay(q, tail, monoid)
            if space.config_in_space(x):
                yield x


def check_determination(
    m: Code,
    p: Pattern,
    max_symbol: int,
    tail_periods: Sequence[Sequence[int]] | None = None,
    free_indices: Sequence[int] | None = None,
    budget: int | None = None,
) -> DeterminationResult:
    """Is Phi(x)_0 the same for all tested x in the cylinder of p?

    By default the tested extensions vary the next index (in probe order)
    outside p over 0..max_symbol and close everything else with each
    constant tail; ``free_indices`` and ``tail_periods`` widen the search.
    """
    if tail_periods is None:
        tail_periods = [[c] for c in m.space.alphabet_hint(max_symbol)]
    if free_indices is None:
        free_indices = [next_free_index(p, m.monoid)]
    first: tuple[int, Config] | None = None
    tested = 0
    errors: list[str] = []
    for x in completions(p, m.monoid, m.space, max_symbol, free_indices, tail_periods):
        try:
            out = evaluate(m, x, 0, budget)
        except GSBCError as exc:
            errors.append(f"{x}: {_describe(exc)}")
            continue
        tested += 1
        if first is None:
            first = (out, x)
        elif out != first[0]:
            return Split(p, first[1], x, (first[0], out))
    if errors:
        return Unresolved(p, f"{len(errors)} evaluation failures; first: {errors[0]}")
    if first is None:
        return Unresolved(p, "no tested extension lies in the domain space")
    return Determined(first[0], p, tested)


@dataclass
class LearnedPartition:
    partition: ExplicitPartition
    radius: int
    max_symbol: int
    unresolved: list[Pattern] = field(default_factory=list)
    # Split certificates for unresolved patterns that split at every refinement
    certificates: list[Split] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "radius": self.radius,
            "max_symbol": self.max_symbol,
            "cylinders": len(self.partition),
            "outputs": [b for b, _ in self.partition.entries],
            "unresolved": len(self.unresolved),
            "non_continuity_certificates": len(self.certificates),
        }


def learn_partition(
    m: Code,
    radius: int,
    max_symbol: int,
    tail_periods: Sequence[Sequence[int]] | None = None,
    budget: int | None = None,
) -> LearnedPartition:
    """Learn cylinders of C_b = {x : Phi(x)_0 = b} inside the radius ball.

    Patterns are refined breadth-first.  A pattern whose output is the same
    on every extension at scale (all assignments <= max_symbol of the free
    ball indices, closed with constant tails) becomes a cylinder of C_b.
    Otherwise it is split on one more ball index: the first one, in probe
    order, whose children all become determined, else the first free one.
    """
    monoid = m.monoid
    ball = monoid.probe_sorted(monoid.ball(radius))
    check_enumeration(len(ball), max_symbol)
    alphabet = m.space.alphabet_hint(max_symbol)
    cache: dict[Pattern, DeterminationResult] = {}

    def determine(p):
        r = cache.get(p)
        if r is None:
            r = check_determination(m, p, max_symbol, tail_periods, ball, budget)
            cache[p] = r
        return r

    def children(p, i):
        kids = [p.extend(i, a) for a in alphabet]
        return [q for q in kids if m.space.pattern_in_language(q)]

    found: list[tuple[Pattern, int]] = []
    learned = LearnedPartition(ExplicitPartition((), m.space, monoid), radius, max_symbol)
    queue = deque([Pattern()])
    while queue:
        p = queue.popleft()
        r = determine(p)
        if isinstance(r, Determined):
            found.append((p, r.output))
            continue
        free = [i for i in ball if i not in p]
        if not free:
            learned.unresolved.append(p)
            if isinstance(r, Split):
                learned.certificates.append(r)
            continue
        chosen = free[0]
        for i in free:
            if all(isinstance(determine(q), Determined) for q in children(p, i)):
                chosen = i
                break
        queue.extend(children(p, chosen))
    learned.partition = ExplicitPartition.from_cylinders(found, m.space, monoid)
    return learned


@dataclass(frozen=True)
class Bounded:
    radius: int
    checked: int
    findings: tuple[str, ...] = ()

    kind = "bounded"

    def to_json(self):
        return {"result": self.kind, "radius": self.radius, "checked": self.checked,
                "findings": list(self.findings)}


@dataclass(frozen=True)
class Exceeds:
    limit: int
    witness: Config
    g: int
    radius: int
    findings: tuple[str, ...] = ()

    kind = "exceeds"

    def to_json(self):
        return {"result": self.kind, "limit": self.limit, "witness": str(self.witness),
                "g": self.g, "radius": self.radius, "findings": list(self.findings)}


RadiusClass = Union[Bounded, Exceeds]


def witness_config(space: ShiftSpace, p: Pattern, monoid: Monoid) -> Config:
    """Some configuration of ``space`` extending p (small filler symbols)."""
    if isinstance(space, ForbiddenPatterns):
        return space.complete(p, monoid)
    fill = 0
    if isinstance(space, SubalphabetUnion):
        block = space.block_of(p.symbols[0]) if len(p) else space.blocks[0]
        fill = min(block) if block else 0
    return overlay(p, [fill], monoid)


class _Need(Exception):
    def __init__(self, index):
        self.index = index


class _Outside(Exception):
    def __init__(self, index):
        self.index = index


def classify_radius(c: Code, radius: int, max_symbol: int, budget: int | None = None) -> RadiusClass:
    """Largest variable radius over all language patterns on the radius ball
    with symbols <= max_symbol, or a configuration needing more than ``radius``."""
    if isinstance(c, ClassicalCode):
        c = classical_to_generalized(c, max_symbol)
    P = c.partition
    monoid = c.monoid
    ball = monoid.ball(radius)
    check_enumeration(len(ball), max_symbol)
    if isinstance(P, PartitionMatcher):
        P = P.partition
    if isinstance(P, ExplicitPartition):
        return _classify_explicit(c, P, ball, radius, max_symbol, budget)
    return _classify_procedural(c, P, ball, radius, max_symbol, budget)


def _exceeds(c, p, radius, budget, findings):
    x = witness_config(c.space, p, c.monoid)
    return Exceeds(radius, x, 0, variable_radius(c, x, 0, budget), tuple(findings))


def _classify_explicit(c, P, ball, radius, max_symbol, budget):
    inside = set(ball)
    best, findings = 0, []
    words = c.space.enumerate_words(ball, max_symbol)
    for w in words:
        for b, cyl in P.ordered():
            merged = w.merge(cyl)
            if merged is None:
                continue
            if set(cyl.domain) <= inside:
                best = max(best, max((abs(i) for i in cyl.domain), default=0))
                break
            if c.space.pattern_in_language(merged):
                return _exceeds(c, merged, radius, budget, findings)
        else:
            findings.append(f"NoMatch: {w}")
    return Bounded(best, len(words), tuple(findings))


def _classify_procedural(c, P: ProceduralPartition, ball, radius, max_symbol, budget):
    inside = set(ball)
    alphabet = c.space.alphabet_hint(max_symbol)
    budget = budget or c.budget or P.budget
    best, leaves, findings = 0, 0, []
    stack = [Pattern()]
    while stack:
        p = stack.pop()
        assign = p.as_dict()

        def probe(i):
            if i in assign:
                return assign[i]
            raise _Need(i) if i in inside else _Outside(i)

        try:
            res = match_probe(P, probe, budget)
        except _Need as need:
            kids = [p.extend(need.index, a) for a in alphabet]
            stack.extend(reversed([q for q in kids if c.space.pattern_in_language(q)]))
            continue
        except _Outside:
            return _exceeds(c, p, radius, budget, findings)
        except (GSBCError, NoMatch) as exc:
            findings.append(f"{p}: {_describe(exc)}")
            continue
        leaves += 1
        best = max(best, max((abs(i) for i in res.witness), default=0))
    return Bounded(best, leaves, tuple(findings))
