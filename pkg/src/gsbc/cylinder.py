"""Cylinder partitions {C_b}: explicit lists, adaptive probers, compiled
decision-tree matchers, validation at desk scale and extraction of finite
slices from probers."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .config import Config, Pattern
from .errors import BudgetExceeded, DomainError, NoMatch, ParseError, PartitionTooDeep, Undecided
from .monoid import Monoid
from .shift_space import FullShift, ShiftSpace, check_enumeration, space_from_json

# A cylinder [a]_D is described by the pattern fixing a on D; the empty
# pattern is the whole space.
Cylinder = Pattern

Prober = Callable[[Callable[[int], int]], int]

DEFAULT_MAX_DEPTH = 64


def cylinder_contains(c: Cylinder, x: Config) -> bool:
    return all(x.get(i) == a for i, a in c.items)


def cylinders_jointly_satisfiable(c1: Cylinder, c2: Cylinder, space: ShiftSpace | None = None) -> bool:
    merged = c1.merge(c2)
    if merged is None:
        return False
    return (space or FullShift()).pattern_in_language(merged)


@dataclass(frozen=True)
class MatchResult:
    output: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class ExplicitPartition:
    """Finitely many cylinders per output symbol.

    Matching scans outputs in ascending order and, within one output, the
    cylinders in the order they were given; the first hit wins.
    """

    entries: tuple[tuple[int, tuple[Pattern, ...]], ...]
    space: ShiftSpace = field(default_factory=FullShift)
    monoid: Monoid = Monoid.N

    def __post_init__(self):
        grouped: dict[int, list[Pattern]] = defaultdict(list)
        for output, cylinders in self.entries:
            if not isinstance(output, int) or output < 0:
                raise DomainError(f"output symbol must be a nonnegative int, got {output!r}")
            for c in cylinders:
                if not isinstance(c, Pattern):
                    raise DomainError(f"cylinders must be Patterns, got {c!r}")
                for i in c.domain:
                    self.monoid.check(i)
                grouped[output].append(c)
        object.__setattr__(
            self, "entries", tuple((b, tuple(grouped[b])) for b in sorted(grouped))
        )

    @classmethod
    def from_cylinders(cls, pairs: Iterable[tuple[Pattern, int]], space=None, monoid=Monoid.N):
        grouped: dict[int, list[Pattern]] = defaultdict(list)
        for c, b in pairs:
            grouped[b].append(c)
        return cls(tuple(grouped.items()), space or FullShift(), monoid)

    def ordered(self) -> list[tuple[int, Pattern]]:
        return [(b, c) for b, cs in self.entries for c in cs]

    def __len__(self):
        return sum(len(cs) for _, cs in self.entries)

    @property
    def max_radius(self) -> int:
        return max((abs(i) for _, c in self.ordered() for i in c.domain), default=0)

    def to_json(self) -> dict:
        return {
            "version": 1,
            "monoid": self.monoid.value,
            "space": self.space.to_json(),
            "entries": [
                {"output": b, "cylinders": [c.to_json() for c in cs]} for b, cs in self.entries
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "ExplicitPartition":
        if not isinstance(obj, dict) or obj.get("version") != 1:
            raise ParseError("partition JSON must be an object with version 1")
        try:
            monoid = Monoid.parse(obj.get("monoid", "N"))
            space = space_from_json(obj.get("space", {"space": "full"}))
            entries = tuple(
                (int(e["output"]), tuple(Pattern.from_json(c) for c in e["cylinders"]))
                for e in obj["entries"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad partition JSON: {exc}") from exc
        return cls(entries, space, monoid)


@dataclass(frozen=True)
class ProceduralPartition:
    """A partition presented by an adaptive prober.

    ``prober(probe)`` may only look at the configuration through ``probe(i)``
    and must eventually return the output symbol; its level sets are then
    unions of cylinders.
    """

    name: str
    prober: Prober = field(compare=False, repr=False)
    budget: int = 256
    space: ShiftSpace = field(default_factory=FullShift)
    monoid: Monoid = Monoid.N


class _ProbeCounter:
    """Caching coordinate oracle that enforces a distinct-probe budget."""

    __slots__ = ("lookup", "budget", "seen", "trace")

    def __init__(self, lookup, budget):
        self.lookup = lookup
        self.budget = budget
        self.seen = {}
        self.trace = []

    def __call__(self, i):
        v = self.seen.get(i)
        if v is None:
            if len(self.trace) >= self.budget:
                raise BudgetExceeded(self.trace + [i], self.budget)
            v = self.lookup(i)
            self.seen[i] = v
            self.trace.append(i)
        return v


def match_probe(P, probe: Callable[[int], int], budget: int = 256) -> MatchResult:
    """Match through a coordinate oracle instead of a Config."""
    if budget < 1:
        raise DomainError("budget must be >= 1")
    if isinstance(P, ProceduralPartition):
        oracle = _ProbeCounter(probe, budget)
        out = P.prober(oracle)
        return MatchResult(out, tuple(sorted(oracle.trace)))
    # explicit cylinders are skipped when longer than the budget instead
    oracle = _ProbeCounter(probe, float("inf"))
    if isinstance(P, PartitionMatcher):
        return P.match_probe(oracle)
    for b, c in P.ordered():
        if len(c) > budget:
            continue
        if all(oracle(i) == a for i, a in c.items):
            return MatchResult(b, c.domain)
    raise NoMatch(oracle.trace)


def match(P, x: Config, budget: int = 256) -> MatchResult:
    """The unique b with x in C_b, plus the index set that certified it."""
    return match_probe(P, x.get, budget)


class PartitionMatcher:
    """Decision tree equivalent to first-match scanning of an explicit partition.

    Node 0 is the root.  Internal nodes probe one index; edges are labelled
    by symbols, with an optional default edge for symbols no cylinder fixes
    at that index.  Leaves carry the matched cylinder (or none, for NoMatch).
    """

    def __init__(self, partition: ExplicitPartition, max_depth: int = DEFAULT_MAX_DEPTH):
        self.partition = partition
        self.cylinders = partition.ordered()
        self.max_depth = max_depth
        self._probe: list[int | None] = []
        self._edges: list[dict[int, int]] = []
        self._default: list[int] = []
        self._leaf: list[int | None] = []
        self.depth = 0
        self._build()
        self._flatten()

    def _new_node(self):
        self._probe.append(None)
        self._edges.append({})
        self._default.append(-1)
        self._leaf.append(None)
        return len(self._probe) - 1

    def _build(self):
        order = self.partition.monoid.probe_position
        live0 = [(k, c.as_dict()) for k, (_, c) in enumerate(self.cylinders)]
        stack = [(self._new_node(), live0, 0)]
        while stack:
            node, live, depth = stack.pop()
            if not live:
                continue
            k0, rem0 = live[0]
            if not rem0:
                self._leaf[node] = k0
                continue
            if depth >= self.max_depth:
                raise PartitionTooDeep(f"decision tree deeper than {self.max_depth}")
            self.depth = max(self.depth, depth + 1)
            i = min(rem0, key=order)
            self._probe[node] = i
            symbols = sorted({rem[i] for _, rem in live if i in rem})
            for s in symbols:
                child = [
                    (k, {j: a for j, a in rem.items() if j != i})
                    for k, rem in live
                    if rem.get(i, s) == s
                ]
                c = self._new_node()
                self._edges[node][s] = c
                stack.append((c, child, depth + 1))
            rest = [(k, rem) for k, rem in live if i not in rem]
            if rest:
                c = self._new_node()
                self._default[node] = c
                stack.append((c, rest, depth + 1))

    def _flatten(self):
        n = len(self._probe)
        starts, stops, syms, kids = [], [], [], []
        for node in range(n):
            starts.append(len(syms))
            for s in sorted(self._edges[node]):
                syms.append(s)
                kids.append(self._edges[node][s])
            stops.append(len(syms))
        as_arr = lambda v: np.asarray(v, dtype=np.int64)
        self.edge_start, self.edge_stop = as_arr(starts), as_arr(stops)
        self.edge_sym, self.edge_child = as_arr(syms), as_arr(kids)
        self.default_child = as_arr(self._default)

    @property
    def n_nodes(self) -> int:
        return len(self._probe)

    def match_probe(self, probe: Callable[[int], int]) -> MatchResult:
        node, path = 0, []
        while True:
            i = self._probe[node]
            if i is None:
                k = self._leaf[node]
                if k is None:
                    raise NoMatch(path)
                b, c = self.cylinders[k]
                return MatchResult(b, c.domain)
            path.append(i)
            node = self._edges[node].get(probe(i), self._default[node])
            if node < 0:
                raise NoMatch(path)

    def match(self, x: Config) -> MatchResult:
        return self.match_probe(x.get)

    def match_rows(self, domain: Sequence[int], rows) -> tuple[np.ndarray, np.ndarray]:
        """Batch-match patterns given as rows of symbols on ``domain``.

        Returns ``(outputs, leaves)``: output -1 means no cylinder matched,
        -2 means the tree needs an index outside ``domain``.
        """
        col = {i: k for k, i in enumerate(domain)}
        probe_col = np.asarray(
            [-1 if p is None else col.get(p, -2) for p in self._probe], dtype=np.int64
        )
        rows = np.ascontiguousarray(rows, dtype=np.int64).reshape(-1, len(domain))
        leaves = kernels.walk_tree(
            probe_col, self.edge_start, self.edge_stop, self.edge_sym,
            self.edge_child, self.default_child, rows,
        )
        lookup = np.asarray(
            [-1 if k is None else self.cylinders[k][0] for k in self._leaf], dtype=np.int64
        )
        outputs = np.where(leaves >= 0, lookup[np.maximum(leaves, 0)], leaves)
        return outputs, leaves

    def as_procedural(self, name: str = "compiled") -> ProceduralPartition:
        return ProceduralPartition(
            name, lambda probe: self.match_probe(probe).output,
            space=self.partition.space, monoid=self.partition.monoid,
        )


def compile_partition(P: ExplicitPartition, max_depth: int = DEFAULT_MAX_DEPTH) -> PartitionMatcher:
    return PartitionMatcher(P, max_depth)


def pattern_rows(patterns: Sequence[Pattern], domain: Sequence[int]) -> np.ndarray:
    if not patterns:
        return np.zeros((0, len(domain)), dtype=np.int64)
    return np.asarray([[p[i] for i in domain] for p in patterns], dtype=np.int64).reshape(-1, len(domain))


@dataclass
class ValidationReport:
    radius: int
    max_symbol: int
    checked: int = 0
    violations: list[tuple[int, Pattern, int, Pattern]] = field(default_factory=list)
    undecided: list[tuple[Pattern, Pattern]] = field(default_factory=list)
    uncovered: list[Pattern] = field(default_factory=list)

    @property
    def disjoint(self) -> bool:
        return not self.violations

    @property
    def covered(self) -> bool:
        return not self.uncovered

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "max_symbol": self.max_symbol,
            "checked": self.checked,
            "disjoint": self.disjoint,
            "violations": [
                {"output1": b1, "cylinder1": c1.to_json(), "output2": b2, "cylinder2": c2.to_json()}
                for b1, c1, b2, c2 in self.violations
            ],
            "undecided": [[c1.to_json(), c2.to_json()] for c1, c2 in self.undecided],
            "uncovered": [p.to_json() for p in self.uncovered],
        }


def validate_partition(P: ExplicitPartition, radius: int, max_symbol: int) -> ValidationReport:
    """Exact cross-output disjointness plus coverage of the radius ball
    at symbols <= max_symbol."""
    ball = P.monoid.ball(radius)
    check_enumeration(len(ball), max_symbol)
    report = ValidationReport(radius, max_symbol)
    cyls = P.ordered()
    for k, (b1, c1) in enumerate(cyls):
        for b2, c2 in cyls[k + 1:]:
            if b1 == b2:
                continue
            try:
                if cylinders_jointly_satisfiable(c1, c2, P.space):
                    report.violations.append((b1, c1, b2, c2))
            except Undecided:
                report.undecided.append((c1, c2))
    words = P.space.enumerate_words(ball, max_symbol)
    report.checked = len(words)
    inside = set(ball)
    fitting = ExplicitPartition(
        tuple((b, tuple(c for c in cs if set(c.domain) <= inside)) for b, cs in P.entries),
        P.space, P.monoid,
    )
    outputs, _ = compile_partition(fitting).match_rows(ball, pattern_rows(words, ball))
    report.uncovered = [w for w, o in zip(words, outputs.tolist()) if o < 0]
    return report


@dataclass
class Extraction:
    partition: ExplicitPartition
    unresolved: list[Pattern]


class _Need(Exception):
    def __init__(self, index):
        self.index = index


def extract_cylinders(P: ProceduralPartition, max_depth: int, max_symbol: int) -> Extraction:
    """Run the prober on every probe path of length <= max_depth whose
    symbols are <= max_symbol; each finished run is a cylinder."""
    alphabet = P.space.alphabet_hint(max_symbol)
    found: list[tuple[Pattern, int]] = []
    unresolved: list[Pattern] = []
    stack: list[dict[int, int]] = [{}]
    while stack:
        assign = stack.pop()
        used: set[int] = set()

        def probe(i):
            if i not in assign:
                raise _Need(i)
            used.add(i)
            return assign[i]

        try:
            out = P.prober(probe)
        except _Need as need:
            if len(assign) >= max_depth:
                unresolved.append(Pattern.of(assign))
                continue
            P.monoid.check(need.index)
            for a in reversed(alphabet):
                nxt = dict(assign)
                nxt[need.index] = a
                if P.space.pattern_in_language(Pattern.of(nxt)):
                    stack.append(nxt)
            continue
        found.append((Pattern.of({i: assign[i] for i in used}), out))
    return Extraction(ExplicitPartition.from_cylinders(found, P.space, P.monoid), unresolved)
