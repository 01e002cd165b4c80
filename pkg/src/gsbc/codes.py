"""Classical and generalized sliding block codes, black-box maps, and the
two example maps x -> (x_{j + x_j})_j and x -> (max_{i >= j} x_i)_j."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

from . import kernels
from .config import BiPeriodic, Config, EventuallyPeriodic, GeneratorBacked, Pattern
from .cylinder import (
    ExplicitPartition,
    MatchResult,
    PartitionMatcher,
    ProceduralPartition,
    match,
)
from .errors import BudgetExceeded, DomainError, GSBCError, NotDecidable, RuleIncomplete
from .monoid import Monoid
from .shift_space import FullShift, ShiftSpace, SubalphabetUnion

DEFAULT_BUDGET = 256


def default_budget() -> int:
    """Per-coordinate probe budget; ``GSBC_BUDGET`` overrides the default."""
    env = os.environ.get("GSBC_BUDGET")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise DomainError(f"GSBC_BUDGET must be an integer, got {env!r}") from None
        if value < 1:
            raise DomainError("GSBC_BUDGET must be >= 1")
        return value
    return DEFAULT_BUDGET


LocalRule = Union[Mapping[tuple, int], Callable[[tuple], int]]


@dataclass(frozen=True)
class ClassicalCode:
    """Fixed neighborhood plus local rule on the symbols seen there.

    ``rule`` is either a finite table keyed by symbol tuples (in the order of
    ``neighborhood``) or a pure function of such a tuple.
    """

    neighborhood: tuple[int, ...]
    rule: LocalRule = field(compare=False)
    space: ShiftSpace = field(default_factory=FullShift)
    monoid: Monoid = Monoid.N
    name: str = "classical"

    def __post_init__(self):
        nb = tuple(sorted(set(self.neighborhood)))
        for i in nb:
            self.monoid.check(i)
        object.__setattr__(self, "neighborhood", nb)

    @property
    def is_table(self) -> bool:
        return not callable(self.rule)

    def local(self, symbols: tuple) -> int:
        if callable(self.rule):
            return self.rule(symbols)
        try:
            return self.rule[symbols]
        except KeyError:
            raise RuleIncomplete(Pattern(tuple(zip(self.neighborhood, symbols)))) from None


@dataclass(frozen=True)
class GeneralizedCode:
    partition: ExplicitPartition | ProceduralPartition | PartitionMatcher
    space: ShiftSpace | None = None
    budget: int | None = None
    name: str = "generalized"

    def __post_init__(self):
        if self.space is None:
            P = self.partition
            space = P.partition.space if isinstance(P, PartitionMatcher) else P.space
            object.__setattr__(self, "space", space)

    @property
    def monoid(self) -> Monoid:
        P = self.partition
        return P.partition.monoid if isinstance(P, PartitionMatcher) else P.monoid


@dataclass(frozen=True)
class BlackBoxMap:
    """Opaque map given by ``fn(x, g)``, the g-th output coordinate."""

    name: str
    fn: Callable[[Config, int], int] = field(compare=False, repr=False)
    space: ShiftSpace = field(default_factory=FullShift)
    monoid: Monoid = Monoid.N


Code = Union[ClassicalCode, GeneralizedCode, BlackBoxMap]


def eval_classical(c: ClassicalCode, x: Config, g: int) -> int:
    y = x.shift(g)
    return c.local(tuple(y.get(i) for i in c.neighborhood))


def eval_generalized(c: GeneralizedCode, x: Config, g: int, budget: int | None = None) -> int:
    return match_at(c, x, g, budget).output


def match_at(c: GeneralizedCode, x: Config, g: int, budget: int | None = None) -> MatchResult:
    budget = budget or c.budget or default_budget()
    return match(c.partition, x.shift(g), budget)


def evaluate(code: Code, x: Config, g: int, budget: int | None = None) -> int:
    """Output coordinate g of code applied to x, for any code form."""
    if isinstance(code, GeneralizedCode):
        return eval_generalized(code, x, g, budget)
    if isinstance(code, ClassicalCode):
        return eval_classical(code, x, g)
    if isinstance(code, BlackBoxMap):
        return code.fn(x, g)
    raise TypeError(f"not a code: {code!r}")


def eval_window(code: Code, x: Config, indices: Iterable[int], budget: int | None = None) -> Pattern:
    out = []
    for g in sorted(set(indices)):
        try:
            out.append((g, evaluate(code, x, g, budget)))
        except GSBCError as exc:
            exc.at_index = g
            raise
    return Pattern(tuple(out))


def classical_radius(c: ClassicalCode) -> int:
    return max((Monoid.distance(i, 0) for i in c.neighborhood), default=0)


def variable_radius(c: GeneralizedCode, x: Config, g: int, budget: int | None = None) -> int:
    witness = match_at(c, x, g, budget).witness
    return max((Monoid.distance(i, 0) for i in witness), default=0)


def radius_at(code: Code, x: Config, g: int, budget: int | None = None) -> int | None:
    """Radius used at (x, g): fixed for classical codes, variable for
    generalized ones, unknown (None) for black boxes."""
    if isinstance(code, ClassicalCode):
        return classical_radius(code)
    if isinstance(code, GeneralizedCode):
        return variable_radius(code, x, g, budget)
    return None


def classical_to_generalized(c: ClassicalCode, max_symbol: int) -> GeneralizedCode:
    """One cylinder per local-rule entry with symbols <= max_symbol."""
    N = c.neighborhood
    if c.is_table:
        entries = [
            (Pattern(tuple(zip(N, key))), out)
            for key, out in c.rule.items()
            if all(a <= max_symbol for a in key)
        ]
        entries = [(p, out) for p, out in entries if c.space.pattern_in_language(p)]
    else:
        entries = [(p, c.rule(p.symbols)) for p in c.space.enumerate_words(N, max_symbol)]
    P = ExplicitPartition.from_cylinders(entries, c.space, c.monoid)
    return GeneralizedCode(P, c.space, name=f"{c.name} (as partition)")


def as_black_box(code: Code, budget: int | None = None) -> BlackBoxMap:
    if isinstance(code, BlackBoxMap):
        return code
    return BlackBoxMap(
        f"blackbox({code.name})",
        lambda x, g: evaluate(code, x, g, budget),
        code.space,
        code.monoid,
    )


def compose(outer: Code, inner: Code, budget: int | None = None) -> BlackBoxMap:
    """x -> outer(inner(x)), evaluated on demand.

    The intermediate configuration is generator-backed; ``budget`` bounds
    the number of inner coordinates one outer evaluation may request.
    """
    budget = budget or default_budget()

    def fn(x: Config, g: int) -> int:
        cache: dict[int, int] = {}

        def inner_at(i: int) -> int:
            v = cache.get(i)
            if v is None:
                if len(cache) >= budget:
                    raise BudgetExceeded(list(cache) + [i], budget)
                try:
                    v = evaluate(inner, x, i, budget)
                except GSBCError as exc:
                    exc.at_index = i
                    raise
                cache[i] = v
            return v

        y = GeneratorBacked(inner_at, f"{inner.name}(x)", inner.monoid)
        return evaluate(outer, y, g, budget)

    return BlackBoxMap(f"{outer.name}∘{inner.name}", fn, inner.space, inner.monoid)


def identity_code(monoid: Monoid = Monoid.N, space: ShiftSpace | None = None) -> ClassicalCode:
    return ClassicalCode((0,), lambda s: s[0], space or FullShift(), monoid, name="identity")


# x -> (x_{j + x_j})_j


def _self_index_prober(probe):
    n = probe(0)
    return 0 if n == 0 else probe(n)


def example1_formula(x: Config, g: int) -> int:
    return x.get(g + x.get(g))


def example1_window(x: Config, n: int) -> list[int]:
    """Phi(x)_0 .. Phi(x)_{n-1} for the self-indexing map in one kernel call."""
    head = [x.get(j) for j in range(n)]
    extent = max((j + v for j, v in enumerate(head)), default=-1) + 1
    values = np.asarray(head + [x.get(i) for i in range(n, extent)], dtype=np.int64)
    return kernels.self_index_window(values)[:n].tolist()


def builtin_example1(monoid: Monoid = Monoid.N) -> tuple[GeneralizedCode, BlackBoxMap]:
    """The self-indexing map in both forms: an adaptive prober (read x_0 = n,
    then read x_n) and the raw formula as a black box."""
    P = ProceduralPartition("example1", _self_index_prober, budget=2, monoid=monoid)
    return (
        GeneralizedCode(P, FullShift(), name="example1"),
        BlackBoxMap("example1-formula", example1_formula, FullShift(), monoid),
    )


def example1_partition_slice(max_index: int, max_symbol: int) -> ExplicitPartition:
    """Finite piece of the example-1 partition: [0]_0 -> 0 and
    {0->n, n->b} -> b for 1 <= n <= max_index, b <= max_symbol."""
    pairs = [(Pattern(((0, 0),)), 0)]
    for n in range(1, max_index + 1):
        for b in range(max_symbol + 1):
            pairs.append((Pattern(((0, n), (n, b))), b))
    return ExplicitPartition.from_cylinders(pairs)


# x -> (max_{i >= j} x_i)_j over a union of full shifts on finite blocks


def tail_max(x: Config, g: int) -> int:
    y = x.shift(g)
    if isinstance(y, EventuallyPeriodic):
        return max(y.prefix + y.period)
    if isinstance(y, BiPeriodic):
        s, L, C, R = y.core_start, y.left_period, y.core, y.right_period
        vals = list(R)
        vals += [y.get(i) for i in range(max(0, s), s + len(C))]
        vals += [y.get(i) for i in range(max(0, s - len(L)), s)]
        return max(vals)
    raise NotDecidable(f"tail maximum of {x}")


def _check_blocks(blocks):
    space = SubalphabetUnion.of(blocks)
    if not any(len(b) >= 2 for b in space.blocks):
        raise DomainError("at least one block needs two or more symbols")
    return space


def builtin_example2(blocks: Sequence[Iterable[int]], monoid: Monoid = Monoid.N) -> BlackBoxMap:
    space = _check_blocks(blocks)
    name = "example2?blocks=" + str([sorted(b) for b in space.blocks]).replace(" ", "")
    return BlackBoxMap(name, tail_max, space, monoid)


def example2_prober(blocks: Sequence[Iterable[int]], budget: int = DEFAULT_BUDGET) -> ProceduralPartition:
    """Scans rightwards until it sees the largest symbol of the block of x_0.

    That certifies the tail maximum; on configurations that never show it
    the scan does not stop, which is exactly the failure of continuity.
    """
    space = _check_blocks(blocks)

    def prober(probe):
        a = probe(0)
        block = space.block_of(a)
        if block is None:
            raise DomainError(f"symbol {a} is in no block")
        top, i = max(block), 0
        while a != top:
            i += 1
            v = probe(i)
            if v not in block:
                raise DomainError(f"configuration leaves block {sorted(block)}")
            a = max(a, v)
        return top

    return ProceduralPartition("example2-prober", prober, budget, space)


def broken_map(monoid: Monoid = Monoid.N) -> BlackBoxMap:
    """Ignores g: every output coordinate is x_0.  Does not commute with shifts."""
    return BlackBoxMap("broken", lambda x, g: x.get(0), FullShift(), monoid)
