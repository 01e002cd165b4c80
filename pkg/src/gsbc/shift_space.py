"""Shift spaces with finitely checkable membership and desk-scale languages."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import BiPeriodic, Config, EventuallyPeriodic, Pattern, overlay, random_config
from .errors import DomainError, NotDecidable, ParseError, ScaleError, Undecided
from .monoid import Monoid

ENUMERATION_LIMIT = 10**6
DEFAULT_COMPLETION_BUDGET = 10**4


def check_enumeration(n_indices: int, max_symbol: int, limit: int = ENUMERATION_LIMIT) -> int:
    if max_symbol < 0:
        raise ScaleError("max_symbol must be >= 0")
    size = (max_symbol + 1) ** n_indices
    if size > limit:
        raise ScaleError(f"{max_symbol + 1}^{n_indices} = {size} patterns exceeds the limit {limit}")
    return size


class ShiftSpace:
    """Base class; subclasses decide membership for patterns and finite configs."""

    def pattern_in_language(self, p: Pattern, budget: int = DEFAULT_COMPLETION_BUDGET) -> bool:
        raise NotImplementedError

    def config_in_space(self, x: Config) -> bool:
        raise NotImplementedError

    def alphabet_hint(self, max_symbol: int) -> list[int]:
        """Symbols <= max_symbol that can occur at all."""
        return list(range(max_symbol + 1))

    def enumerate_words(self, domain: Sequence[int], max_symbol: int) -> list[Pattern]:
        """All language patterns on ``domain`` with symbols <= max_symbol,
        in lexicographic order of the symbol tuples."""
        domain = tuple(sorted(set(domain)))
        check_enumeration(len(domain), max_symbol)
        words = []
        for symbols in itertools.product(range(max_symbol + 1), repeat=len(domain)):
            p = Pattern(tuple(zip(domain, symbols)))
            if self.pattern_in_language(p):
                words.append(p)
        return words

    def sample_config(self, rng: random.Random, monoid: Monoid, max_symbol: int = 5, **kw) -> Config:
        return random_config(rng, monoid, max_symbol, **kw)

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class FullShift(ShiftSpace):
    def pattern_in_language(self, p, budget=DEFAULT_COMPLETION_BUDGET):
        return True

    def config_in_space(self, x):
        return True

    def to_json(self):
        return {"space": "full"}

    def __str__(self):
        return "full shift"


@dataclass(frozen=True)
class SubalphabetUnion(ShiftSpace):
    """Union of the full shifts over finitely many disjoint finite blocks."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        if not blocks:
            raise DomainError("need at least one block")
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise DomainError("blocks must be nonempty")
            if seen & b:
                raise DomainError(f"blocks overlap on {sorted(seen & b)}")
            if any(not isinstance(a, int) or a < 0 for a in b):
                raise DomainError("block symbols must be nonnegative integers")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "SubalphabetUnion":
        return cls(tuple(frozenset(b) for b in blocks))

    def block_of(self, a: int) -> frozenset[int] | None:
        for b in self.blocks:
            if a in b:
                return b
        return None

    def _within_one_block(self, symbols) -> bool:
        symbols = set(symbols)
        if not symbols:
            return True
        return any(symbols <= b for b in self.blocks)

    def pattern_in_language(self, p, budget=DEFAULT_COMPLETION_BUDGET):
        return self._within_one_block(p.symbols)

    def config_in_space(self, x):
        if not x.finite:
            raise NotDecidable(f"membership of {x}")
        return self._within_one_block(x.support())

    def alphabet_hint(self, max_symbol):
        return sorted(a for b in self.blocks for a in b if a <= max_symbol)

    def sample_config(self, rng, monoid, max_symbol=5, **kw):
        block = sorted(rng.choice(self.blocks))
        return random_config(rng, monoid, alphabet=block, **kw)

    def to_json(self):
        return {"space": "subalphabets", "blocks": [sorted(b) for b in self.blocks]}

    def __str__(self):
        return "union of " + " ".join("{" + ",".join(map(str, sorted(b))) + "}^G" for b in self.blocks)


@dataclass(frozen=True)
class ForbiddenPatterns(ShiftSpace):
    """Configurations in which no translate of a listed pattern occurs.

    Patterns are stored translated so that their least index is 0.
    """

    patterns: tuple[Pattern, ...]

    def __post_init__(self):
        pats = []
        for p in self.patterns:
            if not len(p):
                raise DomainError("the empty pattern cannot be forbidden (the space would be empty)")
            pats.append(p.translate(-p.items[0][0]))
        object.__setattr__(self, "patterns", tuple(pats))

    @property
    def max_diameter(self) -> int:
        return max((p.diameter() for p in self.patterns), default=0)

    @property
    def fresh_symbol(self) -> int:
        """A symbol occurring in no forbidden pattern."""
        return 1 + max((a for p in self.patterns for a in p.symbols), default=-1)

    def _occurs_at(self, f: Pattern, g: int, lookup) -> bool:
        for i, a in f.items:
            v = lookup(g + i)
            if v is None or v != a:
                return False
        return True

    def _internal_occurrence(self, d: dict[int, int]) -> bool:
        if not d:
            return False
        lo, hi = min(d), max(d)
        for f in self.patterns:
            for g in range(lo, hi - f.diameter() + 1):
                if self._occurs_at(f, g, d.get):
                    return True
        return False

    def complete(self, p: Pattern, monoid: Monoid = Monoid.Z, budget: int = DEFAULT_COMPLETION_BUDGET) -> Config:
        """A configuration of the space extending ``p``.

        Gaps inside the span of ``p`` get the least admissible symbol (with
        backtracking); everything outside gets a symbol that occurs in no
        forbidden pattern, so no occurrence can reach it.
        """
        d = p.as_dict()
        if self._internal_occurrence(d):
            raise DomainError(f"{p} contains a forbidden occurrence")
        fresh = self.fresh_symbol
        if not d:
            return overlay(p, [fresh], monoid)
        lo, hi = min(d), max(d)
        gaps = [i for i in range(lo, hi + 1) if i not in d]
        nodes = 0
        filled = dict(d)

        def clash_at(i):
            # occurrences whose rightmost cell is i and which lie inside the span
            for f in self.patterns:
                g = i - f.diameter()
                if g >= lo and self._occurs_at(f, g, filled.get):
                    return True
            return False

        def search(k):
            nonlocal nodes
            if k == len(gaps):
                return True
            i = gaps[k]
            for a in range(fresh + 1):
                nodes += 1
                if nodes > budget:
                    raise Undecided(f"completion of {p} exceeded {budget} search nodes")
                filled[i] = a
                nxt = gaps[k + 1] if k + 1 < len(gaps) else hi + 1
                if not any(clash_at(j) for j in range(i, nxt)):
                    if search(k + 1):
                        return True
                del filled[i]
            return False

        if not search(0):
            raise DomainError(f"{p} has no completion")
        return overlay(Pattern.of(filled), [fresh], monoid)

    def pattern_in_language(self, p, budget=DEFAULT_COMPLETION_BUDGET):
        if self._internal_occurrence(p.as_dict()):
            return False
        try:
            self.complete(p, budget=budget)
        except DomainError:
            return False
        return True

    def config_in_space(self, x):
        if isinstance(x, EventuallyPeriodic):
            starts = range(0, len(x.prefix) + len(x.period))
        elif isinstance(x, BiPeriodic):
            s, diam = x.core_start, self.max_diameter
            starts = range(s - len(x.left_period) - diam - 1,
                           s + len(x.core) + len(x.right_period) + 1)
        else:
            raise NotDecidable(f"membership of {x}")
        return not any(self._occurs_at(f, g, x.get) for f in self.patterns for g in starts)

    def sample_config(self, rng, monoid, max_symbol=5, **kw):
        for _ in range(100):
            x = random_config(rng, monoid, max_symbol, **kw)
            if self.config_in_space(x):
                return x
        return self.complete(Pattern(), monoid)

    def to_json(self):
        return {"space": "forbidden", "patterns": [p.to_json() for p in self.patterns]}

    def __str__(self):
        return "forbidding " + ", ".join(map(str, self.patterns))


def space_from_json(obj) -> ShiftSpace:
    kind = obj.get("space") if isinstance(obj, dict) else None
    if kind == "full":
        return FullShift()
    if kind == "subalphabets":
        return SubalphabetUnion.of(obj["blocks"])
    if kind == "forbidden":
        return ForbiddenPatterns(tuple(Pattern.from_json(p) for p in obj["patterns"]))
    raise ParseError(f"unknown space descriptor {obj!r}")


def pattern_in_language(space: ShiftSpace, p: Pattern, budget: int = DEFAULT_COMPLETION_BUDGET) -> bool:
    return space.pattern_in_language(p, budget)


def config_in_space(space: ShiftSpace, x: Config) -> bool:
    return space.config_in_space(x)


def enumerate_words(space: ShiftSpace, domain: Sequence[int], max_symbol: int) -> list[Pattern]:
    return space.enumerate_words(domain, max_symbol)
