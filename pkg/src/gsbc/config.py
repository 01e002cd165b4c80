"""Finite descriptions of configurations x in A^G and finite patterns.

Symbols are nonnegative Python ints; no alphabet bound is stored anywhere.
Eventually periodic (one-sided) and bi-periodic (two-sided) descriptions
are kept in canonical form, so ``==`` decides equality of the sequences
they denote.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DomainError, NotDecidable, ParseError
from .monoid import Monoid


def _check_symbol(a) -> int:
    if not isinstance(a, int) or isinstance(a, bool) or a < 0:
        raise DomainError(f"symbols are nonnegative integers, got {a!r}")
    return a


@dataclass(frozen=True)
class Pattern:
    """A finite partial configuration: sorted ``(index, symbol)`` pairs.

    Doubles as the cylinder it defines.
    """

    items: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        items = tuple(sorted((int(i), _check_symbol(a)) for i, a in self.items))
        for (i, _), (j, _) in zip(items, items[1:]):
            if i == j:
                raise DomainError(f"index {i} assigned twice in pattern")
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, assignment: Mapping[int, int]) -> "Pattern":
        return cls(tuple(assignment.items()))

    @classmethod
    def from_lists(cls, indices: Sequence[int], symbols: Sequence[int]) -> "Pattern":
        if len(indices) != len(symbols):
            raise DomainError("indices and symbols differ in length")
        return cls(tuple(zip(indices, symbols)))

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.items)

    @property
    def symbols(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.items)

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    def get(self, i: int, default=None):
        for j, a in self.items:
            if j == i:
                return a
        return default

    def __getitem__(self, i: int) -> int:
        a = self.get(i)
        if a is None:
            raise KeyError(i)
        return a

    def __contains__(self, i) -> bool:
        return self.get(i) is not None

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def translate(self, g: int) -> "Pattern":
        return Pattern(tuple((i + g, a) for i, a in self.items))

    def extend(self, i: int, a: int) -> "Pattern":
        return Pattern(self.items + ((i, a),))

    def merge(self, other: "Pattern") -> "Pattern | None":
        """Union of two patterns, or None if they clash on a shared index."""
        d = self.as_dict()
        for i, a in other.items:
            if d.setdefault(i, a) != a:
                return None
        return Pattern.of(d)

    def agrees_with(self, other: "Pattern") -> bool:
        return self.merge(other) is not None

    def diameter(self) -> int:
        return self.items[-1][0] - self.items[0][0] if self.items else 0

    def to_literal(self) -> str:
        return ",".join(f"{a}@{i}" for i, a in self.items)

    def __str__(self):
        return "{" + ", ".join(f"{i}->{a}" for i, a in self.items) + "}"

    def to_json(self) -> dict:
        return {"indices": list(self.domain), "symbols": list(self.symbols)}

    @classmethod
    def from_json(cls, obj) -> "Pattern":
        try:
            return cls.from_lists(obj["indices"], obj["symbols"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad pattern object {obj!r}") from exc


EMPTY = Pattern()


def parse_pattern(text: str) -> Pattern:
    """Parse ``"sym@idx,sym@idx,..."``; the empty string is the empty pattern."""
    text = text.strip()
    if not text:
        return EMPTY
    items = []
    for part in text.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*@\s*(-?\d+)\s*", part)
        if not m:
            raise ParseError(f"bad pattern entry {part!r}; expected symbol@index")
        items.append((int(m.group(2)), int(m.group(1))))
    return Pattern(tuple(items))


def _min_period(seq: Sequence[int]) -> list[int]:
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and all(seq[k] == seq[k % p] for k in range(n)):
            return list(seq[:p])
    return list(seq)


def _rotate(seq: Sequence[int], k: int) -> list[int]:
    """Left rotation by k: result[j] = seq[(j + k) % len(seq)]."""
    n = len(seq)
    k %= n
    return list(seq[k:]) + list(seq[:k])


class Config:
    """A total configuration over ``self.monoid``."""

    monoid: Monoid
    finite = True

    def get(self, i: int) -> int:
        raise NotImplementedError

    def shift(self, g: int) -> "Config":
        raise NotImplementedError

    def support(self) -> frozenset[int]:
        """Set of symbols occurring in the configuration."""
        raise NotImplementedError

    def restrict(self, indices: Iterable[int]) -> Pattern:
        return Pattern(tuple((i, self.get(i)) for i in set(indices)))

    def window(self, lo: int, hi: int) -> list[int]:
        return [self.get(i) for i in range(lo, hi)]


@dataclass(frozen=True, eq=True)
class EventuallyPeriodic(Config):
    """One-sided sequence ``prefix`` followed by ``period`` repeated forever."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    monoid = Monoid.N

    def __post_init__(self):
        prefix = [_check_symbol(a) for a in self.prefix]
        period = [_check_symbol(a) for a in self.period]
        if not period:
            raise DomainError("period must be nonempty")
        period = _min_period(period)
        while prefix and prefix[-1] == period[-1]:
            prefix.pop()
            period = _rotate(period, -1)
        object.__setattr__(self, "prefix", tuple(prefix))
        object.__setattr__(self, "period", tuple(period))

    def get(self, i: int) -> int:
        if i < 0:
            raise DomainError(f"negative index {i} is not in N")
        n = len(self.prefix)
        if i < n:
            return self.prefix[i]
        return self.period[(i - n) % len(self.period)]

    def shift(self, g: int) -> "EventuallyPeriodic":
        if g < 0:
            raise DomainError("shifts over N need g >= 0")
        n = len(self.prefix)
        if g <= n:
            return EventuallyPeriodic(self.prefix[g:], self.period)
        return EventuallyPeriodic((), _rotate(self.period, g - n))

    def support(self) -> frozenset[int]:
        return frozenset(self.prefix) | frozenset(self.period)

    def to_literal(self) -> str:
        return ",".join(map(str, self.prefix)) + ";" + ",".join(map(str, self.period))

    def __str__(self):
        return self.to_literal()


@dataclass(frozen=True, eq=True)
class BiPeriodic(Config):
    """Two-sided sequence: ``core`` on [core_start, core_start + len(core)),
    ``right_period`` repeating to the right of it and ``left_period``
    repeating to the left (its last symbol sits at core_start - 1)."""

    left_period: tuple[int, ...]
    core: tuple[int, ...]
    core_start: int
    right_period: tuple[int, ...]

    monoid = Monoid.Z

    def __post_init__(self):
        L = [_check_symbol(a) for a in self.left_period]
        C = [_check_symbol(a) for a in self.core]
        R = [_check_symbol(a) for a in self.right_period]
        if not L or not R:
            raise DomainError("left and right periods must be nonempty")
        L, C, s, R = _canonical_bi(_min_period(L), C, Monoid.Z.check(self.core_start), _min_period(R))
        object.__setattr__(self, "left_period", tuple(L))
        object.__setattr__(self, "core", tuple(C))
        object.__setattr__(self, "core_start", s)
        object.__setattr__(self, "right_period", tuple(R))

    def get(self, i: int) -> int:
        s = self.core_start
        if i < s:
            return self.left_period[(i - s) % len(self.left_period)]
        k = i - s
        if k < len(self.core):
            return self.core[k]
        return self.right_period[(k - len(self.core)) % len(self.right_period)]

    def shift(self, g: int) -> "BiPeriodic":
        return BiPeriodic(self.left_period, self.core, Monoid.Z.op(self.core_start, -g), self.right_period)

    def support(self) -> frozenset[int]:
        return frozenset(self.left_period) | frozenset(self.core) | frozenset(self.right_period)

    def to_literal(self) -> str:
        j = lambda seq: ",".join(map(str, seq))
        return f"L={j(self.left_period)} C@{self.core_start}={j(self.core)} R={j(self.right_period)}"

    def __str__(self):
        return self.to_literal()


def _canonical_bi(L, C, s, R):
    def raw(i):
        if i < s:
            return L[(i - s) % len(L)]
        k = i - s
        return C[k] if k < len(C) else R[(k - len(C)) % len(R)]

    # t: leftmost start of the right-periodic tail
    t = s + len(C)
    Rt = list(R)
    limit = s - math.lcm(len(L), len(R))
    while t > limit and raw(t - 1) == Rt[-1]:
        t -= 1
        Rt = _rotate(Rt, -1)
    if t <= limit:
        # globally periodic: anchor the period at index 0
        P = [raw(k) for k in range(len(R))]
        return P, [], 0, P
    u = min(s, t)
    while u < t and raw(u) == L[(u - s) % len(L)]:
        u += 1
    return _rotate(L, u - s), [raw(i) for i in range(u, t)], u, Rt


@dataclass(frozen=True)
class GeneratorBacked(Config):
    """Opaque configuration given by a pure function; equal iff names match."""

    fn: Callable[[int], int] = field(compare=False, repr=False)
    name: str = "generator"
    monoid: Monoid = Monoid.N

    finite = False

    def get(self, i: int) -> int:
        self.monoid.check(i)
        return self.fn(i)

    def shift(self, g: int) -> "GeneratorBacked":
        self.monoid.check(g)
        fn = self.fn
        return GeneratorBacked(lambda i: fn(g + i), f"shift({g},{self.name})", self.monoid)

    def support(self) -> frozenset[int]:
        raise NotDecidable(f"symbol support of generator-backed config {self.name!r}")

    def __str__(self):
        return f"<generator {self.name}>"


def get(x: Config, i: int) -> int:
    return x.get(i)


def restrict(x: Config, indices: Iterable[int]) -> Pattern:
    return x.restrict(indices)


def shift(g: int, x: Config) -> Config:
    return x.shift(g)


def patterns_translation_equivalent(p: Pattern, q: Pattern) -> int | None:
    """Offset g with q = p translated by g, or None."""
    if len(p) != len(q):
        return None
    if not p.items:
        return 0
    g = q.items[0][0] - p.items[0][0]
    if all(j == i + g and a == b for (i, a), (j, b) in zip(p.items, q.items)):
        return g
    return None


def overlay(pattern: Pattern, background: Sequence[int], monoid: Monoid) -> Config:
    """The periodic configuration ``x_i = background[i mod k]`` with
    ``pattern`` written over it."""
    bg = list(background)
    k = len(bg)
    if k == 0:
        raise DomainError("background period must be nonempty")
    d = pattern.as_dict()
    if monoid is Monoid.N:
        n = pattern.items[-1][0] + 1 if d else 0
        return EventuallyPeriodic(
            tuple(d.get(i, bg[i % k]) for i in range(n)),
            tuple(bg[(n + j) % k] for j in range(k)),
        )
    if not d:
        return BiPeriodic(tuple(bg), (), 0, tuple(bg))
    lo, hi = pattern.items[0][0], pattern.items[-1][0]
    return BiPeriodic(
        tuple(bg[(lo + j) % k] for j in range(k)),
        tuple(d.get(i, bg[i % k]) for i in range(lo, hi + 1)),
        lo,
        tuple(bg[(hi + 1 + j) % k] for j in range(k)),
    )


def random_config(
    rng: random.Random,
    monoid: Monoid,
    max_symbol: int = 5,
    max_prefix: int = 8,
    max_period: int = 3,
    alphabet: Sequence[int] | None = None,
) -> Config:
    """Seeded random finite description; symbols drawn from ``alphabet``
    if given, else from 0..max_symbol."""
    pool = list(alphabet) if alphabet is not None else list(range(max_symbol + 1))
    draw = lambda n: tuple(rng.choice(pool) for _ in range(n))
    if monoid is Monoid.N:
        return EventuallyPeriodic(draw(rng.randint(0, max_prefix)), draw(rng.randint(1, max_period)))
    return BiPeriodic(
        draw(rng.randint(1, max_period)),
        draw(rng.randint(0, max_prefix)),
        rng.randint(-max_prefix, max_prefix),
        draw(rng.randint(1, max_period)),
    )


_LIST = r"(\d+(?:\s*,\s*\d+)*)?"


def _ints(text: str | None) -> tuple[int, ...]:
    if not text or not text.strip():
        return ()
    return tuple(int(t) for t in text.split(","))


def parse_config(text: str) -> Config:
    """Parse a config literal.

    ``"2,0,5,1,3;0"`` is a one-sided eventually periodic sequence (prefix;period);
    ``"L=7 C@-1=1,2 R=9"`` is a two-sided one.
    """
    s = text.strip()
    if s.startswith("L="):
        m = re.fullmatch(
            rf"L=\s*{_LIST}\s+C@\s*(-?\d+)\s*=\s*{_LIST}\s+R=\s*{_LIST}", s
        )
        if not m:
            raise ParseError(f"bad two-sided config literal {text!r}")
        L, start, C, R = m.groups()
        if not L or not R:
            raise ParseError("left and right periods must be nonempty")
        return BiPeriodic(_ints(L), _ints(C), int(start), _ints(R))
    m = re.fullmatch(rf"\s*{_LIST}\s*;\s*{_LIST}\s*", s)
    if not m:
        raise ParseError(f"bad config literal {text!r}")
    prefix, period = m.groups()
    if not period:
        raise ParseError("period must be nonempty")
    return EventuallyPeriodic(_ints(prefix), _ints(period))
