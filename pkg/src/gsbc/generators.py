"""Seeded random partitions and rule tables for property tests and benchmarks."""
from __future__ import annotations

import itertools
import random

from .codes import ClassicalCode
from .config import Pattern
from .cylinder import ExplicitPartition
from .monoid import Monoid
from .shift_space import FullShift


def random_partition(
    rng: random.Random,
    monoid: Monoid = Monoid.N,
    radius: int = 2,
    max_symbol: int = 2,
    max_output: int = 3,
    leaf_prob: float = 0.35,
) -> ExplicitPartition:
    """Cylinders read off a random decision tree over the radius ball.

    Every node branches on all symbols 0..max_symbol, so the result covers
    every configuration whose ball symbols are <= max_symbol.
    """
    ball = list(monoid.ball(radius))
    pairs: list[tuple[Pattern, int]] = []

    def grow(assign: dict[int, int], depth: int):
        free = [i for i in ball if i not in assign]
        if not free or (depth > 0 and rng.random() < leaf_prob):
            pairs.append((Pattern.of(assign), rng.randint(0, max_output)))
            return
        i = rng.choice(free)
        for a in range(max_symbol + 1):
            grow({**assign, i: a}, depth + 1)

    grow({}, 0)
    rng.shuffle(pairs)
    return ExplicitPartition.from_cylinders(pairs, FullShift(), monoid)


def random_rule_table(
    rng: random.Random,
    neighborhood: tuple[int, ...],
    max_symbol: int = 2,
    max_output: int = 2,
) -> dict[tuple[int, ...], int]:
    return {
        key: rng.randint(0, max_output)
        for key in itertools.product(range(max_symbol + 1), repeat=len(neighborhood))
    }


def random_classical_code(rng: random.Random, monoid: Monoid, max_symbol: int = 2) -> ClassicalCode:
    """Random nonempty neighborhood inside {-1,0,1} (Z) or {0,1,2} (N)."""
    pool = [-1, 0, 1] if monoid is Monoid.Z else [0, 1, 2]
    k = rng.randint(1, len(pool))
    nb = tuple(sorted(rng.sample(pool, k)))
    table = random_rule_table(rng, nb, max_symbol, max_symbol)
    return ClassicalCode(nb, table, FullShift(), monoid, name=f"table{list(nb)}")
