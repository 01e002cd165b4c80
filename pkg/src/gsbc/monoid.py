"""The index monoids (N,+) and (Z,+).

The monoid is written additively: the identity is 0 and the operation of
g with i is ``g + i``.  The metric is ``|i - j|``.
"""
from __future__ import annotations

import enum
from typing import Iterable

from .errors import ArithmeticRangeError, DomainError

# Indices must fit the int64 arrays used by the compiled kernels.
INDEX_MAX = 2**63 - 1
INDEX_MIN = -(2**63)

IDENTITY = 0


class Monoid(enum.Enum):
    N = "N"
    Z = "Z"

    @classmethod
    def parse(cls, name) -> "Monoid":
        if isinstance(name, Monoid):
            return name
        try:
            return cls(str(name).upper())
        except ValueError:
            raise DomainError(f"unknown monoid {name!r}; expected 'N' or 'Z'") from None

    @property
    def identity(self) -> int:
        return IDENTITY

    def check(self, i: int) -> int:
        if not isinstance(i, int) or isinstance(i, bool):
            raise DomainError(f"index must be an integer, got {i!r}")
        if i < INDEX_MIN or i > INDEX_MAX:
            raise ArithmeticRangeError(f"index {i} outside representable range")
        if self is Monoid.N and i < 0:
            raise DomainError(f"negative index {i} is not in N")
        return i

    def op(self, g: int, h: int) -> int:
        self.check(g)
        self.check(h)
        s = g + h
        if s > INDEX_MAX or s < INDEX_MIN:
            raise ArithmeticRangeError(f"{g} + {h} overflows the index range")
        return s

    def translate_set(self, g: int, indices: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.op(g, i) for i in indices))

    @staticmethod
    def distance(i: int, j: int) -> int:
        return abs(i - j)

    def probe_order(self, k: int) -> int:
        """k-th index in the canonical enumeration by distance from 0.

        N: 0, 1, 2, ...   Z: 0, 1, -1, 2, -2, ...
        """
        if k < 0:
            raise DomainError("probe_order needs k >= 0")
        if self is Monoid.N:
            return k
        return (k + 1) // 2 if k % 2 else -(k // 2)

    def probe_position(self, i: int) -> int:
        """Inverse of :meth:`probe_order`."""
        self.check(i)
        if self is Monoid.N:
            return i
        return 2 * i - 1 if i > 0 else -2 * i

    def ball(self, radius: int) -> tuple[int, ...]:
        """Indices within ``radius`` of the identity, ascending."""
        if radius < 0:
            return ()
        lo = 0 if self is Monoid.N else -radius
        return tuple(range(lo, radius + 1))

    def probe_sorted(self, indices: Iterable[int]) -> list[int]:
        return sorted(indices, key=self.probe_position)


def index_set(indices: Iterable[int]) -> tuple[int, ...]:
    """Normalize to a sorted, duplicate-free tuple."""
    return tuple(sorted(set(indices)))
