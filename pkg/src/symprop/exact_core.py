"""Exact arithmetic backbone: rationals, factorials, partitions and cycle types.

Every proportion in the package is an :class:`ExactRational`, which is the
stdlib :class:`fractions.Fraction` (always in lowest terms with a positive
denominator). Helpers here render and parse the ``num/den`` wire form.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

ExactRational = Fraction


class NotPrimeError(ValueError):
    """Raised when an argument that must be prime is not."""


def is_prime(p: int) -> bool:
    """Deterministic trial division; intended for primes up to a few thousand."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def require_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int):
        raise NotPrimeError(f"p must be an integer, got {p!r}")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    return p


def format_exact(q: Fraction) -> str:
    """Render as ``num/den``; zero is ``0/1``."""
    return f"{q.numerator}/{q.denominator}"


def parse_exact(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    if not sep:
        raise ValueError(f"expected 'num/den', got {text!r}")
    return Fraction(int(num), int(den))


class FactorialCache:
    """Memoized table of ``i!`` for ``i = 0 .. len - 1``.

    Growth is amortized doubling. Writers hold a lock and publish a fully
    built list in one assignment, so readers never see a torn entry.
    """

    def __init__(self) -> None:
        self._table: list[int] = [1]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._table)

    def __getitem__(self, n: int) -> int:
        return self.get(n)

    def get(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"factorial of negative number {n}")
        table = self._table
        if n < len(table):
            return table[n]
        with self._lock:
            table = self._table
            if n >= len(table):
                target = max(n + 1, 2 * len(table))
                grown = list(table)
                value = grown[-1]
                for i in range(len(grown), target):
                    value *= i
                    grown.append(value)
                self._table = grown
                table = grown
        return table[n]


_DEFAULT_CACHE = FactorialCache()


def default_cache() -> FactorialCache:
    return _DEFAULT_CACHE


def factorial(n: int, cache: FactorialCache | None = None) -> int:
    return (cache or _DEFAULT_CACHE).get(n)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError(f"binomial({n}, {k}) needs nonnegative arguments")
    if k > n:
        raise ValueError(f"binomial({n}, {k}) needs k <= n")
    return math.comb(n, k)


@dataclass(frozen=True)
class CycleType:
    """Cycle type of a permutation of degree ``n``.

    ``parts`` holds ``(length, multiplicity)`` pairs sorted by decreasing
    length; every multiplicity is at least one.
    """

    n: int
    parts: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if any(length < 1 or mult < 1 for length, mult in self.parts):
            raise ValueError(f"invalid cycle type parts {self.parts}")
        if sum(length * mult for length, mult in self.parts) != self.n:
            raise ValueError(f"parts {self.parts} do not sum to {self.n}")
        lengths = [length for length, _ in self.parts]
        if lengths != sorted(set(lengths), reverse=True):
            raise ValueError(f"parts {self.parts} must have distinct decreasing lengths")

    @classmethod
    def from_lengths(cls, lengths) -> CycleType:
        counts: dict[int, int] = {}
        for length in lengths:
            counts[length] = counts.get(length, 0) + 1
        return cls.from_multiplicities(counts)

    @classmethod
    def from_multiplicities(cls, multiplicities: Mapping[int, int]) -> CycleType:
        parts = tuple(sorted(((k, v) for k, v in multiplicities.items() if v), reverse=True))
        return cls(sum(k * v for k, v in parts), parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(self.parts)

    def lengths(self) -> tuple[int, ...]:
        """Parts as a decreasing sequence, e.g. ``(2, 1, 1)``."""
        return tuple(length for length, mult in self.parts for _ in range(mult))


def _descending(n: int, largest: int, prefix: list[int]) -> Iterator[list[int]]:
    if n == 0:
        yield prefix
        return
    for first in range(min(n, largest), 0, -1):
        prefix.append(first)
        yield from _descending(n - first, first, prefix)
        prefix.pop()


def partitions_of(n: int) -> Iterator[CycleType]:
    """Yield every partition of ``n`` once, in decreasing lexicographic order.

    >>> [t.lengths() for t in partitions_of(3)]
    [(3,), (2, 1), (1, 1, 1)]
    """
    if n < 1:
        raise ValueError(f"partitions_of needs n >= 1, got {n}")
    for seq in _descending(n, n, []):
        yield CycleType.from_lengths(seq)


def permutation_count(t: CycleType, cache: FactorialCache | None = None) -> int:
    """Size of the conjugacy class of cycle type ``t`` in ``S_n``."""
    cache = cache or _DEFAULT_CACHE
    centralizer = 1
    for length, mult in t.parts:
        centralizer *= length**mult * cache.get(mult)
    return cache.get(t.n) // centralizer


def order_of(t: CycleType) -> int:
    return math.lcm(*(length for length, _ in t.parts))
