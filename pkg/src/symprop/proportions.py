"""Exact proportions of cycle-structure classes in the symmetric group.

``rho`` is the proportion of elements of order exactly ``p`` in ``S_n``.
Two routes compute it: the three-term recursion (memoized per prime) and
the finite sum over the number of ``p``-cycles. The remaining functions
cover the order-dividing variant, ``p``-cycles, pre-``p``-cycles and the
``p``-regular / ``p``-singular split.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .exact_core import FactorialCache, default_cache, require_prime

METHODS = ("recursion", "closed_form", "series", "census", "sampler")


@dataclass(frozen=True)
class ProportionQuery:
    p: int
    n: int

    def __post_init__(self) -> None:
        require_prime(self.p)
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class ProportionReport:
    query: ProportionQuery
    value: Fraction
    method: str

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not 0 <= self.value <= 1:
            raise ValueError(f"proportion {self.value} outside [0, 1]")


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


class _RhoTable:
    """Dense prefix ``rho_p(0..len-1)`` for one prime; index 0 is unused (0)."""

    def __init__(self, p: int, cache: FactorialCache) -> None:
        self.p = p
        self.cache = cache
        self.values: list[Fraction] = [Fraction(0)]
        self.lock = threading.Lock()

    def get(self, n: int) -> Fraction:
        values = self.values
        if n < len(values):
            return values[n]
        with self.lock:
            values = list(self.values)
            p, fact = self.p, self.cache.get
            for m in range(len(values), n + 1):
                if m < p:
                    values.append(Fraction(0))
                elif m == p:
                    values.append(Fraction(1, p))
                else:
                    values.append(
                        (values[m - 1] + values[m - p] + Fraction(1, fact(m - p))) / m
                    )
            self.values = values
        return values[n]


_rho_tables: dict[int, _RhoTable] = {}
_rho_tables_lock = threading.Lock()


def _rho_table(p: int) -> _RhoTable:
    table = _rho_tables.get(p)
    if table is None:
        with _rho_tables_lock:
            table = _rho_tables.setdefault(p, _RhoTable(p, default_cache()))
    return table


def rho_recursive(p: int, n: int) -> Fraction:
    """Proportion of order-``p`` elements of ``S_n`` via the three-term recursion.

    For ``n >= p + 1``: ``n*rho(n) = rho(n-1) + rho(n-p) + 1/(n-p)!``, with
    ``rho(n) = 0`` below ``p`` and ``rho(p) = 1/p``.
    """
    require_prime(p)
    _check_n(n)
    return _rho_table(p).get(n)


def rho_sequence(p: int, n_max: int) -> list[Fraction]:
    """``[rho_p(0), rho_p(1), ..., rho_p(n_max)]`` with the placeholder ``rho_p(0) = 0``."""
    require_prime(p)
    table = _rho_table(p)
    table.get(max(n_max, 1))
    return table.values[: n_max + 1]


def rho_closed_form(p: int, n: int) -> Fraction:
    """Sum over ``i >= 1`` disjoint ``p``-cycles of ``1 / ((n-ip)! i! p^i)``."""
    require_prime(p)
    _check_n(n)
    fact = default_cache().get
    total = Fraction(0)
    for i in range(1, n // p + 1):
        total += Fraction(1, fact(n - i * p) * fact(i) * p**i)
    return total


def rho_order_dividing(p: int, n: int) -> Fraction:
    """Proportion of ``x`` in ``S_n`` with ``x**p == 1``, identity included."""
    return rho_closed_form(p, n) + Fraction(1, default_cache().get(n))


def p_cycle_proportion(p: int, n: int) -> Fraction:
    require_prime(p)
    if n < p:
        raise ValueError(f"p-cycle proportion needs n >= p (p={p}, n={n})")
    return Fraction(1, p * default_cache().get(n - p))


def regular_proportion(p: int, n: int) -> Fraction:
    """Proportion of ``S_n`` with no cycle length divisible by ``p``.

    Uses the product ``prod_{i=1}^{n//p} (1 - 1/(ip))``. ``n = 0`` is
    accepted and gives 1 (the empty permutation is ``p``-regular).
    """
    require_prime(p)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    num = den = 1
    for i in range(1, n // p + 1):
        num *= i * p - 1
        den *= i * p
    return Fraction(num, den)


def singular_proportion(p: int, n: int) -> Fraction:
    _check_n(n)
    return 1 - regular_proportion(p, n)


def pre_p_cycle_proportion(p: int, n: int) -> Fraction:
    """Exactly one ``p``-cycle, every other cycle length coprime to ``p``."""
    require_prime(p)
    if n < p:
        raise ValueError(f"pre-p-cycle proportion needs n >= p (p={p}, n={n})")
    return regular_proportion(p, n - p) / p


def regular_self_check(primes=(2, 3, 5), n_max: int = 20) -> None:
    """Compare the product formula with the census and series routes.

    Raises ``AssertionError`` naming the first disagreement.
    """
    from .oracle import census_regular_count
    from .series import regular_gf

    fact = default_cache().get
    for p in primes:
        coeffs = regular_gf(p, n_max).coeffs
        for n in range(1, n_max + 1):
            product = regular_proportion(p, n)
            census = Fraction(census_regular_count(n, p), fact(n))
            if not product == census == coeffs[n]:
                raise AssertionError(
                    f"regular proportion mismatch at p={p}, n={n}: "
                    f"product={product} census={census} series={coeffs[n]}"
                )
