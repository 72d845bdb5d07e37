"""Exact certification of the prime-order bound and related inequalities.

The headline bound: with ``n = a*p + k`` and ``0 <= k < p``,
``rho_p(n) <= 1 / (p * k!)``, with equality exactly when ``p <= n < 2p``.
Inequalities involving ``m**(-1/p)`` are decided by raising both sides to
the ``p``-th power in rational arithmetic, never by floating point.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .exact_core import default_cache, require_prime
from .proportions import pre_p_cycle_proportion, regular_proportion, rho_recursive


class Verdict(str, enum.Enum):
    ZERO = "zero"
    EQUALITY = "equality"
    STRICT = "strict"


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class BoundCertificate:
    p: int
    n: int
    a: int
    k: int
    rho: Fraction
    bound: Fraction
    verdict: Verdict

    def __post_init__(self) -> None:
        if self.n != self.a * self.p + self.k or not 0 <= self.k < self.p:
            raise ValueError(f"bad decomposition n={self.n}, a={self.a}, k={self.k}, p={self.p}")
        if self.verdict is not classify(self.rho, self.bound):
            raise ValueError(f"verdict {self.verdict} inconsistent with rho={self.rho}, bound={self.bound}")


def classify(rho: Fraction, bound: Fraction) -> Verdict:
    if rho == 0:
        return Verdict.ZERO
    if rho == bound:
        return Verdict.EQUALITY
    if rho < bound:
        return Verdict.STRICT
    # only reachable if the bound is false for this (p, n)
    raise ArithmeticError(f"rho={rho} exceeds bound={bound}")


def expected_verdict(p: int, n: int) -> Verdict:
    """The trichotomy predicted from ``(p, n)`` alone."""
    if n < p:
        return Verdict.ZERO
    if n < 2 * p:
        return Verdict.EQUALITY
    return Verdict.STRICT


def certify_theorem1(p: int, n: int) -> BoundCertificate:
    require_prime(p)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    a, k = divmod(n, p)
    rho = rho_recursive(p, n)
    bound = Fraction(1, p * default_cache().get(k))
    return BoundCertificate(p, n, a, k, rho, bound, classify(rho, bound))


def certify_range(p: int, n_max: int) -> list[BoundCertificate]:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return [certify_theorem1(p, n) for n in range(1, n_max + 1)]


def verdict_counts(certificates) -> dict[Verdict, int]:
    counts = Counter(c.verdict for c in certificates)
    return {v: counts.get(v, 0) for v in Verdict}


def compare_scaled_power(q: Fraction, c: Fraction, p: int, m: int) -> Ordering:
    """Exact ordering of ``q`` against ``c * m**(-1/p)``.

    Both sides are nonnegative, so the comparison is that of
    ``(q/c)**p * m`` against 1.
    """
    q, c = Fraction(q), Fraction(c)
    if q < 0 or c <= 0 or m < 1 or p < 1:
        raise ValueError(f"need q >= 0, c > 0, m >= 1, p >= 1 (got q={q}, c={c}, m={m}, p={p})")
    lhs = (q / c) ** p * m
    if lhs < 1:
        return Ordering.LESS
    if lhs > 1:
        return Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True)
class PrePCycleBoundCheck:
    lower_holds: bool
    upper_holds: bool


def verify_pre_p_cycle_bounds(p: int, n: int) -> PrePCycleBoundCheck:
    """Check ``1/(4p (n-p)^(1/p)) <= pre <= 3/(p (n-p)^(1/p))`` exactly."""
    require_prime(p)
    if n <= p:
        raise ValueError(f"need n >= p + 1 (p={p}, n={n})")
    q = pre_p_cycle_proportion(p, n)
    m = n - p
    lower = compare_scaled_power(q, Fraction(1, 4 * p), p, m)
    upper = compare_scaled_power(q, Fraction(3, p), p, m)
    return PrePCycleBoundCheck(lower >= Ordering.EQUAL, upper <= Ordering.EQUAL)


def verify_singular_bound(p: int, n: int) -> bool:
    """True iff the ``p``-singular proportion exceeds ``1 - 3 n**(-1/p)``."""
    require_prime(p)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return compare_scaled_power(regular_proportion(p, n), Fraction(3), p, n) is Ordering.LESS


@dataclass(frozen=True)
class AsymptoticReport:
    p: int
    n: int
    log_rho_exact: float
    log_estimate: float

    @property
    def log_ratio(self) -> float:
        return self.log_rho_exact - self.log_estimate


def log_fraction(q: Fraction) -> float:
    # math.log is accurate on arbitrarily large ints, so no float overflow here
    return math.log(q.numerator) - math.log(q.denominator)


def moser_wyman_log(p: int, n: int) -> float:
    """Natural log of ``(n/e)^(n(1-1/p)) * e^(n^(1/p)) / (sqrt(p) * n!)``."""
    return (
        -0.5 * math.log(p)
        - math.lgamma(n + 1)
        + n * (1 - 1 / p) * (math.log(n) - 1)
        + n ** (1 / p)
    )


def moser_wyman_estimate(p: int, n: int) -> AsymptoticReport:
    require_prime(p)
    if n < p:
        raise ValueError(f"asymptotic estimate needs n >= p (p={p}, n={n})")
    return AsymptoticReport(p, n, log_fraction(rho_recursive(p, n)), moser_wyman_log(p, n))
