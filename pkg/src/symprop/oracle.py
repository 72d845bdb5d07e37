"""Independent ground truth for the formula modules.

Three routes, none sharing code with the formulas they check:

* ``census_direct`` walks all ``n!`` permutations and reads off each order;
* ``census_by_type`` sums conjugacy-class sizes over the partitions of ``n``;
* ``sample_proportion`` draws uniform random permutations (numpy PCG64).
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .exact_core import FactorialCache, default_cache, order_of, partitions_of, permutation_count, require_prime

DIRECT_MAX = 8
TYPED_MAX = 60
CENSUS_MAX_ENV = "SYMPROP_CENSUS_MAX"

SAMPLE_BATCH = 20_000


class CensusGuardError(ValueError):
    """The requested degree exceeds a census cost guard."""


def typed_max() -> int:
    """Guard for ``census_by_type``; ``SYMPROP_CENSUS_MAX`` overrides it."""
    raw = os.environ.get(CENSUS_MAX_ENV)
    return int(raw) if raw else TYPED_MAX


@dataclass(frozen=True)
class Census:
    n: int
    by_order: dict[int, int] = field(hash=False)

    def count(self, order: int) -> int:
        return self.by_order.get(order, 0)


def cycle_lengths(perm) -> list[int]:
    """Cycle lengths of a permutation given in one-line form on ``0..n-1``."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return lengths


def census_direct(n: int) -> Census:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > DIRECT_MAX:
        raise CensusGuardError(f"census_direct is limited to n <= {DIRECT_MAX}, got {n}")
    counts: Counter[int] = Counter()
    for perm in itertools.permutations(range(n)):
        counts[math.lcm(*cycle_lengths(perm))] += 1
    return Census(n, dict(sorted(counts.items())))


def census_by_type(n: int, cache: FactorialCache | None = None) -> Census:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    limit = typed_max()
    if n > limit:
        raise CensusGuardError(f"census_by_type is limited to n <= {limit}, got {n}")
    cache = cache or default_cache()
    counts: Counter[int] = Counter()
    for t in partitions_of(n):
        counts[order_of(t)] += permutation_count(t, cache)
    return Census(n, dict(sorted(counts.items())))


def census_regular_count(n: int, p: int, cache: FactorialCache | None = None) -> int:
    """Number of permutations of ``S_n`` with no cycle length divisible by ``p``."""
    require_prime(p)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    limit = typed_max()
    if n > limit:
        raise CensusGuardError(f"census_regular_count is limited to n <= {limit}, got {n}")
    cache = cache or default_cache()
    return sum(
        permutation_count(t, cache)
        for t in partitions_of(n)
        if all(length % p for length, _ in t.parts)
    )


def census_pre_p_cycle_count(n: int, p: int, cache: FactorialCache | None = None) -> int:
    """Permutations with exactly one ``p``-cycle and every other length coprime to ``p``."""
    require_prime(p)
    limit = typed_max()
    if n > limit:
        raise CensusGuardError(f"census is limited to n <= {limit}, got {n}")
    cache = cache or default_cache()
    total = 0
    for t in partitions_of(n):
        mult = t.multiplicities
        if mult.get(p) == 1 and all(length % p for length in mult if length != p):
            total += permutation_count(t, cache)
    return total


@dataclass(frozen=True)
class SampleEstimate:
    p: int
    n: int
    samples: int
    hits: int
    seed: int

    def __post_init__(self) -> None:
        if not 0 <= self.hits <= self.samples:
            raise ValueError(f"hits={self.hits} outside [0, {self.samples}]")

    @property
    def estimate(self) -> float:
        return self.hits / self.samples


def _order_p_hits(perms: np.ndarray, p: int) -> int:
    """Rows whose cycles all have length 1 or ``p``, at least one of length ``p``.

    For prime ``p`` that is exactly ``x**p == 1`` with ``x != 1``; the power is
    taken by repeated composition, so no orders are ever computed.
    """
    identity = np.arange(perms.shape[1])
    power = perms
    for _ in range(p - 1):
        power = np.take_along_axis(perms, power, axis=1)
    closes = (power == identity).all(axis=1)
    moves = (perms != identity).any(axis=1)
    return int(np.count_nonzero(closes & moves))


def sample_proportion(p: int, n: int, samples: int, seed: int) -> SampleEstimate:
    """Monte Carlo estimate of the order-``p`` proportion of ``S_n``.

    Same ``(p, n, samples, seed)`` always gives the same result.
    """
    require_prime(p)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if n < p:
        return SampleEstimate(p, n, samples, 0, seed)
    rng = np.random.default_rng(np.random.SeedSequence(seed & 0xFFFF_FFFF_FFFF_FFFF))
    base = np.arange(n)
    hits = 0
    remaining = samples
    while remaining:
        batch = min(remaining, SAMPLE_BATCH)
        perms = rng.permuted(np.broadcast_to(base, (batch, n)), axis=1)
        hits += _order_p_hits(perms, p)
        remaining -= batch
    return SampleEstimate(p, n, samples, hits, seed)


def worker_seeds(master_seed: int, workers: int) -> list[int]:
    """Per-worker 64-bit seeds derived deterministically from ``master_seed``."""
    children = np.random.SeedSequence(master_seed).spawn(workers)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def sample_parallel(p: int, n: int, samples: int, seed: int, jobs: int = 1) -> SampleEstimate:
    """Split ``samples`` across ``jobs`` workers and pool the hits.

    The split and seeds depend only on ``jobs``, not on scheduling.
    """
    from concurrent.futures import ProcessPoolExecutor

    seeds = worker_seeds(seed, jobs)
    shares = [samples // jobs + (1 if i < samples % jobs else 0) for i in range(jobs)]
    work = [(s, share) for s, share in zip(seeds, shares) if share]
    if jobs == 1:
        parts = [sample_proportion(p, n, share, s) for s, share in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(sample_proportion, p, n, share, s) for s, share in work]
            parts = [f.result() for f in futures]
    return SampleEstimate(p, n, samples, sum(part.hits for part in parts), seed)
