"""Truncated formal power series with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_core import require_prime


class TruncationMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SeriesCoefficients:
    """Coefficients ``c_0 .. c_N`` of a series known modulo ``x^(N+1)``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @classmethod
    def from_list(cls, values: Sequence, order: int | None = None) -> SeriesCoefficients:
        values = [Fraction(v) for v in values]
        if order is not None:
            values = (values + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(tuple(values))

    @classmethod
    def zero(cls, order: int) -> SeriesCoefficients:
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> SeriesCoefficients:
        return cls.monomial(0, Fraction(1), order)

    @classmethod
    def monomial(cls, degree: int, coeff, order: int) -> SeriesCoefficients:
        values = [Fraction(0)] * (order + 1)
        if degree <= order:
            values[degree] = Fraction(coeff)
        return cls(tuple(values))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def _check(self, other: SeriesCoefficients) -> None:
        if other.order != self.order:
            raise TruncationMismatch(
                f"truncation orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other: SeriesCoefficients) -> SeriesCoefficients:
        self._check(other)
        return SeriesCoefficients(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: SeriesCoefficients) -> SeriesCoefficients:
        self._check(other)
        return SeriesCoefficients(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> SeriesCoefficients:
        return SeriesCoefficients(tuple(-a for a in self.coeffs))

    def scale(self, c) -> SeriesCoefficients:
        c = Fraction(c)
        return SeriesCoefficients(tuple(c * a for a in self.coeffs))

    def __mul__(self, other: SeriesCoefficients) -> SeriesCoefficients:
        return series_mul(self, other)


def series_mul(a: SeriesCoefficients, b: SeriesCoefficients) -> SeriesCoefficients:
    a._check(b)
    ac, bc = a.coeffs, b.coeffs
    # skip zero terms: the generating functions here are sparse
    nonzero_b = [(j, v) for j, v in enumerate(bc) if v]
    out = [Fraction(0)] * len(ac)
    for i, x in enumerate(ac):
        if not x:
            continue
        for j, y in nonzero_b:
            if i + j >= len(out):
                break
            out[i + j] += x * y
    return SeriesCoefficients(tuple(out))


def series_exp(a: SeriesCoefficients) -> SeriesCoefficients:
    """``exp(a)`` for ``a_0 = 0`` via ``k*b_k = sum_{j=1}^{k} j*a_j*b_{k-j}``."""
    if a.coeffs[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    weighted = [(j, j * v) for j, v in enumerate(a.coeffs) if j and v]
    b = [Fraction(1)]
    for k in range(1, a.order + 1):
        acc = Fraction(0)
        for j, w in weighted:
            if j > k:
                break
            acc += w * b[k - j]
        b.append(acc / k)
    return SeriesCoefficients(tuple(b))


def series_log_one_minus(m: int, order: int) -> SeriesCoefficients:
    """``log(1 - x^m) = -sum_{k>=1} x^(mk)/k`` truncated at ``order``."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    values = [Fraction(0)] * (order + 1)
    for k in range(1, order // m + 1):
        values[m * k] = Fraction(-1, k)
    return SeriesCoefficients(tuple(values))


def _exp_x(order: int) -> SeriesCoefficients:
    values = [Fraction(1)]
    for k in range(1, order + 1):
        values.append(values[-1] / k)
    return SeriesCoefficients(tuple(values))


def jacobsthal_gf(p: int, order: int) -> SeriesCoefficients:
    """Coefficients of ``exp(x) * (exp(x^p / p) - 1)``; coefficient ``n`` is ``rho_p(n)``."""
    require_prime(p)
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    inner = series_exp(SeriesCoefficients.monomial(p, Fraction(1, p), order))
    return series_mul(_exp_x(order), inner - SeriesCoefficients.one(order))


def regular_gf(p: int, order: int) -> SeriesCoefficients:
    """Coefficients of ``(1 - x^p)^(1/p) / (1 - x)``; coefficient ``n`` is the ``p``-regular proportion."""
    require_prime(p)
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    exponent = series_log_one_minus(p, order).scale(Fraction(1, p)) - series_log_one_minus(1, order)
    return series_exp(exponent)
