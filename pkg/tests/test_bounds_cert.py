import math
import random
from fractions import Fraction

import mpmath
import pytest

from symprop.bounds_cert import (
    BoundCertificate,
    Ordering,
    Verdict,
    certify_range,
    certify_theorem1,
    classify,
    compare_scaled_power,
    expected_verdict,
    log_fraction,
    moser_wyman_estimate,
    verdict_counts,
    verify_pre_p_cycle_bounds,
    verify_singular_bound,
)
from symprop.proportions import rho_recursive


def test_certify_examples():
    cert = certify_theorem1(5, 7)
    assert (cert.a, cert.k) == (1, 2)
    assert cert.rho == cert.bound == Fraction(1, 10)
    assert cert.verdict is Verdict.EQUALITY

    cert = certify_theorem1(2, 4)
    assert cert.rho == Fraction(3, 8) and cert.bound == Fraction(1, 2)
    assert cert.verdict is Verdict.STRICT

    cert = certify_theorem1(7, 3)
    assert cert.rho == 0 and cert.verdict is Verdict.ZERO


def test_certify_range_examples():
    assert [c.verdict.value for c in certify_range(3, 5)] == ["zero", "zero", "equality", "equality", "equality"]
    assert [c.verdict.value for c in certify_range(2, 3)] == ["zero", "equality", "equality"]
    counts = verdict_counts(certify_range(2, 10))
    assert counts[Verdict.EQUALITY] == 2
    assert [c.n for c in certify_range(2, 10) if c.verdict is Verdict.EQUALITY] == [2, 3]


def test_trichotomy_invariant():
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        for cert in certify_range(p, 200):
            assert cert.verdict is expected_verdict(p, cert.n)
            assert cert.n == cert.a * p + cert.k


def test_certificate_invariants_enforced():
    with pytest.raises(ValueError):
        BoundCertificate(3, 5, 1, 1, Fraction(1, 3), Fraction(1, 3), Verdict.EQUALITY)
    with pytest.raises(ValueError):
        BoundCertificate(3, 5, 1, 2, Fraction(1, 6), Fraction(1, 6), Verdict.STRICT)
    with pytest.raises(ArithmeticError):
        classify(Fraction(1, 2), Fraction(1, 3))


def test_compare_scaled_power_examples():
    assert compare_scaled_power(Fraction(1, 2), 1, 2, 4) is Ordering.EQUAL
    assert compare_scaled_power(Fraction(1), 3, 2, 4) is Ordering.LESS
    assert compare_scaled_power(Fraction(1, 3), Fraction(1, 4), 3, 8) is Ordering.GREATER
    with pytest.raises(ValueError):
        compare_scaled_power(Fraction(-1), 1, 2, 4)


def test_compare_scaled_power_agrees_with_200_bit_floats():
    rng = random.Random(5)
    checked = 0
    with mpmath.workprec(200):
        for _ in range(2000):
            q = Fraction(rng.randint(0, 10**6), rng.randint(1, 10**6))
            c = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
            p = rng.choice((2, 3, 5, 7))
            m = rng.randint(1, 10**4)
            rhs = mpmath.mpf(c.numerator) / c.denominator * mpmath.power(m, mpmath.mpf(-1) / p)
            lhs = mpmath.mpf(q.numerator) / q.denominator
            if abs(lhs - rhs) <= mpmath.mpf(2) ** -100 * max(abs(lhs), abs(rhs), 1):
                continue
            expected = Ordering.LESS if lhs < rhs else Ordering.GREATER
            assert compare_scaled_power(q, c, p, m) is expected
            checked += 1
    assert checked > 1900


def test_pre_p_cycle_bounds_examples():
    for p, n in ((2, 4), (3, 5), (2, 3)):
        check = verify_pre_p_cycle_bounds(p, n)
        assert check.lower_holds and check.upper_holds
    with pytest.raises(ValueError):
        verify_pre_p_cycle_bounds(3, 3)


def test_singular_bound_examples():
    assert verify_singular_bound(2, 4)
    assert verify_singular_bound(2, 2)
    assert verify_singular_bound(3, 30)


def test_log_fraction_precision():
    rho = rho_recursive(2, 10)
    with mpmath.workdps(40):
        exact_log = mpmath.log(mpmath.mpf(rho.numerator) / rho.denominator)
    assert abs(log_fraction(rho) - float(exact_log)) < 1e-9
    assert abs(moser_wyman_estimate(2, 10).log_rho_exact - float(exact_log)) < 1e-9


def test_moser_wyman_examples():
    rep = moser_wyman_estimate(3, 3)
    assert rep.log_rho_exact == pytest.approx(math.log(1 / 3), abs=1e-15)
    assert rep.log_ratio == rep.log_rho_exact - rep.log_estimate
    with pytest.raises(ValueError):
        moser_wyman_estimate(5, 4)


def test_moser_wyman_log_matches_direct_formula():
    for p, n in ((2, 30), (3, 40), (5, 60)):
        with mpmath.workdps(50):
            direct = (mpmath.mpf(n) / mpmath.e) ** (n * (1 - mpmath.mpf(1) / p)) * mpmath.exp(
                mpmath.mpf(n) ** (mpmath.mpf(1) / p)
            ) / (mpmath.sqrt(p) * mpmath.factorial(n))
            assert moser_wyman_estimate(p, n).log_estimate == pytest.approx(float(mpmath.log(direct)), abs=1e-9)


def test_moser_wyman_involution_gap_tends_to_quarter():
    # for p = 2 the display omits exp(-1/4); the log ratio drifts toward -1/4
    ratios = [moser_wyman_estimate(2, n).log_ratio for n in (25, 50, 100, 200, 400, 800)]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert -0.25 < ratios[-1] < -0.235


def test_moser_wyman_op_example_n100_vs_n20():
    # stated example: |log_ratio| at n=100 strictly smaller than at n=20
    assert abs(moser_wyman_estimate(2, 100).log_ratio) < abs(moser_wyman_estimate(2, 20).log_ratio)
