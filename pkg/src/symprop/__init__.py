"""Exact proportions of prime-order elements in finite symmetric groups."""

from .bounds_cert import (
    AsymptoticReport,
    BoundCertificate,
    Ordering,
    Verdict,
    certify_range,
    certify_theorem1,
    compare_scaled_power,
    moser_wyman_estimate,
    verify_pre_p_cycle_bounds,
    verify_singular_bound,
)
from .exact_core import (
    CycleType,
    ExactRational,
    FactorialCache,
    NotPrimeError,
    binomial,
    factorial,
    is_prime,
    order_of,
    partitions_of,
    permutation_count,
)
from .oracle import Census, SampleEstimate, census_by_type, census_direct, census_regular_count, sample_proportion
from .proportions import (
    p_cycle_proportion,
    pre_p_cycle_proportion,
    regular_proportion,
    rho_closed_form,
    rho_order_dividing,
    rho_recursive,
    singular_proportion,
)
from .series import SeriesCoefficients, jacobsthal_gf, regular_gf, series_exp, series_log_one_minus, series_mul

__version__ = "0.1.0"
