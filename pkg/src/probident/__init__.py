"""Exact and numerical verification of combinatorial identities that come
from moments of gamma and beta random variables."""

from .exact import (
    HalfInteger,
    PiGraded,
    UnsupportedQuotient,
    beta_value,
    binomial,
    gamma_ratio_half,
    gamma_value,
    mgf_even_coefficient,
    pochhammer,
    value_arith,
)
from .identities import (
    IdentityId,
    IdentityReport,
    SeriesTally,
    enumerate_compositions,
    eval_side,
    series_partial_sum,
    verify,
    verify_in_p,
)

__version__ = "0.1.0"
