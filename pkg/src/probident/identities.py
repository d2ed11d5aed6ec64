"""Registry of the gamma/beta combinatorial identities and exact verifiers.

Each identity is a pair of exact evaluators, one per side, returning
:class:`~probident.exact.PiGraded` values.  Gamma ratios with shifted
arguments are always rewritten as Pochhammer symbols, so the parametric
identities accept any positive rational ``p``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, Optional

import gmpy2
import mpmath

from .exact import (
    PiGraded,
    RationalLike,
    as_rational,
    beta_value,
    binomial,
    central_binomial,
    gamma_value,
    mgf_even_coefficient,
    pochhammer,
)

__all__ = [
    "IdentityId",
    "IdentityReport",
    "SeriesTally",
    "PARAMETRIC",
    "enumerate_compositions",
    "eval_side",
    "verify",
    "verify_in_p",
    "p_points",
    "series_term",
    "series_partial_sum",
]


class IdentityId(str, Enum):
    CENTRAL_CONVOLUTION = "central-convolution"
    ALTERNATING_CONVOLUTION = "alternating-convolution"
    MULTI_CONVOLUTION = "multi-convolution"
    GOULD_6_60 = "gould-6.60"
    GAMMA_EVEN_MOMENT = "gamma-even-moment"
    GAMMA_HALF_RATIO = "gamma-half-ratio"
    BRYCHKOV = "brychkov"
    P_EQUALS_N = "p-equals-n"
    BETA_MOMENT = "beta-moment"
    HALF_BETA_BINOMIAL = "half-beta-binomial"
    VIGNAT_MOLL_FACTORIZATION = "vignat-moll-factorization"
    REMARK2_SERIES = "remark2-series"

    @classmethod
    def parse(cls, tag: "str | IdentityId") -> "IdentityId":
        try:
            return cls(tag)
        except ValueError:
            raise ValueError(f"unknown identity {tag!r}") from None

    def __str__(self) -> str:
        return self.value


# Identities whose optional slot is required: a positive rational p, or the
# number of factors m for the multi-convolution.
PARAMETRIC = frozenset(
    {IdentityId.GAMMA_EVEN_MOMENT, IdentityId.BETA_MOMENT, IdentityId.MULTI_CONVOLUTION}
)

NOTES = {
    IdentityId.CENTRAL_CONVOLUTION: (
        "summation starts at k = 0; with the printed lower index k = 1 the sum "
        "is 4^n - C(2n,n), not 4^n"
    ),
    IdentityId.GOULD_6_60: "both sides are reported without the common 1/4^(2n) factor",
    IdentityId.REMARK2_SERIES: (
        "exact check of the closed form B(n+1/2,1/2)^2/pi = pi C(2n,n)^2/16^n; the "
        "series as printed omits a 1/k! factor and diverges, the corrected series "
        "is checked by series_partial_sum"
    ),
}


@dataclass(frozen=True)
class IdentityReport:
    id: IdentityId
    n: int
    p: Optional[Fraction]
    lhs: PiGraded
    rhs: PiGraded
    equal: bool
    residual: PiGraded
    note: Optional[str] = None


def enumerate_compositions(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Yield every m-tuple of nonnegative integers summing to n, once each.

    Stars and bars: choose the m-1 bar positions among n+m-1 slots.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    slots = n + m - 1
    for bars in itertools.combinations(range(slots), m - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(slots - prev - 1)
        yield tuple(parts)


# -- side evaluators --------------------------------------------------------

def _q(x) -> PiGraded:
    return PiGraded.rational(x)


def _central_convolution(n, p, lhs):
    if lhs:
        return _q(sum(central_binomial(k) * central_binomial(n - k) for k in range(n + 1)))
    return _q(4**n)


def _alternating_convolution(n, p, lhs):
    if lhs:
        return _q(sum((-1) ** k * central_binomial(k) * central_binomial(n - k) for k in range(n + 1)))
    return _q(2**n * binomial(n, n // 2) if n % 2 == 0 else 0)


def _multi_convolution(n, m, lhs):
    if m.denominator != 1 or m < 1:
        raise ValueError(f"multi-convolution needs an integer m >= 1, got {m}")
    m = int(m)
    if lhs:
        cb = [central_binomial(k) for k in range(n + 1)]
        total = 0
        for comp in enumerate_compositions(n, m):
            prod = 1
            for k in comp:
                prod *= cb[k]
            total += prod
        return _q(total)
    # 4^n/n! * Gamma(n + m/2)/Gamma(m/2), the ratio taken as (m/2)_n
    return _q(Fraction(4**n, math.factorial(n)) * pochhammer(Fraction(m, 2), n))


def _gould(n, p, lhs):
    if lhs:
        return _q(sum(
            (-1) ** k * binomial(2 * n, k) * central_binomial(k) * central_binomial(2 * n - k)
            for k in range(2 * n + 1)
        ))
    return _q(central_binomial(n) ** 2)


def _gamma_even_moment(n, p, lhs):
    if lhs:
        # sum_k C(2n,2k) E[X1^(2k)] E[X2^(2n-2k)], X ~ Ga(p)
        return _q(sum(
            binomial(2 * n, 2 * k) * pochhammer(p, 2 * k) * pochhammer(p, 2 * n - 2 * k)
            for k in range(n + 1)
        ))
    even_sum = pochhammer(2 * p, 2 * n)
    even_diff = math.factorial(2 * n) * mgf_even_coefficient(p, n)
    return _q(Fraction(1, 2) * (even_sum + even_diff))


def _gamma_half_ratio(n, p, lhs):
    if lhs:
        return gamma_value(Fraction(2 * n + 1, 2)) / gamma_value(Fraction(1, 2))
    return _q(Fraction(central_binomial(n) * math.factorial(n), 4**n))


def _brychkov(n, p, lhs):
    if lhs:
        return _q(sum(binomial(4 * k, 2 * k) * binomial(4 * n - 4 * k, 2 * n - 2 * k) for k in range(n + 1)))
    return _q(Fraction(2) ** (4 * n - 1) + Fraction(2) ** (2 * n - 1) * central_binomial(n))


def _p_equals_n(n, p, lhs):
    if n < 1:
        raise ValueError("p-equals-n needs n >= 1")
    g = gamma_value
    if lhs:
        total = PiGraded()
        for k in range(n + 1):
            total = total + binomial(2 * n, 2 * k) * g(n + 2 * k) * g(3 * n - 2 * k)
        return total
    return g(n) ** 2 / 2 * (g(4 * n) / g(2 * n) + 2 * g(2 * n) ** 2 / g(n) ** 2)


def _beta_moment(n, p, lhs):
    if lhs:
        # B(p+k, p)/B(p, p) = (p)_k / (2p)_k
        return _q(sum(
            (-2) ** k * binomial(2 * n, k) * pochhammer(p, k) / pochhammer(2 * p, k)
            for k in range(2 * n + 1)
        ))
    # B(n+1/2, p)/B(1/2, p) = (1/2)_n / (p+1/2)_n
    half = Fraction(1, 2)
    return _q(pochhammer(half, n) / pochhammer(p + half, n))


def _half_beta_binomial(n, p, lhs):
    if lhs:
        return _q(sum(
            (-1) ** k * binomial(2 * n, k) * central_binomial(k) * 2 ** (2 * n - k)
            for k in range(2 * n + 1)
        ))
    return _q(central_binomial(n))


def _vignat_moll(n, p, lhs):
    if lhs:
        # E[(X1+X2)^(2n)] E[Y^(2n)], X1+X2 ~ Ga(1), Y symmetric arcsine
        sum_moment = gamma_value(2 * n + 1) / gamma_value(1)
        return sum_moment * _q(Fraction(central_binomial(n), 4**n))
    # E[(X1-X2)^(2n)] from the MGF (1-t^2)^(-1/2)
    return _q(math.factorial(2 * n) * mgf_even_coefficient(Fraction(1, 2), n))


def _remark2(n, p, lhs):
    if lhs:
        b = beta_value(Fraction(2 * n + 1, 2), Fraction(1, 2))
        return b * b / PiGraded.pi_power(2)
    return PiGraded.pi_power(2, Fraction(central_binomial(n) ** 2, 16**n))


_EVALUATORS: dict[IdentityId, Callable] = {
    IdentityId.CENTRAL_CONVOLUTION: _central_convolution,
    IdentityId.ALTERNATING_CONVOLUTION: _alternating_convolution,
    IdentityId.MULTI_CONVOLUTION: _multi_convolution,
    IdentityId.GOULD_6_60: _gould,
    IdentityId.GAMMA_EVEN_MOMENT: _gamma_even_moment,
    IdentityId.GAMMA_HALF_RATIO: _gamma_half_ratio,
    IdentityId.BRYCHKOV: _brychkov,
    IdentityId.P_EQUALS_N: _p_equals_n,
    IdentityId.BETA_MOMENT: _beta_moment,
    IdentityId.HALF_BETA_BINOMIAL: _half_beta_binomial,
    IdentityId.VIGNAT_MOLL_FACTORIZATION: _vignat_moll,
    IdentityId.REMARK2_SERIES: _remark2,
}


def _check_args(id, n, p):
    id = IdentityId.parse(id)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    if id in PARAMETRIC:
        if p is None:
            slot = "m" if id is IdentityId.MULTI_CONVOLUTION else "p"
            raise ValueError(f"identity {id} requires {slot}")
        p = as_rational(p)
        if p <= 0:
            raise ValueError(f"parameter must be positive, got {p}")
    else:
        p = None
    return id, p


def eval_side(id: "IdentityId | str", side: str, n: int, p: Optional[RationalLike] = None) -> PiGraded:
    """Exact value of one side (``"lhs"`` or ``"rhs"``) of an identity at n (and p)."""
    if side not in ("lhs", "rhs"):
        raise ValueError(f"side must be 'lhs' or 'rhs', got {side!r}")
    id, p = _check_args(id, n, p)
    return _EVALUATORS[id](n, p, side == "lhs")


def verify(id: "IdentityId | str", n: int, p: Optional[RationalLike] = None) -> IdentityReport:
    id, p = _check_args(id, n, p)
    evaluator = _EVALUATORS[id]
    lhs = evaluator(n, p, True)
    rhs = evaluator(n, p, False)
    residual = lhs - rhs
    return IdentityReport(
        id=id, n=n, p=p, lhs=lhs, rhs=rhs,
        equal=residual.is_zero, residual=residual, note=NOTES.get(id),
    )


def p_points(n: int) -> list[Fraction]:
    """The 8n+4 evaluation points j + 1/3 used to certify an identity in p."""
    return [j + Fraction(1, 3) for j in range(8 * n + 4)]


def verify_in_p(id: "IdentityId | str", n: int) -> list[IdentityReport]:
    """Check a parametric identity at 8n+4 rational points.

    Both sides of either identity are rational functions of p of total degree
    at most 4n, so agreement at this many points (none of them poles, since
    every Pochhammer factor is positive for p > 0) proves equality for all p.
    """
    id = IdentityId.parse(id)
    if id not in (IdentityId.GAMMA_EVEN_MOMENT, IdentityId.BETA_MOMENT):
        raise ValueError(f"verify_in_p only applies to gamma-even-moment and beta-moment, not {id}")
    if n < 1:
        raise ValueError("n must be at least 1")
    return [verify(id, n, pj) for pj in p_points(n)]


# -- the corrected pi-series ------------------------------------------------

@dataclass(frozen=True)
class SeriesTally:
    """Partial sum of the positive series whose value is pi*C(2n,n)^2/16^n.

    ``partial_sum``, ``last_term`` and ``tail_bound`` are exact rationals;
    the target carries one power of pi and is kept as a PiGraded value.
    """

    n: int
    terms_used: int
    partial_sum: Fraction
    last_term: Fraction
    tail_bound: Fraction
    target: PiGraded

    def ratio(self) -> float:
        """partial_sum / target as a float."""
        return float(self.partial_sum) / float(self.target)

    def bracket(self) -> tuple[bool, bool]:
        """(partial <= target, target <= partial + tail_bound), decided at high precision."""
        tb = self.tail_bound
        # decimal digits needed to resolve a gap of size ~tail_bound, plus margin
        digits = (tb.denominator.bit_length() - tb.numerator.bit_length()) * 0.30103
        dps = max(50, int(digits) + 30)
        with mpmath.workdps(dps):
            target = self.target.to_mpf(dps)
            ps = mpmath.mpf(self.partial_sum.numerator) / self.partial_sum.denominator
            tbf = mpmath.mpf(tb.numerator) / tb.denominator
            return bool(ps <= target), bool(target <= ps + tbf)


def series_term(n: int, k: int) -> Fraction:
    """k-th term (1/2)_k^2 Gamma(n+1/2) / (k! Gamma(n+k+3/2)).

    The gamma ratio equals 1/(n+1/2)_(k+1), so every term is rational.
    """
    half = Fraction(1, 2)
    return pochhammer(half, k) ** 2 / (math.factorial(k) * pochhammer(n + half, k + 1))


def series_partial_sum(n: int, K: int) -> SeriesTally:
    """Sum the first K terms of the corrected series for moment order n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if K < 1:
        raise ValueError("K must be at least 1")
    half = gmpy2.mpq(1, 2)
    term = 1 / (n + half)
    total = gmpy2.mpq(0)
    last = term
    for k in range(K):
        total += term
        last = term
        term = term * (k + half) ** 2 / ((k + 1) * (n + k + 1 + half))
    last_f = Fraction(int(last.numerator), int(last.denominator))
    return SeriesTally(
        n=n,
        terms_used=K,
        partial_sum=Fraction(int(total.numerator), int(total.denominator)),
        last_term=last_f,
        tail_bound=last_f * (K + 1) / (n + Fraction(1, 2)),
        target=PiGraded.pi_power(2, Fraction(central_binomial(n) ** 2, 16**n)),
    )
