"""Exact arithmetic over the rationals extended by half-integer powers of pi.

Every gamma or beta value at a positive half-integer argument has the form
``q * pi**(m/2)`` with ``q`` rational, so sums and products of such values
live in the ring of finite sums ``sum_m q_m * pi**(m/2)``.  :class:`PiGraded`
implements that ring with ``sqrt(pi)`` treated as transcendental, which makes
coefficient-wise comparison an exact equality test.

Rationals are :class:`fractions.Fraction` throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

import mpmath

__all__ = [
    "Rational",
    "HalfInteger",
    "PiGraded",
    "UnsupportedQuotient",
    "as_rational",
    "binomial",
    "central_binomial",
    "pochhammer",
    "gamma_ratio_half",
    "gamma_value",
    "beta_value",
    "value_arith",
    "mgf_even_coefficient",
]

Rational = Fraction
RationalLike = Union[int, Fraction, str]


class UnsupportedQuotient(ArithmeticError):
    """Division by a value that is not a single nonzero pi-monomial."""


def as_rational(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction.

    Floats are refused on purpose: they would silently import rounding error.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected int, Fraction or 'a/b' string, got {type(x).__name__}")


@dataclass(frozen=True, order=True)
class HalfInteger:
    """An exact multiple of 1/2, stored as twice its value."""

    twice_value: int

    @classmethod
    def of(cls, x: Union["HalfInteger", RationalLike]) -> "HalfInteger":
        if isinstance(x, HalfInteger):
            return x
        q = as_rational(x)
        if (2 * q).denominator != 1:
            raise ValueError(f"{q} is not a half-integer")
        return cls(int(2 * q))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __add__(self, other):
        other = HalfInteger.of(other)
        return HalfInteger(self.twice_value + other.twice_value)

    __radd__ = __add__

    def __sub__(self, other):
        other = HalfInteger.of(other)
        return HalfInteger(self.twice_value - other.twice_value)

    def __repr__(self) -> str:
        return f"HalfInteger({self.value})"


class PiGraded:
    """Finite sum ``sum_m coeff[m] * pi**(m/2)`` with rational coefficients.

    Instances are immutable and hashable.  Zero coefficients are never
    stored, so the empty mapping is the zero value and ``==`` compares
    coefficient by coefficient.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, RationalLike] | Iterable[tuple[int, RationalLike]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for m, q in items:
            m = int(m)
            acc[m] = acc.get(m, Fraction(0)) + as_rational(q)
        self._terms = tuple(sorted((m, q) for m, q in acc.items() if q != 0))

    @classmethod
    def rational(cls, q: RationalLike) -> "PiGraded":
        return cls({0: q})

    @classmethod
    def pi_power(cls, half_exponent: int, coeff: RationalLike = 1) -> "PiGraded":
        """``coeff * pi**(half_exponent/2)``."""
        return cls({half_exponent: coeff})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def is_rational(self) -> bool:
        return self.is_zero or (self.is_monomial and self._terms[0][0] == 0)

    def as_rational(self) -> Fraction:
        """Return the value as a Fraction; raises if a pi power survives."""
        if self.is_zero:
            return Fraction(0)
        if not self.is_rational:
            raise ValueError(f"{self!r} is not rational")
        return self._terms[0][1]

    def coefficient(self, half_exponent: int) -> Fraction:
        return dict(self._terms).get(half_exponent, Fraction(0))

    def _coerce(self, other) -> "PiGraded":
        if isinstance(other, PiGraded):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PiGraded.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PiGraded(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        return PiGraded((m, -q) for m, q in self._terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PiGraded((m1 + m2, q1 * q2) for m1, q1 in self._terms for m2, q2 in other._terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("division by the zero PiGraded value")
        if not other.is_monomial:
            raise UnsupportedQuotient(f"cannot divide by multi-term value {other!r}")
        (m2, q2), = other._terms
        return PiGraded((m1 - m2, q1 / q2) for m1, q1 in self._terms)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = PiGraded.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def to_mpf(self, dps: int = 30):
        """Evaluate with ``dps`` significant digits of pi."""
        with mpmath.workdps(dps + 5):
            total = mpmath.mpf(0)
            for m, q in self._terms:
                total += mpmath.mpf(q.numerator) / q.denominator * mpmath.pi ** (mpmath.mpf(m) / 2)
            return +total

    def __float__(self) -> float:
        return float(self.to_mpf(30))

    def __repr__(self) -> str:
        if self.is_zero:
            return "PiGraded(0)"
        parts = []
        for m, q in self._terms:
            if m == 0:
                parts.append(str(q))
            elif m % 2 == 0:
                parts.append(f"{q}*pi^{m // 2}")
            else:
                parts.append(f"{q}*pi^({m}/2)")
        return "PiGraded(" + " + ".join(parts) + ")"


def binomial(n: int, k: int) -> int:
    """C(n, k), with 0 outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def central_binomial(n: int) -> int:
    return binomial(2 * n, n)


def pochhammer(a: RationalLike, m: int) -> Fraction:
    """Rising factorial a(a+1)...(a+m-1); 1 when m == 0."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    a = as_rational(a)
    # Accumulate numerator and denominator separately; one reduction at the end.
    num, den = 1, 1
    for i in range(m):
        t = a + i
        num *= t.numerator
        den *= t.denominator
    return Fraction(num, den)


def gamma_ratio_half(n: int) -> Fraction:
    """Gamma(n + 1/2) / Gamma(1/2) = C(2n, n) n! / 4**n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Fraction(central_binomial(n) * math.factorial(n), 4**n)


def gamma_value(a: Union[HalfInteger, RationalLike]) -> PiGraded:
    """Exact Gamma(a) for a positive half-integer ``a``."""
    h = HalfInteger.of(a)
    if h.twice_value <= 0:
        raise ValueError(f"Gamma is only supported for positive half-integers, got {h.value}")
    if h.is_integer:
        return PiGraded.rational(math.factorial(h.twice_value // 2 - 1))
    return PiGraded.pi_power(1, gamma_ratio_half((h.twice_value - 1) // 2))


def beta_value(a: Union[HalfInteger, RationalLike], b: Union[HalfInteger, RationalLike]) -> PiGraded:
    """B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b) for positive half-integers."""
    ha, hb = HalfInteger.of(a), HalfInteger.of(b)
    return gamma_value(ha) * gamma_value(hb) / gamma_value(ha + hb)


_OPS = {
    "add": PiGraded.__add__,
    "sub": PiGraded.__sub__,
    "mul": PiGraded.__mul__,
    "div": PiGraded.__truediv__,
}


def value_arith(x: PiGraded, y: PiGraded, op: str) -> PiGraded:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two PiGraded values."""
    try:
        f = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return f(x, y)


def mgf_even_coefficient(p: RationalLike, n: int) -> Fraction:
    """Coefficient of t**(2n) in (1 - t**2)**(-p), i.e. (p)_n / n!.

    ``(2n)!`` times this is the 2n-th moment of the difference of two
    independent Ga(p) variables.
    """
    p = as_rational(p)
    if p <= 0:
        raise ValueError("p must be positive")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return pochhammer(p, n) / math.factorial(n)
