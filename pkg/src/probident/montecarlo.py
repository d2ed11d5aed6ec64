"""Seeded samplers and Monte Carlo even-moment estimators.

Streams are derived with :class:`numpy.random.SeedSequence`: stream ``i`` of
seed ``s`` is ``SeedSequence(s, spawn_key=(i,))`` driving a PCG64 generator,
so equal (seed, stream_id) pairs replay the same draws and distinct ids give
statistically independent streams.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .exact import as_rational, central_binomial, mgf_even_coefficient, pochhammer

__all__ = [
    "DEFAULT_SEED",
    "Z_THRESHOLD",
    "STATISTICS",
    "RngStream",
    "MomentAccumulator",
    "SampleStats",
    "sample_gamma",
    "sample_beta",
    "sample_arcsine",
    "exact_target",
    "estimate_even_moment",
    "estimate_odd_moment",
    "arcsine_even_moment",
    "factorization_check",
]

DEFAULT_SEED = 0x9E3779B97F4A7C15
Z_THRESHOLD = 5.0
MAX_ORDER = 5
MIN_SAMPLES = 10_000
_CHUNK = 1 << 18

STATISTICS = ("gamma-diff", "gamma-sum", "t-ratio", "beta-diff")


@dataclass
class RngStream:
    """A reproducible random stream identified by (seed, stream_id)."""

    seed: int = DEFAULT_SEED
    stream_id: int = 0
    generator: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def child(self, offset: int) -> "RngStream":
        """A sibling stream of the same seed."""
        return RngStream(self.seed, self.stream_id + offset)


def _standard_gamma_ge1(p: float, size: int, gen: np.random.Generator) -> np.ndarray:
    # Marsaglia-Tsang: squeeze test first, log test for the rest
    d = p - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(size)
    todo = np.arange(size)
    while todo.size:
        m = todo.size
        x = gen.standard_normal(m)
        u = gen.random(m)
        v = 1.0 + c * x
        ok = v > 0
        v = np.where(ok, v * v * v, 1.0)
        x2 = x * x
        accept = ok & (
            (u < 1.0 - 0.0331 * x2 * x2)
            | (np.log(u) < 0.5 * x2 + d * (1.0 - v + np.log(v)))
        )
        out[todo[accept]] = d * v[accept]
        todo = todo[~accept]
    return out


def sample_gamma(p: float, rng: RngStream, size: Optional[int] = None):
    """Draw from Ga(p) with unit scale.

    p >= 1 uses the Marsaglia-Tsang squeeze/rejection method; p < 1 draws
    Ga(p + 1) and multiplies by U**(1/p).  Returns a float when ``size`` is
    None, else an array.
    """
    p = float(p)
    if not p > 0:
        raise ValueError(f"gamma shape must be positive, got {p}")
    n = 1 if size is None else int(size)
    gen = rng.generator
    if p >= 1:
        out = _standard_gamma_ge1(p, n, gen)
    else:
        out = _standard_gamma_ge1(p + 1.0, n, gen) * gen.random(n) ** (1.0 / p)
    return float(out[0]) if size is None else out


def sample_arcsine(rng: RngStream, size: Optional[int] = None):
    """Be(1/2, 1/2) draws via sin^2(pi U / 2)."""
    n = 1 if size is None else int(size)
    out = np.sin(0.5 * np.pi * rng.generator.random(n)) ** 2
    return float(out[0]) if size is None else out


def sample_beta(a: float, b: float, rng: RngStream, size: Optional[int] = None):
    """Be(a, b) draws as X / (X + Y) with X ~ Ga(a), Y ~ Ga(b).

    The arcsine case a = b = 1/2 takes the sin^2 shortcut.
    """
    a, b = float(a), float(b)
    if not (a > 0 and b > 0):
        raise ValueError(f"beta parameters must be positive, got ({a}, {b})")
    if a == 0.5 and b == 0.5:
        return sample_arcsine(rng, size)
    n = 1 if size is None else int(size)
    x = sample_gamma(a, rng, n)
    y = sample_gamma(b, rng, n)
    out = x / (x + y)
    return float(out[0]) if size is None else out


@dataclass
class MomentAccumulator:
    """Running count/mean/M2 with the pairwise merge of Chan et al."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def add(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float)
        if values.size == 0:
            return
        other = MomentAccumulator(values.size, float(values.mean()),
                                  float(((values - values.mean()) ** 2).sum()))
        self.merge(other)

    def merge(self, other: "MomentAccumulator") -> "MomentAccumulator":
        if other.count == 0:
            return self
        n = self.count + other.count
        delta = other.mean - self.mean
        self.mean += delta * other.count / n
        self.m2 += other.m2 + delta * delta * self.count * other.count / n
        self.count = n
        return self

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0

    @property
    def std_error(self) -> float:
        return math.sqrt(self.variance / self.count) if self.count else math.inf


@dataclass(frozen=True)
class SampleStats:
    statistic_id: str
    n: int
    p: Optional[Fraction]
    samples: int
    mean: float
    std_error: float
    exact_target: float
    z_score: float

    @property
    def passed(self) -> bool:
        return abs(self.z_score) <= Z_THRESHOLD


def _z(mean: float, target: float, se: float) -> float:
    if se > 0:
        return (mean - target) / se
    return 0.0 if mean == target else math.copysign(math.inf, mean - target)


def exact_target(statistic_id: str, n: int, p=None) -> Fraction:
    """Exact 2n-th moment of a statistic, from the closed forms in exact-core."""
    if statistic_id == "gamma-diff":
        return math.factorial(2 * n) * mgf_even_coefficient(p, n)
    if statistic_id == "gamma-sum":
        return pochhammer(2 * as_rational(p), 2 * n)
    if statistic_id == "t-ratio":
        half = Fraction(1, 2)
        return pochhammer(half, n) / pochhammer(as_rational(p) + half, n)
    if statistic_id == "beta-diff":
        return Fraction(central_binomial(n) ** 2, 16**n)
    raise ValueError(f"unknown statistic {statistic_id!r}")


def _draw_statistic(statistic_id: str, p: float, size: int, rng: RngStream) -> np.ndarray:
    if statistic_id == "beta-diff":
        return sample_arcsine(rng, size) - sample_arcsine(rng, size)
    x1 = sample_gamma(p, rng, size)
    x2 = sample_gamma(p, rng, size)
    if statistic_id == "gamma-diff":
        return x1 - x2
    if statistic_id == "gamma-sum":
        return x1 + x2
    return (x1 - x2) / (x1 + x2)


def _accumulate(statistic_id, p, power, samples, rng) -> MomentAccumulator:
    acc = MomentAccumulator()
    left = samples
    while left:
        m = min(left, _CHUNK)
        acc.add(_draw_statistic(statistic_id, p, m, rng) ** power)
        left -= m
    return acc


def _validate(statistic_id, n, p, samples):
    if statistic_id not in STATISTICS:
        raise ValueError(f"unknown statistic {statistic_id!r}; expected one of {', '.join(STATISTICS)}")
    if not 0 <= n <= MAX_ORDER:
        raise ValueError(f"moment order must lie in 0..{MAX_ORDER}, got {n}")
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    if statistic_id == "beta-diff":
        return None
    if p is None:
        raise ValueError(f"statistic {statistic_id} requires p")
    p = as_rational(p)
    if p <= 0:
        raise ValueError("p must be positive")
    return p


def estimate_even_moment(statistic_id: str, n: int, p=None, samples: int = 1_000_000,
                         rng: Optional[RngStream] = None) -> SampleStats:
    """Monte Carlo estimate of E[S^(2n)] with a z-score against the exact value.

    ``statistic_id`` is one of gamma-diff (X1 - X2), gamma-sum (X1 + X2),
    t-ratio ((X1 - X2)/(X1 + X2)) for X1, X2 ~ Ga(p), or beta-diff (Y1 - Y2)
    for arcsine Y1, Y2.  ``p`` is ignored for beta-diff.
    """
    p = _validate(statistic_id, n, p, samples)
    rng = rng if rng is not None else RngStream()
    acc = _accumulate(statistic_id, float(p) if p is not None else None, 2 * n, samples, rng)
    target = float(exact_target(statistic_id, n, p))
    return SampleStats(statistic_id, n, p, acc.count, acc.mean, acc.std_error,
                       target, _z(acc.mean, target, acc.std_error))


def estimate_odd_moment(statistic_id: str, n: int, p=None, samples: int = 1_000_000,
                        rng: Optional[RngStream] = None) -> SampleStats:
    """E[S^(2n+1)] for the symmetric statistics; the exact target is 0."""
    if statistic_id == "gamma-sum":
        raise ValueError("gamma-sum is not symmetric; its odd moments are not zero")
    p = _validate(statistic_id, n, p, samples)
    rng = rng if rng is not None else RngStream()
    acc = _accumulate(statistic_id, float(p) if p is not None else None, 2 * n + 1, samples, rng)
    return SampleStats(statistic_id, 2 * n + 1, p, acc.count, acc.mean, acc.std_error,
                       0.0, _z(acc.mean, 0.0, acc.std_error))


def _symmetric_arcsine(rng: RngStream, size: int) -> np.ndarray:
    # density 1/(pi sqrt(1 - y^2)) on (-1, 1)
    return np.cos(np.pi * rng.generator.random(size))


def arcsine_even_moment(n: int, samples: int = 1_000_000, rng: Optional[RngStream] = None) -> SampleStats:
    """E[Y^(2n)] for Y with density 1/(pi sqrt(1 - y^2)); target C(2n,n)/4^n."""
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    rng = rng if rng is not None else RngStream()
    acc = MomentAccumulator()
    left = samples
    while left:
        m = min(left, _CHUNK)
        acc.add(_symmetric_arcsine(rng, m) ** (2 * n))
        left -= m
    target = central_binomial(n) / 4**n
    return SampleStats("arcsine", n, None, acc.count, acc.mean, acc.std_error,
                       target, _z(acc.mean, target, acc.std_error))


def factorization_check(n: int, samples: int = 1_000_000, rng: Optional[RngStream] = None) -> SampleStats:
    """Estimate E[(X1+X2)^(2n)] * E[Y^(2n)] for X ~ Ga(1/2), Y symmetric arcsine.

    The two factors come from independent child streams; the standard error
    of the product follows the delta method.  The exact target is the even
    moment of X1 - X2, (2n)! (1/2)_n / n!.
    """
    if not 0 <= n <= MAX_ORDER:
        raise ValueError(f"moment order must lie in 0..{MAX_ORDER}, got {n}")
    rng = rng if rng is not None else RngStream()
    s = estimate_even_moment("gamma-sum", n, Fraction(1, 2), samples, rng.child(1))
    y = arcsine_even_moment(n, samples, rng.child(2))
    mean = s.mean * y.mean
    se = math.hypot(s.std_error * y.mean, y.std_error * s.mean)
    target = float(math.factorial(2 * n) * mgf_even_coefficient(Fraction(1, 2), n))
    return SampleStats("factorization", n, Fraction(1, 2), samples, mean, se, target, _z(mean, target, se))
