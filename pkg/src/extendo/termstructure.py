"""Piecewise-constant term structures and the period averages used by the pricer.

Every model input (domestic rate, carry rate, volatility) enters the prices
only through integrals over ``[0, T1]``, ``[0, T2]`` and ``[T1, T2]``.  With
piecewise-constant curves those integrals are finite sums, so no quadrature
error reaches the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContractError, CurveError, CurveHorizonError, InputError

__all__ = [
    "TermStructure",
    "MarketData",
    "PeriodParams",
    "integrate",
    "average",
    "period_params",
]


@dataclass(frozen=True)
class TermStructure:
    """Step function of time: ``values[k]`` applies on ``(end_times[k-1], end_times[k]]``.

    The first segment starts at ``t = 0``.  Adjacent segments carrying the
    same value are merged on construction, so a refined curve and its coarse
    original are the same object up to equality.
    """

    end_times: tuple[float, ...]
    values: tuple[float, ...]
    positive: bool = False

    def __post_init__(self) -> None:
        ends = tuple(float(t) for t in self.end_times)
        vals = tuple(float(v) for v in self.values)
        if not ends:
            raise CurveError("curve has no segments")
        if len(ends) != len(vals):
            raise CurveError("end_times and values differ in length")
        prev = 0.0
        for k, (t, v) in enumerate(zip(ends, vals)):
            if not math.isfinite(t):
                raise CurveError(f"segment {k}: end_time is not finite")
            if t <= prev:
                raise CurveError(f"segment {k}: end_time {t!r} not strictly increasing")
            if not math.isfinite(v):
                raise CurveError(f"segment {k}: value is not finite")
            if self.positive and v <= 0.0:
                raise CurveError(f"segment {k}: volatility {v!r} must be > 0")
            prev = t
        merged_t: list[float] = []
        merged_v: list[float] = []
        for t, v in zip(ends, vals):
            if merged_v and merged_v[-1] == v:
                merged_t[-1] = t
            else:
                merged_t.append(t)
                merged_v.append(v)
        object.__setattr__(self, "end_times", tuple(merged_t))
        object.__setattr__(self, "values", tuple(merged_v))

    @classmethod
    def flat(cls, value: float, horizon: float = 100.0, positive: bool = False) -> "TermStructure":
        return cls((horizon,), (value,), positive=positive)

    @classmethod
    def from_segments(
        cls, segments: Iterable[Sequence[float]], positive: bool = False
    ) -> "TermStructure":
        """Build from ``(end_time, value)`` pairs."""
        pairs = [tuple(s) for s in segments]
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), positive=positive)

    @property
    def horizon(self) -> float:
        return self.end_times[-1]

    @property
    def segments(self) -> list[tuple[float, float]]:
        return list(zip(self.end_times, self.values))

    def is_constant_on(self, t_hi: float) -> bool:
        """True if a single value covers ``[0, t_hi]``."""
        return self.end_times[0] >= t_hi

    def __call__(self, t: float) -> float:
        if t < 0.0 or t > self.horizon:
            raise CurveHorizonError(f"t={t!r} outside [0, {self.horizon!r}]")
        for end, v in zip(self.end_times, self.values):
            if t <= end:
                return v
        return self.values[-1]  # pragma: no cover


def _overlaps(curve: TermStructure, t_lo: float, t_hi: float):
    if not (0.0 <= t_lo <= t_hi):
        raise InputError(f"need 0 <= t_lo <= t_hi, got [{t_lo!r}, {t_hi!r}]")
    if t_hi > curve.horizon:
        raise CurveHorizonError(
            f"query up to t={t_hi!r} beyond curve horizon {curve.horizon!r}"
        )
    start = 0.0
    for end, v in zip(curve.end_times, curve.values):
        lo = max(start, t_lo)
        hi = min(end, t_hi)
        if hi > lo:
            yield v, lo, hi
        if end >= t_hi:
            break
        start = end


def integrate(curve: TermStructure, t_lo: float, t_hi: float, squared: bool = False) -> float:
    """Exact integral of the step function (or of its square) over ``[t_lo, t_hi]``."""
    total = 0.0
    for v, lo, hi in _overlaps(curve, t_lo, t_hi):
        total += (v * v if squared else v) * (hi - lo)
    return total


def average(curve: TermStructure, t_lo: float, t_hi: float, squared: bool = False) -> float:
    """Time average over ``[t_lo, t_hi]``.

    Weighted as ``sum(value * overlap / length)`` so that a segment covering
    the whole window contributes its value exactly (weight ``1.0``).
    """
    if t_hi <= t_lo:
        raise InputError("average needs t_hi > t_lo")
    length = t_hi - t_lo
    total = 0.0
    for v, lo, hi in _overlaps(curve, t_lo, t_hi):
        total += (v * v if squared else v) * ((hi - lo) / length)
    return total


@dataclass(frozen=True)
class MarketData:
    """Spot plus the rate, carry and volatility curves of the GBM model."""

    spot: float
    rate: TermStructure
    carry: TermStructure
    vol: TermStructure

    def __post_init__(self) -> None:
        if not (math.isfinite(self.spot) and self.spot > 0.0):
            raise InputError(f"spot must be finite and > 0, got {self.spot!r}")
        if not self.vol.positive:
            object.__setattr__(
                self, "vol", TermStructure(self.vol.end_times, self.vol.values, positive=True)
            )

    @classmethod
    def flat(cls, spot: float, r: float, q: float, sigma: float, horizon: float = 100.0):
        return cls(
            float(spot),
            TermStructure.flat(r, horizon),
            TermStructure.flat(q, horizon),
            TermStructure.flat(sigma, horizon, positive=True),
        )

    def is_constant_on(self, t_hi: float) -> bool:
        return all(c.is_constant_on(t_hi) for c in (self.rate, self.carry, self.vol))


@dataclass(frozen=True)
class PeriodParams:
    """Averaged model parameters over ``[0, T1]``, ``[0, T2]`` and ``[T1, T2]``.

    ``mu*`` are averages of ``r - q``, ``r*`` averages of ``r`` and ``sigma*``
    root-mean-square volatilities.  ``rho`` is the correlation of
    ``(ln X_T1, ln X_T2)``.
    """

    T1: float
    T2: float
    mu1: float
    mu2: float
    r1: float
    r2: float
    sigma1: float
    sigma2: float
    rho: float
    r12: float
    mu12: float
    sigma12: float

    @property
    def tau(self) -> float:
        return self.T2 - self.T1

    @property
    def s1(self) -> float:
        """Total standard deviation of ``ln X_T1``."""
        return self.sigma1 * math.sqrt(self.T1)

    @property
    def s2(self) -> float:
        return self.sigma2 * math.sqrt(self.T2)

    @property
    def s12(self) -> float:
        return self.sigma12 * math.sqrt(self.tau)


def period_params(market: MarketData, T1: float, T2: float) -> PeriodParams:
    if not (math.isfinite(T1) and math.isfinite(T2)):
        raise ContractError("T1 and T2 must be finite")
    if not (0.0 < T1 < T2):
        raise ContractError(f"need 0 < T1 < T2, got T1={T1!r}, T2={T2!r}")
    r, q, vol = market.rate, market.carry, market.vol

    r1 = average(r, 0.0, T1)
    r2 = average(r, 0.0, T2)
    mu1 = r1 - average(q, 0.0, T1)
    mu2 = r2 - average(q, 0.0, T2)
    sigma1 = math.sqrt(average(vol, 0.0, T1, squared=True))
    sigma2 = math.sqrt(average(vol, 0.0, T2, squared=True))
    rho = (sigma1 * math.sqrt(T1)) / (sigma2 * math.sqrt(T2))

    r12 = average(r, T1, T2)
    mu12 = r12 - average(q, T1, T2)
    sigma12 = math.sqrt(average(vol, T1, T2, squared=True))
    return PeriodParams(
        T1=float(T1),
        T2=float(T2),
        mu1=mu1,
        mu2=mu2,
        r1=r1,
        r2=r2,
        sigma1=sigma1,
        sigma2=sigma2,
        rho=rho,
        r12=r12,
        mu12=mu12,
        sigma12=sigma12,
    )
