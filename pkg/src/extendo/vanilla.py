"""European call/put values today (to T1) and at the decision date (T1 to T2)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import ndtr

from .errors import DomainError
from .termstructure import PeriodParams

__all__ = ["VanillaQuote", "bs_t0", "bs_t1", "bs_t1_delta"]

ArrayLike = Union[float, np.ndarray]

# |d| beyond this gives N(d) == 0 or 1 in double precision
_D_CUTOFF = 40.0


@dataclass(frozen=True)
class VanillaQuote:
    price: ArrayLike
    d1: ArrayLike
    d2: ArrayLike


def _check_kind(kind: str) -> str:
    if kind not in ("call", "put"):
        raise DomainError(f"kind must be 'call' or 'put', got {kind!r}")
    return kind


def _black(kind, x, strike, carry_growth, discount, log_drift, stdev):
    """Generic lognormal European value.

    ``carry_growth`` multiplies the spot (``exp((mu - r) tau)``), ``discount``
    the strike; ``log_drift`` is ``(mu + stdev^2 / 2 tau)`` integrated.
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        d1 = (np.log(x) - math.log(strike) + log_drift) / stdev
    d1 = np.clip(d1, -_D_CUTOFF - stdev, _D_CUTOFF + stdev)
    d2 = d1 - stdev
    spot_leg = x * carry_growth
    strike_leg = strike * discount
    if kind == "call":
        price = spot_leg * ndtr(d1) - strike_leg * ndtr(d2)
    else:
        price = strike_leg * ndtr(-d2) - spot_leg * ndtr(-d1)
    price = np.maximum(price, 0.0)
    if scalar:
        return VanillaQuote(float(price), float(d1), float(d2))
    return VanillaQuote(price, d1, d2)


def bs_t0(kind: str, spot: float, strike: float, params: PeriodParams) -> VanillaQuote:
    """European option struck at ``strike`` expiring at T1, valued today."""
    _check_kind(kind)
    if not (spot > 0.0 and strike > 0.0):
        raise DomainError("spot and strike must be > 0")
    s1 = params.s1
    return _black(
        kind,
        float(spot),
        float(strike),
        math.exp((params.mu1 - params.r1) * params.T1),
        math.exp(-params.r1 * params.T1),
        params.mu1 * params.T1 + 0.5 * s1 * s1,
        s1,
    )


def bs_t1(kind: str, x: ArrayLike, strike: float, params: PeriodParams) -> VanillaQuote:
    """European option struck at ``strike`` expiring at T2, valued at T1 for spot ``x``.

    ``x`` may be an array (used by the Monte Carlo oracle).
    """
    _check_kind(kind)
    if not strike > 0.0:
        raise DomainError("strike must be > 0")
    if np.any(np.asarray(x) <= 0.0):
        raise DomainError("spot at T1 must be > 0")
    tau = params.tau
    s12 = params.s12
    return _black(
        kind,
        x,
        float(strike),
        math.exp((params.mu12 - params.r12) * tau),
        math.exp(-params.r12 * tau),
        params.mu12 * tau + 0.5 * s12 * s12,
        s12,
    )


def bs_t1_delta(kind: str, x: ArrayLike, strike: float, params: PeriodParams) -> ArrayLike:
    """dV/dx of :func:`bs_t1`."""
    q = bs_t1(kind, x, strike, params)
    growth = math.exp((params.mu12 - params.r12) * params.tau)
    if kind == "call":
        out = growth * ndtr(q.d1)
    else:
        out = -growth * ndtr(-np.asarray(q.d1))
    return float(out) if np.ndim(out) == 0 else out
