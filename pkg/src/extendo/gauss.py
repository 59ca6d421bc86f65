"""Univariate and bivariate standard normal distribution functions.

The bivariate CDF follows Genz's refinement of the Drezner-Wesolowsky
method: Gauss-Legendre quadrature of the Plackett/arcsin integral for
moderate correlation and the Drezner-Wesolowsky series plus quadrature of
the remainder for ``|rho| >= 0.925``.  Accuracy is close to double precision
over the whole domain, which the rectangle probabilities rely on.

All functions accept ``+-inf`` bounds.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import ndtr

from .errors import DomainError

__all__ = [
    "norm_pdf",
    "norm_cdf",
    "bvn_cdf",
    "interval_prob",
    "rect_prob",
]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_TWO_PI = 2.0 * math.pi


def _half_rule(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    # negative half of the symmetric n-point rule; the sums use both +-x
    x, w = np.polynomial.legendre.leggauss(n)
    half = n // 2
    return tuple(float(v) for v in x[:half]), tuple(float(v) for v in w[:half])


_GL6 = _half_rule(6)
_GL12 = _half_rule(12)
_GL20 = _half_rule(20)


def _check(x: float, name: str) -> float:
    x = float(x)
    if math.isnan(x):
        raise DomainError(f"{name} is NaN")
    return x


def _check_rho(rho: float) -> float:
    rho = float(rho)
    if math.isnan(rho) or abs(rho) > 1.0:
        raise DomainError(f"correlation must lie in [-1, 1], got {rho!r}")
    return rho


def norm_pdf(x):
    """Standard normal density; works elementwise on arrays."""
    return _INV_SQRT_2PI * np.exp(-0.5 * np.square(x))


def norm_cdf(x):
    """P(Z <= x).  NaN raises; arrays are evaluated elementwise."""
    if np.ndim(x) == 0:
        return float(ndtr(_check(x, "x")))
    x = np.asarray(x, dtype=float)
    if np.isnan(x).any():
        raise DomainError("x contains NaN")
    return ndtr(x)


def _phi(x: float) -> float:
    return float(ndtr(x))


def _bvnu(h: float, k: float, r: float) -> float:
    """P(X > h, Y > k) for a standard bivariate normal with correlation ``r``."""
    if h == math.inf or k == math.inf:
        return 0.0
    if h == -math.inf:
        return 1.0 if k == -math.inf else _phi(-k)
    if k == -math.inf:
        return _phi(-h)

    ar = abs(r)
    if ar < 0.3:
        xs, ws = _GL6
    elif ar < 0.75:
        xs, ws = _GL12
    else:
        xs, ws = _GL20

    hk = h * k
    bvn = 0.0
    if ar < 0.925:
        hs = 0.5 * (h * h + k * k)
        asr = math.asin(r)
        for x, w in zip(xs, ws):
            sn = math.sin(0.5 * asr * (1.0 - x))
            bvn += w * math.exp((sn * hk - hs) / (1.0 - sn * sn))
            sn = math.sin(0.5 * asr * (1.0 + x))
            bvn += w * math.exp((sn * hk - hs) / (1.0 - sn * sn))
        bvn = bvn * asr / (2.0 * _TWO_PI) + _phi(-h) * _phi(-k)
    else:
        if r < 0.0:
            k = -k
            hk = -hk
        if ar < 1.0:
            as_ = (1.0 - r) * (1.0 + r)
            a = math.sqrt(as_)
            bs = (h - k) ** 2
            c = (4.0 - hk) / 8.0
            d = (12.0 - hk) / 16.0
            asr = -0.5 * (bs / as_ + hk)
            if asr > -100.0:
                bvn = a * math.exp(asr) * (
                    1.0 - c * (bs - as_) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as_ * as_ / 5.0
                )
            if hk > -100.0:
                b = math.sqrt(bs)
                sp = math.sqrt(_TWO_PI) * _phi(-b / a)
                bvn -= math.exp(-0.5 * hk) * sp * b * (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0)
            a *= 0.5
            for x, w in zip(xs, ws):
                for sgn in (-1.0, 1.0):
                    xs2 = (a + sgn * a * x) ** 2
                    rs = math.sqrt(1.0 - xs2)
                    asr = -0.5 * (bs / xs2 + hk)
                    if asr > -100.0:
                        sp = 1.0 + c * xs2 * (1.0 + d * xs2)
                        ep = math.exp(-hk * xs2 / (2.0 * (1.0 + rs) ** 2)) / rs
                        bvn += a * w * math.exp(asr) * (ep - sp)
            bvn = -bvn / _TWO_PI
        if r > 0.0:
            bvn += _phi(-max(h, k))
        elif h >= k:
            bvn = -bvn
        else:
            # P(h < X < k') with k' = -k_original
            if h < 0.0:
                span = _phi(k) - _phi(h)
            else:
                span = _phi(-h) - _phi(-k)
            bvn = span - bvn
    return min(1.0, max(0.0, bvn))


def bvn_cdf(a: float, b: float, rho: float) -> float:
    """P(Z1 <= a, Z2 <= b) with ``corr(Z1, Z2) = rho``."""
    a = _check(a, "a")
    b = _check(b, "b")
    rho = _check_rho(rho)
    return _bvnu(-a, -b, rho)


def interval_prob(a: float, b: float) -> float:
    """P(a <= Z <= b); requires ``a <= b``.

    Evaluated on the side of zero where the tail probabilities are small,
    to keep relative accuracy for intervals far in a tail.
    """
    a = _check(a, "a")
    b = _check(b, "b")
    if a > b:
        raise DomainError(f"interval_prob needs a <= b, got ({a!r}, {b!r})")
    if a > 0.0:
        p = _phi(-a) - _phi(-b)
    else:
        p = _phi(b) - _phi(a)
    return max(0.0, p)


def rect_prob(a: float, b: float, c: float, d: float, rho: float) -> float:
    """Mass of the standard bivariate normal over ``[a, b] x [c, d]``."""
    a, b, c, d = (_check(v, n) for v, n in ((a, "a"), (b, "b"), (c, "c"), (d, "d")))
    rho = _check_rho(rho)
    if a > b or c > d:
        raise DomainError(f"rect_prob needs a <= b and c <= d, got ({a!r}, {b!r}, {c!r}, {d!r})")
    if a == b or c == d:
        return 0.0
    p = _bvnu(-b, -d, rho) - _bvnu(-a, -d, rho) - _bvnu(-b, -c, rho) + _bvnu(-a, -c, rho)
    return min(1.0, max(0.0, p))
