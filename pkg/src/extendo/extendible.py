"""Closed-form prices of holder-extendible calls and puts.

Two algebraically equivalent forms are provided for each option:

* ``"rect"`` - the five-line form written with rectangle probabilities of
  the standard bivariate normal (the production form);
* ``"diff"`` - the same value written as differences of plain bivariate
  and univariate CDFs.

They are asserted against each other in the test suite; any sign or
argument slip in one of them shows up as a mismatch.

The module also reconstructs the two historically published, erroneous
versions of the put formula.  Those exist only to demonstrate the errata
and require ``reproduce_errata=True``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .boundary import ContractSpec, DecisionBoundaries, solve_boundaries
from .errors import ContractError, ErrataGateError, UnsupportedSettingError
from .gauss import bvn_cdf, interval_prob, norm_cdf, rect_prob
from .termstructure import MarketData, PeriodParams, period_params
from .vanilla import bs_t0

__all__ = [
    "AbcdGamma",
    "PriceReport",
    "PutVariant",
    "abcd_gamma",
    "price",
    "price_call",
    "price_put",
    "price_many",
    "price_put_variant",
    "price_put_longstaff1990",
    "price_put_haug1998",
    "CORRECTED_PUT",
    "longstaff_typos",
    "haug_typos",
]

FORMS = ("rect", "diff")
NEG_INF = -math.inf


@dataclass(frozen=True)
class AbcdGamma:
    """Standardised log-moneyness of I1, I2, K2, K1 and the derived gammas."""

    a: float
    b: float
    c: float
    d: float
    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float


@dataclass(frozen=True)
class PriceReport:
    """Price with its five-line decomposition.

    ``terms[0]`` is the vanilla price plus the first bivariate term, so that
    ``price == sum(terms)``.  For a never-extended contract ``terms`` is the
    vanilla price followed by four zeros.
    """

    kind: str
    form: str
    price: float
    vanilla_component: float
    terms: tuple[float, float, float, float, float]
    extension_probability: float
    boundaries: DecisionBoundaries
    params: PeriodParams
    constants: Optional[AbcdGamma]


def _standardize(level: float, spot: float, drift_t: float, stdev: float) -> float:
    if level == 0.0:
        return NEG_INF
    if level == math.inf:
        return math.inf
    return (math.log(level / spot) - drift_t + 0.5 * stdev * stdev) / stdev


def abcd_gamma(
    spec: ContractSpec, params: PeriodParams, boundaries: DecisionBoundaries, spot: float
) -> AbcdGamma:
    """Constants of the pricing formulas.

    A never-extended contract (or an empty extension region, ``I1 >= I2``)
    is collapsed to the empty interval at ``K1``, which zeroes every
    extension term.
    """
    s1, s2 = params.s1, params.s2
    I1, I2 = boundaries.I1, boundaries.I2
    if boundaries.never_extended or I1 is None or I2 is None or I1 >= I2:
        I1 = I2 = spec.K1
    a = _standardize(I1, spot, params.mu1 * params.T1, s1)
    b = _standardize(I2, spot, params.mu1 * params.T1, s1)
    c = _standardize(spec.K2, spot, params.mu2 * params.T2, s2)
    d = _standardize(spec.K1, spot, params.mu1 * params.T1, s1)
    return AbcdGamma(a, b, c, d, s1 - b, s1 - a, s2 - c, s1 - d)


def _legs(spot: float, p: PeriodParams) -> tuple[float, float, float, float]:
    fwd1 = spot * math.exp((p.mu1 - p.r1) * p.T1)
    fwd2 = spot * math.exp((p.mu2 - p.r2) * p.T2)
    return fwd1, fwd2, math.exp(-p.r1 * p.T1), math.exp(-p.r2 * p.T2)


def _call_terms_rect(spec, p, g, spot, vanilla):
    s1, s2, rho = p.s1, p.s2, p.rho
    fwd1, fwd2, df1, df2 = _legs(spot, p)
    g1, g2, g3, g4 = g.gamma1, g.gamma2, g.gamma3, g.gamma4
    return (
        vanilla + fwd2 * rect_prob(g1, g2, NEG_INF, g3, rho),
        -df2 * spec.K2 * rect_prob(g1 - s1, g2 - s1, NEG_INF, g3 - s2, rho),
        -df1 * spec.A * interval_prob(g1 - s1, g2 - s1),
        -fwd1 * interval_prob(g1, g4),
        df1 * spec.K1 * interval_prob(g1 - s1, g4 - s1),
    )


def _gap(x, y):
    """N(x) - N(y), taken on the lower-tail side to avoid 1 - 1 cancellation."""
    if x + y > 0.0:
        return norm_cdf(-y) - norm_cdf(-x)
    return norm_cdf(x) - norm_cdf(y)


def _gap2(x, y, k, rho):
    """N2(x, k; rho) - N2(y, k; rho), reflected through N2(h, k; rho) = N(k) - N2(-h, k; -rho)."""
    if x + y > 0.0:
        return bvn_cdf(-y, k, -rho) - bvn_cdf(-x, k, -rho)
    return bvn_cdf(x, k, rho) - bvn_cdf(y, k, rho)


def _call_terms_diff(spec, p, g, spot, vanilla):
    s1, s2, rho = p.s1, p.s2, p.rho
    fwd1, fwd2, df1, df2 = _legs(spot, p)
    g1, g2, g3, g4 = g.gamma1, g.gamma2, g.gamma3, g.gamma4
    return (
        vanilla + fwd2 * _gap2(g2, g1, g3, rho),
        -df2 * spec.K2 * _gap2(g2 - s1, g1 - s1, g3 - s2, rho),
        -df1 * spec.A * _gap(g2 - s1, g1 - s1),
        -fwd1 * _gap(g4, g1),
        df1 * spec.K1 * _gap(g4 - s1, g1 - s1),
    )


def _put_terms_rect(spec, p, g, spot, vanilla):
    s1, s2, rho = p.s1, p.s2, p.rho
    fwd1, fwd2, df1, df2 = _legs(spot, p)
    g1, g2, g3, g4 = g.gamma1, g.gamma2, g.gamma3, g.gamma4
    return (
        vanilla - fwd2 * rect_prob(-g2, -g1, NEG_INF, -g3, rho),
        df2 * spec.K2 * rect_prob(s1 - g2, s1 - g1, NEG_INF, s2 - g3, rho),
        -df1 * spec.A * interval_prob(g1 - s1, g2 - s1),
        fwd1 * interval_prob(g4, g2),
        -df1 * spec.K1 * interval_prob(g4 - s1, g2 - s1),
    )


def _put_terms_diff(spec, p, g, spot, vanilla):
    s1, s2, rho = p.s1, p.s2, p.rho
    fwd1, fwd2, df1, df2 = _legs(spot, p)
    g1, g2, g3, g4 = g.gamma1, g.gamma2, g.gamma3, g.gamma4
    return (
        vanilla - fwd2 * _gap2(-g1, -g2, -g3, rho),
        df2 * spec.K2 * _gap2(s1 - g1, s1 - g2, s2 - g3, rho),
        -df1 * spec.A * _gap(g2 - s1, g1 - s1),
        fwd1 * _gap(g2, g4),
        -df1 * spec.K1 * _gap(g2 - s1, g4 - s1),
    )


_TERMS = {
    ("call", "rect"): _call_terms_rect,
    ("call", "diff"): _call_terms_diff,
    ("put", "rect"): _put_terms_rect,
    ("put", "diff"): _put_terms_diff,
}


def _price(spec: ContractSpec, market: MarketData, form: str) -> PriceReport:
    if form not in FORMS:
        raise ContractError(f"form must be one of {FORMS}, got {form!r}")
    params = period_params(market, spec.T1, spec.T2)
    bounds = solve_boundaries(spec, params)
    vanilla = float(bs_t0(spec.kind, market.spot, spec.K1, params).price)
    if bounds.never_extended:
        return PriceReport(
            spec.kind, form, vanilla, vanilla, (vanilla, 0.0, 0.0, 0.0, 0.0), 0.0,
            bounds, params, None,
        )
    g = abcd_gamma(spec, params, bounds, market.spot)
    terms = tuple(float(t) for t in _TERMS[spec.kind, form](spec, params, g, market.spot, vanilla))
    total = sum(terms)
    return PriceReport(
        spec.kind, form, total, vanilla, terms, interval_prob(g.a, g.b), bounds, params, g
    )


def price_call(spec: ContractSpec, market: MarketData, form: str = "rect") -> PriceReport:
    if spec.kind != "call":
        raise ContractError("price_call needs kind='call'")
    return _price(spec, market, form)


def price_put(spec: ContractSpec, market: MarketData, form: str = "rect") -> PriceReport:
    if spec.kind != "put":
        raise ContractError("price_put needs kind='put'")
    return _price(spec, market, form)


def price(spec: ContractSpec, market: MarketData, form: str = "rect") -> PriceReport:
    return _price(spec, market, form)


def price_many(
    specs: Iterable[ContractSpec], market: MarketData, form: str = "rect", workers: int = 1
) -> list[PriceReport]:
    """Price independent contracts, optionally on a thread pool; order is preserved."""
    specs = list(specs)
    if workers <= 1:
        return [_price(s, market, form) for s in specs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda s: _price(s, market, form), specs))


# --- as-published put formulas -------------------------------------------


@dataclass(frozen=True)
class PutVariant:
    """Put formula in the layout of the historical references.

    With the bivariate terms written over ``[gamma1, gamma2]`` the correct
    upper limits are ``-gamma3`` / ``-gamma3 + s2``, the correlation is
    ``-rho`` and the strike leg is discounted over ``[0, T2]``.
    ``gamma3_sign``/``rho_sign`` and ``k2_discount_from_t1`` encode those
    choices so the historical typos are plain substitutions.
    """

    gamma3_sign: int = -1
    rho_sign: int = -1
    k2_discount_from_t1: bool = False


CORRECTED_PUT = PutVariant()


def longstaff_typos(v: PutVariant) -> PutVariant:
    """Flip gamma3, the shifted gamma3, rho, and the strike-leg discount window."""
    return replace(
        v,
        gamma3_sign=-v.gamma3_sign,
        rho_sign=-v.rho_sign,
        k2_discount_from_t1=not v.k2_discount_from_t1,
    )


def haug_typos(v: PutVariant) -> PutVariant:
    """Flip only the correlation sign."""
    return replace(v, rho_sign=-v.rho_sign)


def _constant_setting(spec: ContractSpec, market: MarketData) -> None:
    if not market.is_constant_on(spec.T2):
        raise UnsupportedSettingError(
            "as-published put formulas are only defined for constant rate, carry and volatility"
        )


def price_put_variant(spec: ContractSpec, market: MarketData, variant: PutVariant) -> float:
    """Put price in the reference layout, with the given sign/discount choices."""
    if spec.kind != "put":
        raise ContractError("put variants need kind='put'")
    params = period_params(market, spec.T1, spec.T2)
    bounds = solve_boundaries(spec, params)
    vanilla = float(bs_t0("put", market.spot, spec.K1, params).price)
    if bounds.never_extended:
        return vanilla
    g = abcd_gamma(spec, params, bounds, market.spot)
    s1, s2 = params.s1, params.s2
    rho = variant.rho_sign * params.rho
    fwd1, fwd2, df1, df2 = _legs(market.spot, params)
    k2_df = math.exp(-params.r12 * params.tau) if variant.k2_discount_from_t1 else df2
    g1, g2, g3, g4 = g.gamma1, g.gamma2, g.gamma3, g.gamma4
    sg = variant.gamma3_sign
    terms = (
        vanilla - fwd2 * rect_prob(g1, g2, NEG_INF, sg * g3, rho),
        k2_df * spec.K2 * rect_prob(g1 - s1, g2 - s1, NEG_INF, sg * (g3 - s2), rho),
        -df1 * spec.A * interval_prob(g1 - s1, g2 - s1),
        fwd1 * interval_prob(g4, g2),
        -df1 * spec.K1 * interval_prob(g4 - s1, g2 - s1),
    )
    return sum(terms)


def _gate(reproduce_errata: bool) -> None:
    if not reproduce_errata:
        raise ErrataGateError(
            "as-published formulas are wrong by construction; pass reproduce_errata=True"
        )


def price_put_longstaff1990(
    spec: ContractSpec, market: MarketData, *, reproduce_errata: bool = False
) -> float:
    """Put value with the sign and discount typos of Longstaff (1990)."""
    _gate(reproduce_errata)
    _constant_setting(spec, market)
    return price_put_variant(spec, market, longstaff_typos(CORRECTED_PUT))


def price_put_haug1998(
    spec: ContractSpec, market: MarketData, *, reproduce_errata: bool = False
) -> float:
    """Put value with the correlation-sign typo of Haug (1998)."""
    _gate(reproduce_errata)
    _constant_setting(spec, market)
    return price_put_variant(spec, market, haug_typos(CORRECTED_PUT))
