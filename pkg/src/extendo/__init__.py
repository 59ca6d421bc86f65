"""Holder-extendible European options under GBM with time-dependent parameters."""

__version__ = "0.1.0"

from .boundary import ContractSpec, DecisionBoundaries, solve_boundaries
from .extendible import (
    PriceReport,
    price,
    price_call,
    price_put,
    price_put_haug1998,
    price_put_longstaff1990,
)
from .oracle import McConfig, McEstimate, mc_price, mc_price_two_stage
from .termstructure import MarketData, PeriodParams, TermStructure, period_params

__all__ = [
    "ContractSpec",
    "DecisionBoundaries",
    "MarketData",
    "McConfig",
    "McEstimate",
    "PeriodParams",
    "PriceReport",
    "TermStructure",
    "mc_price",
    "mc_price_two_stage",
    "period_params",
    "price",
    "price_call",
    "price_put",
    "price_put_haug1998",
    "price_put_longstaff1990",
    "solve_boundaries",
]
