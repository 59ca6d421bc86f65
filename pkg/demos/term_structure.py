"""Piecewise-constant rate, carry and volatility curves.

Only period averages of r, r - q and sigma^2 over [0, T1], [0, T2] and
[T1, T2] enter the price, so two curves with the same integrals give the
same price even if they look nothing alike.

    python demos/term_structure.py
"""

import math
from pathlib import Path

from extendo import ContractSpec, MarketData, TermStructure, period_params, price
from extendo.serialize import load_market

spec = ContractSpec("call", 100.0, 105.0, 0.5, 1.0, 1.0)
flat = MarketData.flat(100.0, 0.08, 0.0, 0.25)

# 10% then 6% on [0, 0.5] integrates to the same as 8% flat, likewise 9% / 6.5% after.
stepped = MarketData(
    100.0,
    TermStructure((0.25, 0.5, 0.8, 1.0), (0.10, 0.06, 0.09, 0.065)),
    TermStructure.flat(0.0, 1.0),
    TermStructure((0.3, 0.5, 1.0), (0.2, math.sqrt((0.0625 * 0.5 - 0.04 * 0.3) / 0.2), 0.25), positive=True),
)
print(f"flat curves    {price(spec, flat).price:.15f}")
print(f"stepped curves {price(spec, stepped).price:.15f}")

# Curves can also come from files; the vol curve here is a CSV next to the JSON.
market = load_market(Path(__file__).parent / "data" / "curve_market.json")
p = period_params(market, spec.T1, spec.T2)
print("\nfrom demos/data/curve_market.json:")
print(f"  r1 = {p.r1:.4f}  r2 = {p.r2:.4f}  r12 = {p.r12:.4f}")
print(f"  sigma1 = {p.sigma1:.4f}  sigma2 = {p.sigma2:.4f}  sigma12 = {p.sigma12:.4f}  rho = {p.rho:.4f}")
for kind in ("call", "put"):
    r = price(ContractSpec(kind, 100.0, 100.0, 0.5, 1.0, 1.0), market)
    print(f"  {kind}: {r.price:.6f} (vanilla {r.vanilla_component:.6f})")
