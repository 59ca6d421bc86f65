"""Why the historical put formulas are wrong, by Monte Carlo.

The corrected put is compared with two reconstructions of formulas that
were in circulation: Longstaff (1990) and Haug (1998).  An exact-sampling
Monte Carlo estimate arbitrates.  The historical versions are gated behind
``reproduce_errata=True`` so they can't be called by accident.

    python demos/errata.py [paths]
"""

import sys

from extendo import (
    ContractSpec,
    MarketData,
    McConfig,
    mc_price,
    price,
    price_put_haug1998,
    price_put_longstaff1990,
)

paths = int(float(sys.argv[1])) if len(sys.argv) > 1 else 2_000_000
market = MarketData.flat(100.0, 0.08, 0.0, 0.25)
spec = ContractSpec("put", 100.0, 95.0, 0.5, 1.0, 1.0)

mc = mc_price(spec, market, McConfig(paths=paths, seed=20100928))
print(f"Monte Carlo ({paths} paths): {mc.mean:.6f} +/- {mc.std_error:.6f}\n")

rows = [
    ("corrected", price(spec, market).price),
    ("Longstaff 1990", price_put_longstaff1990(spec, market, reproduce_errata=True)),
    ("Haug 1998", price_put_haug1998(spec, market, reproduce_errata=True)),
]
for name, value in rows:
    z = (value - mc.mean) / mc.std_error
    print(f"{name:15} {value:10.6f}   {z:+10.1f} standard errors")

# The Haug version only has the sign of rho flipped; its error fades as the
# two periods decorrelate (rho = sqrt(T1 / T2) -> 0).
print("\nHaug gap as T2 grows (rho -> 0):")
for T2 in (1.0, 2.0, 8.0, 32.0):
    s = ContractSpec("put", 100.0, 95.0, 0.5, T2, 1.0)
    m = MarketData.flat(100.0, 0.05, 0.0, 0.20, horizon=50.0)
    gap = price_put_haug1998(s, m, reproduce_errata=True) - price(s, m).price
    print(f"  T2 = {T2:5.1f}   gap = {gap:+.3e}")
