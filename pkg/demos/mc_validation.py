"""Closed form against the two Monte Carlo estimators.

mc_price samples X_T1 and values the extension with the conditional
Black-Scholes value; mc_price_two_stage simulates through to T2 and pays
the realised payoff.  Both are bit-reproducible for a given seed no matter
how many threads run them (set EXTENDO_THREADS).

    EXTENDO_THREADS=4 python demos/mc_validation.py
"""

import math
import time

from extendo import ContractSpec, MarketData, McConfig, mc_price, mc_price_two_stage, price

market = MarketData.flat(100.0, 0.08, 0.0, 0.25)
cfg = McConfig(paths=1_000_000, seed=7)

t0 = time.perf_counter()
for kind, K2 in (("call", 105.0), ("call", 95.0), ("put", 95.0), ("put", 105.0)):
    spec = ContractSpec(kind, 100.0, K2, 0.5, 1.0, 1.0)
    closed = price(spec, market).price
    one = mc_price(spec, market, cfg)
    two = mc_price_two_stage(spec, market, cfg)
    z1 = (closed - one.mean) / one.std_error
    z2 = (closed - two.mean) / math.hypot(one.std_error, two.std_error)
    print(f"{kind:4} K2={K2:5.1f}  closed {closed:.5f}  mc {one.mean:.5f} (z {z1:+.2f})  two-stage {two.mean:.5f} (z {z2:+.2f})")
print(f"\n{time.perf_counter() - t0:.1f}s")
