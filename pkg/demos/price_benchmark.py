"""Price the 12-contract benchmark grid and show where the value comes from.

S0 = 100, r = 8%, q = 0, sigma = 25%, T1 = 0.5, T2 = 1, K1 = 100.
Columns: the plain European worth at T1, the extendible price, the
extension premium, and the boundaries I1 < I2 that bracket the region in
which the holder pays A to extend.

    python demos/price_benchmark.py
"""

from extendo import ContractSpec, MarketData, price

market = MarketData.flat(100.0, 0.08, 0.0, 0.25)

print(f"{'kind':5} {'K2':>5} {'A':>4} {'vanilla':>9} {'extendible':>11} {'premium':>8} {'I1':>9} {'I2':>9}")
for kind in ("call", "put"):
    for K2 in (95.0, 105.0):
        for A in (0.5, 1.0, 2.0):
            r = price(ContractSpec(kind, 100.0, K2, 0.5, 1.0, A), market)
            b = r.boundaries
            print(
                f"{kind:5} {K2:5.0f} {A:4.1f} {r.vanilla_component:9.4f} {r.price:11.4f} "
                f"{r.price - r.vanilla_component:8.4f} {b.I1:9.3f} {b.I2:9.3f}"
            )

# A fee large enough to make extension pointless collapses to the vanilla.
r = price(ContractSpec("put", 100.0, 95.0, 0.5, 1.0, 50.0), market)
print(f"\nA = 50: never extended = {r.boundaries.never_extended}, price = {r.price:.6f}")
