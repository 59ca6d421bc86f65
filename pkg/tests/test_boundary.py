import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from extendo.boundary import (
    ContractSpec,
    call_residuals,
    put_residuals,
    safeguarded_newton,
    solve_boundaries,
    solve_call_boundaries,
    solve_put_boundaries,
)
from extendo.errors import ContractError, SolverError
from extendo.termstructure import MarketData, period_params
from extendo.vanilla import bs_t1
from oracles import bisect, textbook_bs

FLAT = MarketData.flat(100.0, 0.08, 0.0, 0.25)
PARAMS = period_params(FLAT, 0.5, 1.0)

# pure-bisection values on the textbook formula, run to 1e-15 relative width
CALL_I1, CALL_I2 = 82.33891626973714, 118.60533292387275
PUT_I1, PUT_I2 = 96.7662644060015, 112.88358038452566


def test_contract_validation():
    with pytest.raises(ContractError):
        ContractSpec("call", 100, 100, 1.0, 0.5, 1)
    with pytest.raises(ContractError):
        ContractSpec("call", 100, 100, 0.5, 1.0, -1)
    with pytest.raises(ContractError):
        ContractSpec("swap", 100, 100, 0.5, 1.0, 1)
    with pytest.raises(ContractError):
        ContractSpec("put", 0, 100, 0.5, 1.0, 1)


def test_call_benchmark():
    b = solve_call_boundaries(ContractSpec("call", 100, 105, 0.5, 1, 1), PARAMS)
    assert not b.never_extended
    assert b.I1 == pytest.approx(CALL_I1, rel=1e-11)
    assert b.I2 == pytest.approx(CALL_I2, rel=1e-11)
    assert b.residual1 < 1e-10 and b.residual2 < 1e-10


def test_put_benchmark():
    b = solve_put_boundaries(ContractSpec("put", 100, 95, 0.5, 1, 1), PARAMS)
    assert not b.never_extended
    assert b.I1 == pytest.approx(PUT_I1, rel=1e-11)
    assert b.I2 == pytest.approx(PUT_I2, rel=1e-11)
    assert b.residual1 < 1e-10 and b.residual2 < 1e-10


def test_call_zero_fee_gives_zero_boundary():
    b = solve_call_boundaries(ContractSpec("call", 100, 105, 0.5, 1, 0.0), PARAMS)
    assert b.I1 == 0.0 and b.zero_lower


def test_call_large_fee_never_extended():
    upper = bs_t1("call", 100.0, 105.0, PARAMS).price
    b = solve_call_boundaries(ContractSpec("call", 100, 105, 0.5, 1, upper + 1.0), PARAMS)
    assert b.never_extended and b.I1 >= 100.0


def test_call_no_finite_upper_boundary_without_carry():
    # K1 - A - K2 exp(-r tau) > 0: extension beats exercise for all large spots
    b = solve_call_boundaries(ContractSpec("call", 100, 95, 0.5, 1, 1.0), PARAMS)
    assert b.I2 == math.inf and b.infinite_upper


def test_put_fee_above_bound_never_extended():
    bound = 95.0 * math.exp(-0.08 * 0.5)
    b = solve_put_boundaries(ContractSpec("put", 100, 95, 0.5, 1, bound), PARAMS)
    assert b.never_extended and b.I1 is None and b.I2 is None


def test_put_zero_lower_boundary():
    # K2 exp(-r tau) >= K1 + A
    b = solve_put_boundaries(ContractSpec("put", 100, 110, 0.5, 1, 1.0), PARAMS)
    assert 110 * math.exp(-0.04) >= 101.0
    assert b.I1 == 0.0


def test_put_zero_fee_infinite_upper():
    b = solve_put_boundaries(ContractSpec("put", 100, 95, 0.5, 1, 0.0), PARAMS)
    assert b.I2 == math.inf


def test_put_never_extended_when_I2_below_K1():
    b = solve_put_boundaries(ContractSpec("put", 100, 95, 0.5, 1, 5.0), PARAMS)
    assert b.never_extended and b.I2 <= 100.0


def test_kind_mismatch():
    with pytest.raises(ContractError):
        solve_call_boundaries(ContractSpec("put", 100, 95, 0.5, 1, 1), PARAMS)


def test_solver_failure_carries_bracket():
    with pytest.raises(SolverError) as info:
        safeguarded_newton(lambda x: x * x + 1, lambda x: 2 * x, -1.0, 2.0, 1e-12)
    assert info.value.bracket == (-1.0, 2.0)


@pytest.mark.parametrize("kind, K2", [("call", 105), ("call", 95), ("put", 95), ("put", 105)])
def test_monotone_in_fee(kind, K2):
    fees = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0]
    bounds = [solve_boundaries(ContractSpec(kind, 100, K2, 0.5, 1, a), PARAMS) for a in fees]
    if kind == "call":
        I1s = [b.I1 for b in bounds]
        assert I1s == sorted(I1s)
    else:
        I2s = [b.I2 for b in bounds]
        assert I2s == sorted(I2s, reverse=True)


def _payoff_branches(kind, x, spec, params):
    cont = bs_t1(kind, x, spec.K2, params).price - spec.A
    ex = max(x - spec.K1, 0.0) if kind == "call" else max(spec.K1 - x, 0.0)
    return cont, ex


@pytest.mark.parametrize("kind, K2, A", [("call", 105, 1), ("call", 105, 2), ("put", 95, 1), ("put", 105, 2)])
def test_region_consistency(kind, K2, A):
    spec = ContractSpec(kind, 100, K2, 0.5, 1, A)
    b = solve_boundaries(spec, PARAMS)
    eps = 1e-6 * spec.K1
    for edge in (b.I1, b.I2):
        if edge in (0.0, math.inf):
            continue
        cont, ex = _payoff_branches(kind, edge + eps if edge == b.I1 else edge - eps, spec, PARAMS)
        assert cont > max(ex, 0.0)
        cont, ex = _payoff_branches(kind, edge - eps if edge == b.I1 else edge + eps, spec, PARAMS)
        assert cont < max(ex, 0.0)


def _bisection_oracle(spec, params):
    tau = params.tau

    def val(x):
        carry = params.r12 - params.mu12
        return textbook_bs(spec.kind, x, spec.K2, params.r12, carry, params.sigma12, tau)

    if spec.kind == "call":
        I1 = bisect(lambda x: val(x) - spec.A, 1e-8, 1e6)
        I2 = bisect(lambda x: val(x) - (x - spec.K1 + spec.A), spec.K1, 1e6) if I1 < spec.K1 else None
    else:
        I2 = bisect(lambda x: val(x) - spec.A, 1e-8, 1e6)
        I1 = bisect(lambda x: val(x) - (spec.K1 - x + spec.A), 1e-8, spec.K1) if I2 > spec.K1 else None
    return I1, I2


def random_boundary_cases(n, seed):
    """Parameter sets whose boundaries are all finite and interior."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        kind = rng.choice(["call", "put"])
        K1 = math.exp(rng.uniform(math.log(60), math.log(160)))
        K2 = K1 * rng.uniform(0.85, 1.15)
        T1 = rng.uniform(0.1, 2.0)
        T2 = T1 + rng.uniform(0.1, 2.0)
        m = MarketData.flat(100.0, rng.uniform(0.0, 0.1), rng.uniform(0.0, 0.08), rng.uniform(0.1, 0.5))
        spec = ContractSpec(kind, K1, K2, T1, T2, rng.uniform(0.2, 4.0))
        p = period_params(m, T1, T2)
        b = solve_boundaries(spec, p)
        if b.never_extended or b.I1 in (0.0, math.inf) or b.I2 in (0.0, math.inf):
            continue
        out.append((spec, p, b))
    return out


def test_hybrid_matches_bisection_oracle():
    for spec, p, b in random_boundary_cases(50, seed=11):
        I1, I2 = _bisection_oracle(spec, p)
        assert b.I1 == pytest.approx(I1, rel=1e-8)
        assert b.I2 == pytest.approx(I2, rel=1e-8)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(["call", "put"]),
    st.floats(50, 200),
    st.floats(50, 200),
    st.floats(0.1, 2.0),
    st.floats(0.1, 2.0),
    st.floats(0.05, 0.6),
    st.floats(-0.02, 0.1),
    st.floats(-0.02, 0.1),
    st.floats(0.0, 5.0),
)
def test_residuals_within_tolerance(kind, K1, K2, T1, dT, vol, r, q, A):
    spec = ContractSpec(kind, K1, K2, T1, T1 + dT, A)
    p = period_params(MarketData.flat(100.0, r, q, vol), T1, T1 + dT)
    b = solve_boundaries(spec, p)
    f1, f2 = (call_residuals if kind == "call" else put_residuals)(spec, p)
    tol = 1e-10 * max(1.0, K2)
    for level, f in ((b.I1, f1), (b.I2, f2)):
        if level is not None and 0.0 < level < math.inf:
            assert abs(f(level)) <= tol
    if b.I1 is not None and b.I2 is not None and not b.never_extended:
        assert b.I1 < b.I2
