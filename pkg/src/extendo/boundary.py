"""Critical spot levels at the decision date.

At T1 the holder compares three values: exercise (intrinsic on K1), extend
(the T2 option on K2 less the fee A) and abandon.  Extension is optimal
exactly on an interval ``(I1, I2)``; the end points solve

    call:  C(I1) = A                  C(I2) = I2 - K1 + A
    put:   P(I1) = K1 - I1 + A        P(I2) = A

where ``C``/``P`` are the T1 values of the options on (K2, T2).

A zero lower boundary is reported as ``0.0`` and an unbounded upper one as
``math.inf``; downstream formulas then see ``-inf``/``+inf`` arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from scipy.special import ndtr

from .errors import ContractError, SolverError
from .termstructure import PeriodParams
from .vanilla import bs_t1, bs_t1_delta

__all__ = [
    "ContractSpec",
    "DecisionBoundaries",
    "solve_call_boundaries",
    "solve_put_boundaries",
    "solve_boundaries",
    "call_residuals",
    "put_residuals",
    "safeguarded_newton",
    "find_bracket",
]

MAX_ITER = 200
X_TOL = 1e-12
EXPANSION_STEPS = 60


@dataclass(frozen=True)
class ContractSpec:
    """Holder-extendible option: exercise at T1 on K1, or pay A to extend to T2 on K2."""

    kind: str
    K1: float
    K2: float
    T1: float
    T2: float
    A: float

    def __post_init__(self) -> None:
        if self.kind not in ("call", "put"):
            raise ContractError(f"kind must be 'call' or 'put', got {self.kind!r}")
        for name in ("K1", "K2", "T1", "T2", "A"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ContractError(f"{name} must be a finite number, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.K1 <= 0.0 or self.K2 <= 0.0:
            raise ContractError("strikes must be > 0")
        if not (0.0 < self.T1 < self.T2):
            raise ContractError(f"need 0 < T1 < T2, got T1={self.T1!r}, T2={self.T2!r}")
        if self.A < 0.0:
            raise ContractError(f"extension fee must be >= 0, got {self.A!r}")


@dataclass(frozen=True)
class DecisionBoundaries:
    """Solved critical values.

    ``I1``/``I2`` are ``None`` when the corresponding equation is not needed
    (the option is never extended) or has no solution.
    """

    kind: str
    I1: Optional[float]
    I2: Optional[float]
    never_extended: bool
    residual1: Optional[float]
    residual2: Optional[float]

    @property
    def zero_lower(self) -> bool:
        return self.I1 == 0.0

    @property
    def infinite_upper(self) -> bool:
        return self.I2 == math.inf


def residual_tolerance(K2: float) -> float:
    return 1e-10 * max(1.0, K2)


def find_bracket(
    f: Callable[[float], float], anchor: float, direction: int = 0
) -> Optional[tuple[float, float]]:
    """Geometric search for a sign change of ``f`` starting at ``anchor``.

    ``direction`` +1 searches upwards only, -1 downwards only, 0 picks the
    direction from ``f(anchor)`` assuming ``f`` is increasing.  Returns
    ``None`` if no sign change appears within a factor ``2**60`` of the anchor.
    """
    f0 = f(anchor)
    if f0 == 0.0:
        return anchor, anchor
    if direction == 0:
        direction = -1 if f0 > 0.0 else 1
    s0 = math.copysign(1.0, f0)
    prev = anchor
    for k in range(1, EXPANSION_STEPS + 1):
        x = anchor * 2.0**k if direction > 0 else anchor / 2.0**k
        fx = f(x)
        if fx == 0.0 or math.copysign(1.0, fx) != s0:
            return (prev, x) if x > prev else (x, prev)
        prev = x
    return None


def safeguarded_newton(
    f: Callable[[float], float],
    fprime: Callable[[float], float],
    lo: float,
    hi: float,
    ftol: float,
    xtol: float = X_TOL,
    max_iter: int = MAX_ITER,
) -> float:
    """Newton iteration kept inside a sign-change bracket ``[lo, hi]``.

    A step leaving the bracket (or a vanishing derivative) is replaced by
    bisection.  Converges when the residual is within ``ftol`` and the
    bracket has shrunk to ``xtol`` relative width.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise SolverError("no sign change in initial bracket", (lo, hi))
    rising = fhi > 0.0
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == rising:
            hi = x
        else:
            lo = x
        if abs(fx) <= ftol:
            # pin the bracket around x to certify the root location
            h = 0.5 * xtol * x
            x_lo, x_hi = max(lo, x - h), min(hi, x + h)
            f_lo, f_hi = f(x_lo), f(x_hi)
            below = f_lo == 0.0 or (f_lo > 0.0) != rising
            above = f_hi == 0.0 or (f_hi > 0.0) == rising
            if below and above:
                return x
            if below:
                lo = x_hi
            else:
                hi = x_lo
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol * mid and abs(fx) <= ftol:
            return x
        d = fprime(x)
        step_ok = d != 0.0 and math.isfinite(d)
        if step_ok:
            x_new = x - fx / d
            step_ok = lo < x_new < hi
        x = x_new if step_ok else mid
    raise SolverError(f"no convergence after {max_iter} iterations", (lo, hi))


def call_residuals(spec: ContractSpec, params: PeriodParams):
    """Residual functions whose zeros are the call boundaries."""

    def f1(x):
        return bs_t1("call", x, spec.K2, params).price - spec.A

    growth = math.exp((params.mu12 - params.r12) * params.tau)
    discount = math.exp(-params.r12 * params.tau)

    def f2(x):
        # C(x) - x written without the x - x cancellation for large x
        q = bs_t1("call", x, spec.K2, params)
        return float(
            x * (growth - 1.0)
            - x * growth * ndtr(-q.d1)
            - spec.K2 * discount * ndtr(q.d2)
            + spec.K1
            - spec.A
        )

    return f1, f2


def put_residuals(spec: ContractSpec, params: PeriodParams):
    """Residual functions whose zeros are the put boundaries."""

    def f1(x):
        return bs_t1("put", x, spec.K2, params).price - (spec.K1 - x + spec.A)

    def f2(x):
        return bs_t1("put", x, spec.K2, params).price - spec.A

    return f1, f2


def solve_call_boundaries(spec: ContractSpec, params: PeriodParams) -> DecisionBoundaries:
    if spec.kind != "call":
        raise ContractError("solve_call_boundaries needs a call")
    K1, K2, A = spec.K1, spec.K2, spec.A
    tol = residual_tolerance(K2)
    f1, f2 = call_residuals(spec, params)

    def df1(x):
        return bs_t1_delta("call", x, K2, params)

    def df2(x):
        return bs_t1_delta("call", x, K2, params) - 1.0

    # C(x) increases from 0, so A = 0 or A below the deepest probe means I1 = 0
    if A == 0.0:
        I1 = 0.0
    else:
        br = find_bracket(f1, K2)
        if br is None:
            I1 = 0.0 if f1(K2) > 0.0 else math.inf
        else:
            I1 = safeguarded_newton(f1, df1, br[0], br[1], tol)
    res1 = abs(f1(I1)) if 0.0 < I1 < math.inf else 0.0

    if I1 >= K1:
        return DecisionBoundaries("call", I1, None, True, res1, None)

    # f2(K1) = C(K1) - A > 0 here; exercise overtakes extension somewhere above
    start = max(K1, K2)
    if f2(start) < 0.0:
        br = (K1, start)
    else:
        br = find_bracket(f2, start, direction=1)
    if br is None:
        I2, res2 = math.inf, 0.0
    else:
        I2 = safeguarded_newton(f2, df2, br[0], br[1], tol)
        res2 = abs(f2(I2))
    return DecisionBoundaries("call", I1, I2, False, res1, res2)


def solve_put_boundaries(spec: ContractSpec, params: PeriodParams) -> DecisionBoundaries:
    if spec.kind != "put":
        raise ContractError("solve_put_boundaries needs a put")
    K1, K2, A = spec.K1, spec.K2, spec.A
    tol = residual_tolerance(K2)
    f1, f2 = put_residuals(spec, params)
    put_at_zero = K2 * math.exp(-params.r12 * params.tau)

    def df1(x):
        return bs_t1_delta("put", x, K2, params) + 1.0

    def df2(x):
        return bs_t1_delta("put", x, K2, params)

    # P(x) decreases from K2 exp(-r12 tau) towards 0
    if A == 0.0:
        I2, res2 = math.inf, 0.0
    elif A >= put_at_zero:
        return DecisionBoundaries("put", None, None, True, None, None)
    else:
        # f2 is decreasing; search on -f2 so find_bracket sees an increasing function
        br = find_bracket(lambda x: -f2(x), K2)
        if br is None:
            if f2(K2) > 0.0:
                I2, res2 = math.inf, 0.0
            else:
                return DecisionBoundaries("put", None, None, True, None, None)
        else:
            I2 = safeguarded_newton(f2, df2, br[0], br[1], tol)
            res2 = abs(f2(I2))

    if I2 <= K1:
        return DecisionBoundaries("put", None, I2, True, None, res2)

    # f1(0+) = K2 exp(-r12 tau) - K1 - A; f1(K1) = P(K1) - A > 0 here
    if put_at_zero - K1 - A >= 0.0:
        I1, res1 = 0.0, 0.0
    else:
        anchor = min(K1, K2)
        if f1(anchor) < 0.0:
            br = (anchor, K1)
        else:
            br = find_bracket(f1, anchor, direction=-1)
        if br is None:
            I1, res1 = 0.0, 0.0
        else:
            I1 = safeguarded_newton(f1, df1, br[0], br[1], tol)
            res1 = abs(f1(I1))
    return DecisionBoundaries("put", I1, I2, False, res1, res2)


def solve_boundaries(spec: ContractSpec, params: PeriodParams) -> DecisionBoundaries:
    if spec.kind == "call":
        return solve_call_boundaries(spec, params)
    return solve_put_boundaries(spec, params)
