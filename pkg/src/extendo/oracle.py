"""Exact-sampling Monte Carlo prices of holder-extendible options.

Used as the independent reference for the closed forms.  ``ln X_T1`` and
``ln X_T2`` are jointly Gaussian, so both dates are sampled exactly with no
time stepping.

Reproducibility: the draws are split into fixed-size blocks, each with its
own counter-based Philox stream keyed by ``(seed, stream, block)``.  Blocks
are reduced to partial statistics that are merged in block order, so the
estimate is bit-identical for any number of worker threads.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import ndtr, ndtri

from .boundary import ContractSpec
from .errors import InputError
from .termstructure import MarketData, PeriodParams, period_params
from .vanilla import bs_t1

__all__ = [
    "McConfig",
    "McEstimate",
    "sample_terminal_pair",
    "mc_price",
    "mc_price_two_stage",
    "resolve_threads",
    "standard_normals",
]

BLOCK = 1 << 16
THREADS_ENV = "EXTENDO_THREADS"

_STREAM_T1 = 1
_STREAM_TWO_STAGE = 2


@dataclass(frozen=True)
class McConfig:
    paths: int = 1_000_000
    seed: int = 0
    antithetic: bool = True
    threads: Optional[int] = None

    def __post_init__(self) -> None:
        if not isinstance(self.paths, int) or self.paths < 2:
            raise InputError(f"paths must be an integer >= 2, got {self.paths!r}")
        if self.antithetic and self.paths % 2:
            raise InputError("paths must be even with antithetic sampling")
        if not (0 <= int(self.seed) < 2**64):
            raise InputError("seed must fit in 64 unsigned bits")
        if self.threads is not None and self.threads < 0:
            raise InputError("threads must be >= 0")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    paths_used: int


def resolve_threads(threads: Optional[int] = None) -> int:
    """Worker count: explicit value, else ``EXTENDO_THREADS``, 0 meaning all cores."""
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
        try:
            threads = int(raw)
        except ValueError:
            raise InputError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
        if threads < 0:
            raise InputError(f"{THREADS_ENV} must be >= 0")
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads


def standard_normals(seed: int, stream: int, block: int, shape) -> np.ndarray:
    """Inverse-CDF normals from the Philox stream of one block."""
    key = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, stream, block])
    gen = np.random.Generator(np.random.Philox(key))
    u = gen.random(shape)
    # shift the 2**-53 lattice off zero so ndtri never sees 0
    u += 2.0**-54
    return ndtri(u)


def sample_terminal_pair(params: PeriodParams, z1, z2, spot: float):
    """Map independent normals to ``(X_T1, X_T2)``.

    Reproduces the exact Gaussian law of the log prices: means
    ``ln X0 + (mu_i - sigma_i^2 / 2) T_i`` and covariance ``s1^2``.
    """
    s1, s2, rho = params.s1, params.s2, params.rho
    z1 = np.asarray(z1, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    log_x0 = math.log(spot)
    x1 = np.exp(log_x0 + (params.mu1 - 0.5 * params.sigma1**2) * params.T1 + s1 * z1)
    x2 = np.exp(
        log_x0
        + (params.mu2 - 0.5 * params.sigma2**2) * params.T2
        + s2 * (rho * z1 + math.sqrt(1.0 - rho * rho) * z2)
    )
    return x1, x2


def _intrinsic(kind: str, x, strike: float):
    return np.maximum(x - strike, 0.0) if kind == "call" else np.maximum(strike - x, 0.0)


def _continuation(kind: str, x, strike: float, params: PeriodParams):
    """Conditional T1 value of the (K2, T2) option, from the raw increment law.

    Deliberately written from the log-increment mean/variance rather than via
    the forward-period averages used by the closed forms.
    """
    var = params.s2**2 - params.s1**2
    sd = math.sqrt(var)
    drift = params.mu2 * params.T2 - params.mu1 * params.T1 - 0.5 * var
    disc = math.exp(-(params.r2 * params.T2 - params.r1 * params.T1))
    fwd = x * math.exp(drift + 0.5 * var)
    d1 = (np.log(fwd / strike) + 0.5 * var) / sd
    d2 = d1 - sd
    if kind == "call":
        return disc * (fwd * ndtr(d1) - strike * ndtr(d2))
    return disc * (strike * ndtr(-d2) - fwd * ndtr(-d1))


def _merge(stats):
    """Combine per-block (count, mean, M2) triples in the given order."""
    n, mean, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in stats:
        if nb == 0:
            continue
        tot = n + nb
        delta = mb - mean
        mean += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
    return n, mean, m2


def _run(sample_block: Callable[[int, int], np.ndarray], n_base: int, threads: int):
    blocks = [(b, min(BLOCK, n_base - b * BLOCK)) for b in range((n_base + BLOCK - 1) // BLOCK)]

    def work(item):
        b, size = item
        v = sample_block(b, size)
        m = float(np.mean(v))
        return v.size, m, float(np.sum((v - m) ** 2))

    if threads <= 1 or len(blocks) == 1:
        stats = [work(it) for it in blocks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            stats = list(pool.map(work, blocks))
    return _merge(stats)


def _estimate(n, mean, m2, paths) -> McEstimate:
    se = math.sqrt(m2 / (n - 1) / n) if n > 1 else math.inf
    return McEstimate(mean, se, paths)


def mc_price(spec: ContractSpec, market: MarketData, cfg: McConfig) -> McEstimate:
    """Sample X_T1 only; the extension value comes from the closed-form T1 option value."""
    params = period_params(market, spec.T1, spec.T2)
    df1 = math.exp(-params.r1 * params.T1)
    drift = math.log(market.spot) + (params.mu1 - 0.5 * params.sigma1**2) * params.T1
    s1 = params.s1
    n_base = cfg.paths // 2 if cfg.antithetic else cfg.paths

    def value(z):
        x1 = np.exp(drift + s1 * z)
        extend = bs_t1(spec.kind, x1, spec.K2, params).price - spec.A
        return df1 * np.maximum(_intrinsic(spec.kind, x1, spec.K1), extend)

    def block(b, size):
        z = standard_normals(cfg.seed, _STREAM_T1, b, size)
        if cfg.antithetic:
            return 0.5 * (value(z) + value(-z))
        return value(z)

    return _estimate(*_run(block, n_base, resolve_threads(cfg.threads)), cfg.paths)


def mc_price_two_stage(spec: ContractSpec, market: MarketData, cfg: McConfig) -> McEstimate:
    """Sample both dates and realise the T2 cash flow whenever the holder extends.

    The extend/exercise decision compares the raw payoffs at T1; the value of
    extending is never taken from a closed form, only the decision is.
    """
    params = period_params(market, spec.T1, spec.T2)
    df1 = math.exp(-params.r1 * params.T1)
    df2 = math.exp(-params.r2 * params.T2)
    n_base = cfg.paths // 2 if cfg.antithetic else cfg.paths

    def value(z1, z2):
        x1, x2 = sample_terminal_pair(params, z1, z2, market.spot)
        exercise = _intrinsic(spec.kind, x1, spec.K1)
        extend = _continuation(spec.kind, x1, spec.K2, params) - spec.A
        extended = extend > exercise
        realised_ext = df2 * _intrinsic(spec.kind, x2, spec.K2) - df1 * spec.A
        return np.where(extended, realised_ext, df1 * exercise)

    def block(b, size):
        z = standard_normals(cfg.seed, _STREAM_TWO_STAGE, b, (2, size))
        if cfg.antithetic:
            return 0.5 * (value(z[0], z[1]) + value(-z[0], -z[1]))
        return value(z[0], z[1])

    return _estimate(*_run(block, n_base, resolve_threads(cfg.threads)), cfg.paths)
