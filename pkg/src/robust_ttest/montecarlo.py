"""Monte Carlo engine for the distribution of the test statistics.

Replications are grouped into fixed-size blocks.  Block ``b`` draws its data
from the substream path ``(b, 0)``; rows whose scale estimate is zero are
redrawn from ``(b, 1)``, ``(b, 2)``, ... .  Block size depends only on n, so
the merged, sorted output is the same for any number of workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SimulationIntegrityError
from .normal_dist import std_normal_cdf_array
from .sampling import DataModel, RngSpec, StdNormal, draw_block
from .statistics import StatisticKind, batch_statistic

__all__ = [
    "SimulationConfig",
    "EmpiricalDistribution",
    "MAX_REDRAW_FRACTION",
    "block_rows",
    "simulate_statistic",
    "empirical_quantile",
    "ks_distance_to_std_normal",
    "estimate_rejection_rate",
]

MAX_REDRAW_FRACTION = 1e-3
_MAX_ATTEMPTS = 64
_BLOCK_VARIATES = 1_000_000
_MAX_BLOCK_ROWS = 1000


@dataclass(frozen=True)
class SimulationConfig:
    n: int
    reps: int
    rng: RngSpec
    statistic_kind: StatisticKind = StatisticKind.PIVOT
    data_model: DataModel = field(default_factory=StdNormal)
    mu0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "statistic_kind", StatisticKind(self.statistic_kind))
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        if int(self.reps) != self.reps or self.reps < 1:
            raise DomainError(f"reps must be a positive integer, got {self.reps!r}")


@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    sorted_values: np.ndarray
    config: SimulationConfig
    redraws: int = 0

    @property
    def reps(self) -> int:
        return len(self.sorted_values)

    def mean(self) -> float:
        return float(np.mean(self.sorted_values))

    def variance(self) -> float:
        return float(np.var(self.sorted_values, ddof=1))


def block_rows(n: int) -> int:
    """Replications per block for sample size ``n``."""
    return max(1, min(_MAX_BLOCK_ROWS, _BLOCK_VARIATES // n))


def _run_block(config: SimulationConfig, block: int, rows: int) -> tuple[np.ndarray, int]:
    x = draw_block(config.rng, (rows, config.n), config.data_model, path=(block, 0))
    vals, ok = batch_statistic(config.statistic_kind, x, config.mu0)
    redraws = 0
    attempt = 0
    while not ok.all():
        attempt += 1
        if attempt > _MAX_ATTEMPTS:
            raise SimulationIntegrityError(
                f"block {block}: degenerate samples persist after {_MAX_ATTEMPTS} redraws")
        bad = np.flatnonzero(~ok)
        redraws += bad.size
        x = draw_block(config.rng, (bad.size, config.n), config.data_model,
                       path=(block, attempt))
        new_vals, new_ok = batch_statistic(config.statistic_kind, x, config.mu0)
        vals[bad] = new_vals
        ok[bad] = new_ok
    return vals, redraws


def simulate_statistic(config: SimulationConfig, workers: int = 1) -> EmpiricalDistribution:
    """Simulate ``config.reps`` replications of the configured statistic.

    Raises
    ------
    SimulationIntegrityError
        If more than 0.1% of the replications had a zero scale estimate.
    """
    rows = block_rows(config.n)
    n_blocks = math.ceil(config.reps / rows)
    sizes = [min(rows, config.reps - b * rows) for b in range(n_blocks)]

    def job(b):
        return _run_block(config, b, sizes[b])

    if workers > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(n_blocks)))
    else:
        parts = [job(b) for b in range(n_blocks)]

    redraws = sum(r for _, r in parts)
    if redraws > MAX_REDRAW_FRACTION * config.reps:
        raise SimulationIntegrityError(
            f"{redraws} of {config.reps} replications were degenerate "
            f"(limit {MAX_REDRAW_FRACTION:.1%})")
    values = np.sort(np.concatenate([v for v, _ in parts]))
    return EmpiricalDistribution(values, config, redraws)


def _sorted_array(dist) -> np.ndarray:
    if isinstance(dist, EmpiricalDistribution):
        return dist.sorted_values
    return np.sort(np.asarray(dist, dtype=float))


def empirical_quantile(dist, p: float) -> float:
    """Quantile by linear interpolation between order statistics.

    With ``h = (reps - 1) * p`` the result interpolates between the
    ``floor(h)``-th and the next sorted value (0-indexed).
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"probability must lie in (0, 1), got {p!r}")
    values = _sorted_array(dist)
    if values.size < 2:
        raise DomainError("need at least two replications for a quantile")
    h = (values.size - 1) * p
    lo = math.floor(h)
    frac = h - lo
    if lo + 1 >= values.size:
        return float(values[-1])
    return float(values[lo] + frac * (values[lo + 1] - values[lo]))


def ks_distance_to_std_normal(dist) -> float:
    """Kolmogorov-Smirnov distance between the empirical CDF and Phi."""
    values = _sorted_array(dist)
    m = values.size
    if m == 0:
        raise DomainError("KS distance of an empty distribution")
    cdf = std_normal_cdf_array(values)
    i = np.arange(1, m + 1)
    upper = np.abs(i / m - cdf)
    lower = np.abs((i - 1) / m - cdf)
    return float(max(upper.max(), lower.max()))


def estimate_rejection_rate(config: SimulationConfig, critical: float,
                            two_sided: bool = True, workers: int = 1) -> float:
    """Fraction of simulated statistics beyond ``critical``."""
    if not critical >= 0:
        raise DomainError(f"critical value must be nonnegative, got {critical!r}")
    values = simulate_statistic(config, workers=workers).sorted_values
    hits = np.abs(values) > critical if two_sided else values > critical
    return float(np.mean(hits))
