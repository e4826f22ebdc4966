"""Simulation studies behind the ``verify-*`` and ``robustness-study`` commands.

Each function returns a JSON-ready dict whose content depends only on its
arguments (never on ``workers``).
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .montecarlo import (
    SimulationConfig,
    estimate_rejection_rate,
    ks_distance_to_std_normal,
    simulate_statistic,
)
from .normal_dist import std_normal_quantile
from .sampling import Contaminated, ContaminationModel, LocationScale, RngSpec
from .statistics import StatisticKind
from .student_t import t_quantile

__all__ = [
    "DEFAULT_PIVOT_PARAMS",
    "PIVOT_TOLERANCE",
    "verify_pivot",
    "verify_normality",
    "normality_checks",
    "robustness_study",
]

DEFAULT_PIVOT_PARAMS = ((0.0, 1.0), (7.0, 3.0), (-2.0, 0.5))
PIVOT_TOLERANCE = 1e-10
KS_SLACK = 0.10
KS_FINAL_LIMIT = 0.02


def verify_pivot(ns: Iterable[int], reps: int, seed: int,
                 params: Sequence[tuple[float, float]] = DEFAULT_PIVOT_PARAMS,
                 tol: float = PIVOT_TOLERANCE, workers: int = 1) -> dict:
    """Compare sorted pivot distributions across (mu, sigma) settings.

    Every setting reuses the same substreams, so the data are exact affine
    images of each other and the pivots must agree up to rounding.
    """
    rng = RngSpec(seed)
    rows = []
    for n in ns:
        reference = None
        for mu, sigma in params:
            cfg = SimulationConfig(n=n, reps=reps, rng=rng,
                                   statistic_kind=StatisticKind.PIVOT,
                                   data_model=LocationScale(mu, sigma), mu0=mu)
            values = simulate_statistic(cfg, workers=workers).sorted_values
            if reference is None:
                reference = values
            diff = float(np.max(np.abs(values - reference)))
            rows.append({"n": n, "mu": mu, "sigma": sigma,
                         "max_abs_diff": diff, "match": diff <= tol})
    return {"reps": reps, "tolerance": tol, "settings": rows,
            "passed": all(r["match"] for r in rows)}


def normality_checks(ks: Sequence[float], slack: float = KS_SLACK,
                     final_limit: float = KS_FINAL_LIMIT) -> dict:
    """KS distances should fall with n (``slack`` tolerates MC noise between
    neighbours) and end below ``final_limit``."""
    decreasing = all(b <= a * (1.0 + slack) for a, b in zip(ks, ks[1:]))
    return {"decreasing": decreasing, "final_below_limit": bool(ks[-1] < final_limit),
            "slack": slack, "final_limit": final_limit}


def verify_normality(grid: Iterable[int], reps: int, seed: int, workers: int = 1) -> dict:
    """KS distance to N(0, 1), mean and variance of the scaled statistic per n."""
    rng = RngSpec(seed)
    rows = []
    for n in grid:
        cfg = SimulationConfig(n=n, reps=reps, rng=rng,
                               statistic_kind=StatisticKind.SCALED_ROBUST_T)
        dist = simulate_statistic(cfg, workers=workers)
        rows.append({"n": n, "ks": ks_distance_to_std_normal(dist),
                     "mean": dist.mean(), "variance": dist.variance()})
    result = {"reps": reps, "rows": rows}
    result["checks"] = normality_checks([r["ks"] for r in rows])
    return result


def robustness_study(n: int, eps: float, shift: float, reps: int, seed: int,
                     level: float = 0.05, contam_sigma: float = 1.0,
                     workers: int = 1) -> dict:
    """Empirical two-sided size of the robust (asymptotic) and classical tests
    when a fraction ``eps`` of N(0, 1) data is moved to N(shift, contam_sigma^2).

    Both tests see the same simulated samples; H0 is the clean location 0.
    """
    model = ContaminationModel(epsilon=eps, clean_mu=0.0, clean_sigma=1.0,
                               contam_mu=shift, contam_sigma=contam_sigma)
    rng = RngSpec(seed)
    z_crit = std_normal_quantile(1.0 - level / 2)
    t_crit = t_quantile(1.0 - level / 2, n - 1)

    def size(kind, crit):
        cfg = SimulationConfig(n=n, reps=reps, rng=rng, statistic_kind=kind,
                               data_model=Contaminated(model), mu0=0.0)
        return estimate_rejection_rate(cfg, crit, two_sided=True, workers=workers)

    robust = size(StatisticKind.SCALED_ROBUST_T, z_crit)
    classical = size(StatisticKind.CLASSICAL_T, t_crit)
    return {
        "n": n, "eps": eps, "shift": shift, "contam_sigma": contam_sigma,
        "reps": reps, "level": level,
        "robust_critical": z_crit, "classical_critical": t_crit,
        "robust_size": robust, "classical_size": classical,
        "robust_size_se": math.sqrt(robust * (1 - robust) / reps),
        "classical_size_se": math.sqrt(classical * (1 - classical) / reps),
    }
