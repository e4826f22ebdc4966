"""One-sample tests and confidence intervals based on the median and MAD.

Two calibrations are offered for the robust test:

* ``asymptotic`` -- the scaled statistic is referred to N(0, 1).  Valid as
  n grows; at small n the result is tagged so reports can flag it.
* ``monte_carlo`` -- the observed pivot (median - mu0) / MAD is referred to a
  simulated pivot distribution for the same n.  Because the pivot's law does
  not depend on (mu, sigma) within a location-scale family, one table per n
  serves every normal population.

The finite-sample table mechanism is an addition on top of the asymptotic
result; it is justified by pivotality alone.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DomainError, TableMismatchError
from .montecarlo import SimulationConfig, empirical_quantile, simulate_statistic
from .normal_dist import std_normal_cdf, std_normal_sf
from .robust_estimators import SampleLike, as_sample, mad, median
from .sampling import RngSpec, StdNormal
from .statistics import (
    ROBUST_T_TO_SCALED,
    StatisticKind,
    classical_t,
    pivot_statistic,
    robust_t,
)
from .student_t import t_cdf, t_sf

__all__ = [
    "Alternative",
    "Calibration",
    "DEFAULT_PROBS",
    "MIN_REPORTED_REPS",
    "QuantileTable",
    "TestResult",
    "Interval",
    "build_quantile_table",
    "robust_one_sample_test",
    "robust_confidence_interval",
    "classical_one_sample_test",
]

DEFAULT_PROBS = (0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5,
                 0.75, 0.9, 0.95, 0.975, 0.99, 0.995)
MIN_TABLE_REPS = 1000
MIN_REPORTED_REPS = 100_000
_PROB_MATCH = 1e-12


class Alternative(str, enum.Enum):
    TWO_SIDED = "two-sided"
    GREATER = "greater"
    LESS = "less"


class Calibration(str, enum.Enum):
    ASYMPTOTIC = "asymptotic"
    MONTE_CARLO = "monte_carlo"
    STUDENT_T = "student_t"


@dataclass(frozen=True, eq=False)
class QuantileTable:
    """Simulated quantiles of the pivot (median - mu) / MAD for one n.

    ``values`` optionally holds the full sorted simulated distribution; it is
    required for Monte Carlo p-values but not for intervals or decisions at
    probabilities present in ``probs``.
    """

    n: int
    probs: tuple[float, ...]
    quantiles: tuple[float, ...]
    reps: int
    rng: RngSpec
    created_at: str
    values: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        object.__setattr__(self, "quantiles", tuple(float(q) for q in self.quantiles))
        if self.values is not None:
            object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        self.validate()

    def validate(self) -> None:
        """Raise :class:`DomainError` if an invariant is violated."""
        if len(self.probs) != len(self.quantiles) or not self.probs:
            raise DomainError("probs and quantiles must be non-empty and of equal length")
        if any(not 0.0 < p < 1.0 for p in self.probs):
            raise DomainError("table probabilities must lie in (0, 1)")
        if any(b <= a for a, b in zip(self.probs, self.probs[1:])):
            raise DomainError("table probabilities must be strictly increasing")
        if any(not math.isfinite(q) for q in self.quantiles):
            raise DomainError("table quantiles must be finite")
        if any(b < a for a, b in zip(self.quantiles, self.quantiles[1:])):
            raise DomainError("table quantiles must be nondecreasing")
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"table n must be an integer >= 2, got {self.n!r}")
        if int(self.reps) != self.reps or self.reps < 1:
            raise DomainError(f"table reps must be positive, got {self.reps!r}")
        if self.values is not None:
            v = self.values
            if v.ndim != 1 or v.size != self.reps:
                raise DomainError("table values must hold exactly reps entries")
            if not np.all(np.isfinite(v)) or np.any(np.diff(v) < 0):
                raise DomainError("table values must be finite and sorted")

    @property
    def table_id(self) -> str:
        return f"n{self.n}-reps{self.reps}-seed{self.rng.seed}-stream{self.rng.stream}"

    def quantile(self, p: float) -> float:
        for prob, q in zip(self.probs, self.quantiles):
            if abs(prob - p) <= _PROB_MATCH:
                return q
        if self.values is not None:
            return empirical_quantile(self.values, p)
        raise TableMismatchError(f"table {self.table_id} has no quantile for p={p}")

    def __eq__(self, other):
        if not isinstance(other, QuantileTable):
            return NotImplemented
        same_values = (
            (self.values is None and other.values is None)
            or (self.values is not None and other.values is not None
                and np.array_equal(self.values, other.values))
        )
        return (self.n == other.n and self.probs == other.probs
                and self.quantiles == other.quantiles and self.reps == other.reps
                and self.rng == other.rng and self.created_at == other.created_at
                and same_values)

    __hash__ = None


@dataclass(frozen=True)
class TestResult:
    __test__ = False  # not a pytest class

    method: str
    statistic_raw: float
    statistic_scaled: Optional[float]
    p_value: float
    alternative: Alternative
    calibration: Calibration
    n: int
    mu0: float
    table_id: Optional[str] = None
    level: Optional[float] = None
    reject: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "statistic_raw": self.statistic_raw,
            "statistic_scaled": self.statistic_scaled,
            "p_value": self.p_value,
            "alternative": self.alternative.value,
            "calibration": self.calibration.value,
            "table_id": self.table_id,
            "n": self.n,
            "mu0": self.mu0,
            "level": self.level,
            "reject": self.reject,
        }


class Interval(NamedTuple):
    lower: float
    upper: float


def build_quantile_table(n: int, probs: Sequence[float] = DEFAULT_PROBS,
                         reps: int = MIN_REPORTED_REPS, rng: RngSpec = RngSpec(0),
                         workers: int = 1, keep_values: bool = True) -> QuantileTable:
    """Simulate the pivot under N(0, 1) and tabulate its quantiles."""
    if reps < MIN_TABLE_REPS:
        raise DomainError(f"calibration needs reps >= {MIN_TABLE_REPS}, got {reps}")
    probs = tuple(sorted(float(p) for p in probs))
    config = SimulationConfig(n=n, reps=reps, rng=rng,
                              statistic_kind=StatisticKind.PIVOT,
                              data_model=StdNormal(), mu0=0.0)
    dist = simulate_statistic(config, workers=workers)
    quantiles = tuple(empirical_quantile(dist, p) for p in probs)
    return QuantileTable(
        n=n, probs=probs, quantiles=quantiles, reps=reps, rng=rng,
        created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        values=dist.sorted_values if keep_values else None,
    )


def _check_level(level: Optional[float]) -> None:
    if level is not None and not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")


def _normal_p_value(s: float, alternative: Alternative) -> float:
    if alternative is Alternative.TWO_SIDED:
        return min(1.0, 2.0 * std_normal_sf(abs(s)))
    if alternative is Alternative.GREATER:
        return std_normal_sf(s)
    return std_normal_cdf(s)


def _mc_p_value(piv: float, values: np.ndarray, alternative: Alternative) -> float:
    # (1 + exceedances) / (reps + 1) never undershoots the exact p-value
    reps = values.size
    if alternative is Alternative.TWO_SIDED:
        hits = np.count_nonzero(np.abs(values) >= abs(piv))
    elif alternative is Alternative.GREATER:
        hits = reps - np.searchsorted(values, piv, side="left")
    else:
        hits = np.searchsorted(values, piv, side="right")
    return (1 + int(hits)) / (reps + 1)


def _mc_reject(piv: float, table: QuantileTable, alternative: Alternative,
               alpha: float) -> bool:
    # decisions use the table quantiles so they agree with the interval
    if alternative is Alternative.TWO_SIDED:
        return piv < table.quantile(alpha / 2) or piv > table.quantile(1 - alpha / 2)
    if alternative is Alternative.GREATER:
        return piv > table.quantile(1 - alpha)
    return piv < table.quantile(alpha)


def robust_one_sample_test(sample: SampleLike, mu0: float,
                           alternative: Alternative | str = Alternative.TWO_SIDED,
                           calibration: Calibration | str = Calibration.ASYMPTOTIC,
                           table: Optional[QuantileTable] = None,
                           level: Optional[float] = None) -> TestResult:
    """Test H0: location = mu0 with the median/MAD statistic.

    In asymptotic mode the p-value comes from N(0, 1) applied to the scaled
    statistic.  In Monte Carlo mode it is ``(1 + #exceedances) / (reps + 1)``
    against the table's simulated pivots, and the decision at ``level``
    compares the observed pivot with the table quantiles, so that it matches
    :func:`robust_confidence_interval` exactly.
    """
    alternative = Alternative(alternative)
    calibration = Calibration(calibration)
    _check_level(level)
    sample = as_sample(sample)
    piv = pivot_statistic(sample, mu0)
    raw = robust_t(sample, mu0)
    scaled = ROBUST_T_TO_SCALED * raw

    if calibration is Calibration.ASYMPTOTIC:
        p = _normal_p_value(scaled, alternative)
        reject = None if level is None else p <= level
        table_id = None
    elif calibration is Calibration.MONTE_CARLO:
        if table is None:
            raise DomainError("monte_carlo calibration needs a quantile table")
        if table.n != sample.n:
            raise TableMismatchError(
                f"table built for n={table.n} but the sample has n={sample.n}")
        if table.values is None:
            raise TableMismatchError(
                f"table {table.table_id} carries no simulated values for p-values")
        p = _mc_p_value(piv, table.values, alternative)
        reject = None if level is None else _mc_reject(piv, table, alternative, level)
        table_id = table.table_id
    else:
        raise DomainError("the robust test supports asymptotic or monte_carlo calibration")

    return TestResult(
        method="robust", statistic_raw=raw, statistic_scaled=scaled,
        p_value=float(min(1.0, max(0.0, p))), alternative=alternative,
        calibration=calibration, n=sample.n, mu0=float(mu0), table_id=table_id,
        level=level, reject=reject,
    )


def robust_confidence_interval(sample: SampleLike, level: float,
                               table: QuantileTable) -> Interval:
    """Invert the pivot: [median - q_hi * MAD, median - q_lo * MAD]."""
    _check_level(level)
    if level is None:
        raise DomainError("a confidence level is required")
    sample = as_sample(sample)
    if table.n != sample.n:
        raise TableMismatchError(
            f"table built for n={table.n} but the sample has n={sample.n}")
    # validates n >= 2 and MAD > 0
    pivot_statistic(sample, 0.0)
    alpha = 1.0 - level
    q_lo = table.quantile(alpha / 2)
    q_hi = table.quantile(1 - alpha / 2)
    m, s = median(sample), mad(sample)
    return Interval(m - q_hi * s, m - q_lo * s)


def classical_one_sample_test(sample: SampleLike, mu0: float,
                              alternative: Alternative | str = Alternative.TWO_SIDED,
                              level: Optional[float] = None) -> TestResult:
    """Student's one-sample t test with n - 1 degrees of freedom."""
    alternative = Alternative(alternative)
    _check_level(level)
    sample = as_sample(sample)
    t = classical_t(sample, mu0)
    df = sample.n - 1
    if alternative is Alternative.TWO_SIDED:
        p = min(1.0, 2.0 * t_sf(abs(t), df))
    elif alternative is Alternative.GREATER:
        p = t_sf(t, df)
    else:
        p = t_cdf(t, df)
    return TestResult(
        method="classical", statistic_raw=t, statistic_scaled=None, p_value=p,
        alternative=alternative, calibration=Calibration.STUDENT_T, n=sample.n,
        mu0=float(mu0), level=level, reject=None if level is None else p <= level,
    )
