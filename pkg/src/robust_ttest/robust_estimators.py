"""Sample median, median absolute deviation and the rescaled MAD.

Scalar estimators work on a :class:`Sample` (or anything convertible to one)
and use quickselect; the ``batch_*`` variants treat each row of a 2-D array
as a sample and are what the Monte Carlo engine calls.  Both follow the same
even-n rule: the mean of the two central order statistics, computed as
``(a + b) / 2`` so that scalar and batch results agree bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DomainError
from .normal_dist import CONSTANTS

__all__ = [
    "Sample",
    "as_sample",
    "select",
    "median",
    "mad",
    "rescaled_mad",
    "batch_median",
    "batch_mad",
]


@dataclass(frozen=True)
class Sample:
    """Immutable collection of finite real observations, in input order."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        for i, v in enumerate(vals):
            if not math.isfinite(v):
                raise DomainError(f"observation {i} is not finite: {v!r}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def to_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


SampleLike = Union[Sample, Sequence[float], np.ndarray, Iterable[float]]


def as_sample(data: SampleLike) -> Sample:
    if isinstance(data, Sample):
        return data
    if isinstance(data, np.ndarray):
        data = data.ravel().tolist()
    return Sample(tuple(data))


def _require_nonempty(sample: Sample) -> None:
    if sample.n == 0:
        raise DomainError("cannot estimate from an empty sample")


def select(values: list[float], k: int) -> float:
    """Return the k-th smallest element (0-indexed) of ``values``.

    Quickselect with a median-of-three pivot and three-way partitioning.
    Falls back to sorting once the partition depth exceeds 2*log2(n), which
    bounds the worst case at O(n log n).  ``values`` is not modified.
    """
    if not 0 <= k < len(values):
        raise DomainError(f"rank {k} out of range for {len(values)} values")
    items = list(values)
    depth = 2 * max(1, len(items)).bit_length()
    while True:
        if len(items) <= 16 or depth == 0:
            items.sort()
            return items[k]
        depth -= 1
        a, b, c = items[0], items[len(items) // 2], items[-1]
        pivot = sorted((a, b, c))[1]
        lows = [v for v in items if v < pivot]
        n_eq = sum(1 for v in items if v == pivot)
        if k < len(lows):
            items = lows
        elif k < len(lows) + n_eq:
            return pivot
        else:
            k -= len(lows) + n_eq
            items = [v for v in items if v > pivot]


def _median_of(values: list[float]) -> float:
    n = len(values)
    mid = n // 2
    if n % 2:
        return select(values, mid)
    lo = select(values, mid - 1)
    hi = select(values, mid)
    return (lo + hi) / 2


def median(sample: SampleLike) -> float:
    """Sample median; for even n the mean of the two central order statistics."""
    sample = as_sample(sample)
    _require_nonempty(sample)
    return _median_of(list(sample.values))


def mad(sample: SampleLike) -> float:
    """Median absolute deviation from the sample median (unscaled).

    A constant sample has MAD 0; callers that divide by it must check.
    """
    sample = as_sample(sample)
    _require_nonempty(sample)
    vals = list(sample.values)
    m = _median_of(vals)
    return _median_of([abs(v - m) for v in vals])


def rescaled_mad(sample: SampleLike) -> float:
    """MAD divided by Phi^-1(3/4), consistent for sigma under normality."""
    return mad(sample) / CONSTANTS.mad_consistency


def batch_median(x: np.ndarray) -> np.ndarray:
    """Row-wise median of a 2-D array."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[1] == 0:
        raise DomainError("batch_median expects a non-empty 2-D array")
    n = x.shape[1]
    mid = n // 2
    if n % 2:
        return np.partition(x, mid, axis=1)[:, mid]
    part = np.partition(x, (mid - 1, mid), axis=1)
    return (part[:, mid - 1] + part[:, mid]) / 2


def batch_mad(x: np.ndarray, centers: np.ndarray | None = None) -> np.ndarray:
    """Row-wise MAD; pass precomputed row medians as ``centers`` to reuse them."""
    x = np.asarray(x, dtype=float)
    if centers is None:
        centers = batch_median(x)
    return batch_median(np.abs(x - centers[:, None]))
