"""Reproducible normal, location-scale and contaminated samples.

Every draw comes from a PCG64 generator seeded by
``SeedSequence(seed, spawn_key=(stream, role, *path))``.  ``role`` separates
the normal variates from the mixture indicators, and ``path`` (used by the
Monte Carlo engine) separates replication blocks and redraw attempts.
Because the normal variates of a location-scale or contaminated sample are
the very same draws as the standard normal sample for the same key, the
affine coupling ``x = sigma * z + mu`` holds exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError
from .robust_estimators import Sample

__all__ = [
    "RngSpec",
    "ContaminationModel",
    "StdNormal",
    "LocationScale",
    "Contaminated",
    "DataModel",
    "generator",
    "draw_block",
    "contamination_mask",
    "sample_std_normal",
    "sample_location_scale",
    "sample_contaminated",
]

_NORMALS = 0
_INDICATORS = 1

_UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class RngSpec:
    seed: int
    stream: int = 0

    def __post_init__(self):
        if int(self.seed) != self.seed or not 0 <= self.seed <= _UINT64_MAX:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if int(self.stream) != self.stream or self.stream < 0:
            raise DomainError(f"stream must be a nonnegative integer, got {self.stream!r}")
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "stream", int(self.stream))


@dataclass(frozen=True)
class ContaminationModel:
    """Each observation is N(contam_mu, contam_sigma^2) with probability
    ``epsilon`` and N(clean_mu, clean_sigma^2) otherwise."""

    epsilon: float
    clean_mu: float = 0.0
    clean_sigma: float = 1.0
    contam_mu: float = 0.0
    contam_sigma: float = 1.0

    def __post_init__(self):
        # epsilon == 1 is accepted as a degenerate edge case
        if not 0.0 <= self.epsilon <= 1.0:
            raise DomainError(f"epsilon must lie in [0, 1], got {self.epsilon!r}")
        if not (self.clean_sigma > 0 and self.contam_sigma > 0):
            raise DomainError("both component sigmas must be positive")


@dataclass(frozen=True)
class StdNormal:
    def transform(self, z, u):
        return z


@dataclass(frozen=True)
class LocationScale:
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")

    def transform(self, z, u):
        if self.mu == 0.0 and self.sigma == 1.0:
            return z
        return self.sigma * z + self.mu


@dataclass(frozen=True)
class Contaminated:
    model: ContaminationModel

    def transform(self, z, u):
        m = self.model
        clean = m.clean_sigma * z + m.clean_mu
        if m.epsilon == 0.0:
            return clean
        dirty = m.contam_sigma * z + m.contam_mu
        return np.where(u < m.epsilon, dirty, clean)


DataModel = Union[StdNormal, LocationScale, Contaminated]


def generator(rng: RngSpec, *path: int) -> np.random.Generator:
    ss = np.random.SeedSequence(rng.seed, spawn_key=(rng.stream, *path))
    return np.random.Generator(np.random.PCG64(ss))


def draw_block(rng: RngSpec, shape, model: DataModel, path: tuple[int, ...] = ()) -> np.ndarray:
    """Draw an array of ``shape`` observations from ``model``.

    The uniform indicator array is only generated for contaminated models and
    comes from its own substream, so it never disturbs the normal draws.
    """
    z = generator(rng, _NORMALS, *path).standard_normal(shape)
    u = None
    if isinstance(model, Contaminated):
        u = generator(rng, _INDICATORS, *path).random(shape)
    return model.transform(z, u)


def contamination_mask(rng: RngSpec, shape, model: ContaminationModel,
                       path: tuple[int, ...] = ()) -> np.ndarray:
    """Boolean array marking which draws of :func:`draw_block` came from the
    contaminating component."""
    return generator(rng, _INDICATORS, *path).random(shape) < model.epsilon


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return int(n)


def sample_std_normal(rng: RngSpec, n: int) -> Sample:
    return Sample(tuple(draw_block(rng, _check_n(n), StdNormal()).tolist()))


def sample_location_scale(rng: RngSpec, n: int, mu: float, sigma: float) -> Sample:
    model = LocationScale(mu, sigma)
    return Sample(tuple(draw_block(rng, _check_n(n), model).tolist()))


def sample_contaminated(rng: RngSpec, n: int, model: ContaminationModel) -> Sample:
    if not isinstance(model, ContaminationModel):
        raise DomainError("model must be a ContaminationModel")
    return Sample(tuple(draw_block(rng, _check_n(n), Contaminated(model)).tolist()))
