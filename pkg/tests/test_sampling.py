import numpy as np
import pytest

from robust_ttest import (
    ContaminationModel,
    DomainError,
    RngSpec,
    median,
    sample_contaminated,
    sample_location_scale,
    sample_std_normal,
)
from robust_ttest.sampling import Contaminated, StdNormal, contamination_mask, draw_block


def test_determinism():
    assert sample_std_normal(RngSpec(1, 0), 5) == sample_std_normal(RngSpec(1, 0), 5)


def test_stream_separation():
    a = sample_std_normal(RngSpec(1, 0), 5)
    b = sample_std_normal(RngSpec(1, 1), 5)
    assert a.values != b.values


def test_large_sample_moments():
    x = np.array(sample_std_normal(RngSpec(20261019), 100_000).values)
    assert abs(x.mean()) < 0.02
    assert abs(x.var(ddof=1) - 1) < 0.03


@pytest.mark.parametrize("args", [(-1,), (2**64,), (1, -2), (1.5,)])
def test_rng_spec_validation(args):
    with pytest.raises(DomainError):
        RngSpec(*args)


def test_n_validation():
    with pytest.raises(DomainError):
        sample_std_normal(RngSpec(1), 0)


def test_location_scale_identity_and_affine():
    rng = RngSpec(42, 3)
    z = sample_std_normal(rng, 31)
    assert sample_location_scale(rng, 31, 0.0, 1.0) == z
    x = sample_location_scale(rng, 31, 10.0, 2.0)
    assert np.allclose(x.values, 2 * np.array(z.values) + 10, rtol=0, atol=1e-12)
    assert abs(median(x) - (2 * median(z) + 10)) < 1e-12


def test_location_scale_sigma_validation():
    with pytest.raises(DomainError):
        sample_location_scale(RngSpec(1), 5, 0.0, 0.0)


def test_contamination_degenerate_mixtures():
    rng = RngSpec(8)
    clean = sample_contaminated(rng, 50, ContaminationModel(0.0, 1.5, 2.0, 99.0, 1.0))
    assert clean == sample_location_scale(rng, 50, 1.5, 2.0)
    dirty = sample_contaminated(rng, 50, ContaminationModel(1.0, 1.5, 2.0, 99.0, 3.0))
    assert dirty == sample_location_scale(rng, 50, 99.0, 3.0)


def test_contamination_count():
    model = ContaminationModel(0.1, 0.0, 1.0, 1000.0, 1.0)
    rng = RngSpec(5)
    mask = contamination_mask(rng, 100_000, model)
    assert 9400 <= mask.sum() <= 10600
    x = np.array(sample_contaminated(rng, 100_000, model).values)
    assert ((x > 500) == mask).all()


@pytest.mark.parametrize("kwargs", [
    dict(epsilon=-0.1), dict(epsilon=1.2), dict(epsilon=0.1, clean_sigma=0),
    dict(epsilon=0.1, contam_sigma=-1)])
def test_contamination_model_validation(kwargs):
    with pytest.raises(DomainError):
        ContaminationModel(**kwargs)


def test_contaminated_requires_model():
    with pytest.raises(DomainError):
        sample_contaminated(RngSpec(1), 5, Contaminated(ContaminationModel(0.1)))


def test_stream_independence():
    # 50 000 pairs put the 0.02 threshold at ~4.5 standard errors of r
    pairs = 50_000
    a = np.empty(pairs)
    b = np.empty(pairs)
    for i in range(pairs):
        a[i] = np.median(draw_block(RngSpec(77, 2 * i), 15, StdNormal()))
        b[i] = np.median(draw_block(RngSpec(77, 2 * i + 1), 15, StdNormal()))
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.02
