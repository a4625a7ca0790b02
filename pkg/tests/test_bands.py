"""Monte Carlo null simulation and quantile bands."""

import numpy as np
import pytest

from tvkde import NullSimConfig, confidence_bands, simulate_null_paths
from tvkde.bands import empirical_quantile
from tvkde.errors import ParameterError


def small_cfg(**kw):
    base = dict(n_paths=100, path_length=60, t0=20, sigma=0.01,
                h=0.004, omega=0.96, seed=3, n_grid=256)
    base.update(kw)
    return NullSimConfig(**base)


def test_config_validation():
    with pytest.raises(ParameterError):
        small_cfg(n_paths=50)
    with pytest.raises(ParameterError):
        small_cfg(sigma=0.0)
    with pytest.raises(ParameterError):
        small_cfg(levels=(0.95, 1.0))
    with pytest.raises(ParameterError):
        small_cfg(t0=60)


def test_null_paths_shape_and_scale():
    paths = simulate_null_paths(small_cfg())
    assert paths.shape == (100, 60)
    assert np.std(paths) == pytest.approx(0.01, rel=0.05)
    assert np.mean(paths) == pytest.approx(0.0, abs=0.001)


def test_null_paths_deterministic_per_index():
    a = simulate_null_paths(small_cfg(n_paths=100))
    b = simulate_null_paths(small_cfg(n_paths=120))
    assert np.array_equal(a, b[:100])
    c = simulate_null_paths(small_cfg(seed=4))
    assert not np.array_equal(a, c)


def test_empirical_quantile_order_statistic(rng):
    values = rng.normal(size=(100, 3))
    got = empirical_quantile(values, 0.95, axis=0)
    # 1-based order statistic ceil(0.95 * 100) = 95
    expected = np.sort(values, axis=0)[94]
    assert np.array_equal(got, expected)
    assert np.array_equal(empirical_quantile(values, 0.999, axis=0),
                          np.sort(values, axis=0)[-1])


def test_bands_monotone_across_levels_and_nonnegative():
    bands = confidence_bands(small_cfg(), kinds=("ks", "wasserstein1"))
    assert [b.kind for b in bands] == ["ks", "wasserstein1"]
    for b in bands:
        assert b.dates[0] == 20 and b.dates[-1] == 60
        q95, q99, q999 = (b.curves[p] for p in (0.95, 0.99, 0.999))
        assert np.all(q95 >= 0)
        assert np.all(q99 >= q95)
        assert np.all(q999 >= q99)
        # self-comparison at the reference date
        assert q999[0] == 0.0


def test_bands_deterministic():
    b1 = confidence_bands(small_cfg(), kinds=("hellinger",))[0]
    b2 = confidence_bands(small_cfg(), kinds=("hellinger",))[0]
    for p in b1.levels:
        assert np.array_equal(b1.curves[p], b2.curves[p])
