"""Kernel values, primitives, and their consistency invariants."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tvkde import EPANECHNIKOV, GAUSSIAN, kernel_by_name, kernel_cdf, kernel_eval
from tvkde.errors import ParameterError

from oracles import epanechnikov_cdf, epanechnikov_pdf, gaussian_cdf, gaussian_pdf

KERNELS = [EPANECHNIKOV, GAUSSIAN]
ORACLES = {"epanechnikov": (epanechnikov_pdf, epanechnikov_cdf),
           "gaussian": (gaussian_pdf, gaussian_cdf)}


def test_epanechnikov_point_values():
    assert kernel_eval(EPANECHNIKOV, 0.0) == 0.75
    assert kernel_eval(EPANECHNIKOV, 1.0) == 0.0
    assert kernel_eval(EPANECHNIKOV, -1.0) == 0.0
    assert kernel_eval(EPANECHNIKOV, 2.5) == 0.0
    assert kernel_cdf(EPANECHNIKOV, -1.0) == 0.0
    assert kernel_cdf(EPANECHNIKOV, 1.0) == 1.0
    assert kernel_cdf(EPANECHNIKOV, 0.0) == 0.5
    assert kernel_cdf(EPANECHNIKOV, 0.5) == pytest.approx(0.84375, abs=1e-12)


def test_gaussian_point_values():
    assert kernel_eval(GAUSSIAN, 0.0) == pytest.approx(1 / math.sqrt(2 * math.pi))
    assert kernel_cdf(GAUSSIAN, 0.0) == pytest.approx(0.5, abs=1e-15)
    # high-accuracy normal cdf: check a textbook quantile
    assert kernel_cdf(GAUSSIAN, 1.959963984540054) == pytest.approx(
        0.975, abs=1e-12)


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: k.kind)
def test_matches_scalar_oracles(kernel, rng):
    fo, Fo = ORACLES[kernel.kind]
    for u in rng.uniform(-6, 6, 200):
        assert kernel_eval(kernel, u) == pytest.approx(fo(u), abs=1e-12)
        assert kernel_cdf(kernel, u) == pytest.approx(Fo(u), abs=1e-12)


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: k.kind)
def test_unit_mass_and_symmetry(kernel):
    xs = np.linspace(-40, 40, 400001)
    mass = np.trapezoid(kernel_eval(kernel, xs), xs)
    assert mass == pytest.approx(1.0, abs=1e-7)
    assert np.allclose(kernel_eval(kernel, xs), kernel_eval(kernel, -xs))


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: k.kind)
def test_cdf_monotone_with_correct_limits(kernel):
    xs = np.linspace(-10, 10, 5001)
    F = kernel_cdf(kernel, xs)
    assert np.all(np.diff(F) >= 0)
    assert F[0] == pytest.approx(0.0, abs=1e-12)
    assert F[-1] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: k.kind)
def test_primitive_consistent_with_density(kernel, rng):
    # |K_cdf(u+d) - K_cdf(u) - d*K(u)| should be O(d^2)
    delta = 1e-5
    for u in rng.uniform(-3, 3, 100):
        gap = abs(kernel_cdf(kernel, u + delta) - kernel_cdf(kernel, u)
                  - delta * kernel_eval(kernel, u))
        assert gap <= 10.0 * delta ** 2


@given(st.floats(-50, 50))
def test_epanechnikov_bounds_property(u):
    val = kernel_eval(EPANECHNIKOV, u)
    assert 0.0 <= val <= 0.75
    assert 0.0 <= kernel_cdf(EPANECHNIKOV, u) <= 1.0


def test_kernel_by_name_roundtrip():
    assert kernel_by_name("epanechnikov") is EPANECHNIKOV
    assert kernel_by_name("gaussian") is GAUSSIAN
    with pytest.raises(ParameterError):
        kernel_by_name("triangle")


def test_non_finite_input_rejected():
    with pytest.raises(ParameterError):
        kernel_eval(EPANECHNIKOV, float("nan"))
    with pytest.raises(ParameterError):
        kernel_cdf(GAUSSIAN, float("inf"))
