import math

import numpy as np
import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from mappedquad import DomainError, MapParam, cosine_map, kt_derivative, kt_forward, kt_inverse

alphas = st.floats(0.0, 1.0)
unit = st.floats(-1.0, 1.0)

EPS = np.finfo(float).eps


def test_map_param_validation():
    assert MapParam(0.5).alpha == 0.5
    for bad in (-0.1, 1.0000001, float("nan"), float("inf")):
        with pytest.raises(DomainError):
            MapParam(bad)
    assert MapParam(0.0).is_identity
    assert MapParam(1e-9).is_identity
    assert not MapParam(1e-6).is_identity


def test_identity_branch():
    assert kt_forward(0.0, 0.3) == 0.3
    assert kt_inverse(0.0, 0.7) == 0.7
    assert kt_derivative(0.0, -0.4) == 1.0


def test_alpha_one_gives_lobatto_points():
    m = 10
    i = np.arange(m + 1)
    x = -1 + 2 * i / m
    np.testing.assert_allclose(kt_forward(1.0, x), -np.cos(i * np.pi / m), atol=1e-15)


def test_scalar_value():
    # direct evaluation of sin(pi/8)/sin(pi/4)
    assert kt_forward(0.5, 0.5) == pytest.approx(math.sin(math.pi / 8) / math.sin(math.pi / 4), abs=1e-15)
    assert kt_forward(0.5, 0.5) == pytest.approx(0.5411961, abs=1e-7)
    assert isinstance(kt_forward(0.5, 0.5), float)


def test_inverse_example():
    assert kt_inverse(1.0, -math.cos(math.pi / 4)) == pytest.approx(-0.5, abs=1e-15)


def test_derivative_example_and_endpoints():
    assert kt_derivative(1.0, 0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert abs(kt_derivative(1.0, 1.0)) < 1e-15
    assert abs(kt_derivative(1.0, -1.0)) < 1e-15


def test_domain_errors_and_boundary_tolerance():
    with pytest.raises(DomainError):
        kt_forward(0.5, 1.0 + 1e-10)
    with pytest.raises(DomainError):
        kt_inverse(0.5, -1.0 - 1e-10)
    assert kt_forward(0.5, 1.0 + 5e-15) == 1.0


def test_roundtrip_1000_random():
    rng = np.random.default_rng(1)
    a = rng.uniform(0, 1, 1000)
    x = rng.uniform(-1, 1, 1000)
    err = [abs(kt_inverse(ai, kt_forward(ai, xi)) - xi) for ai, xi in zip(a, x)]
    assert max(err) < 1e-13


def test_derivative_finite_difference():
    rng = np.random.default_rng(2)
    h = 1e-5
    for a, x in zip(rng.uniform(0, 1, 100), rng.uniform(-1 + h, 1 - h, 100)):
        fd = (kt_forward(a, x + h) - kt_forward(a, x - h)) / (2 * h)
        # O(h^2) truncation plus O(eps/h) rounding
        assert abs(kt_derivative(a, x) - fd) < 1e-9


@given(alphas, unit, unit)
def test_monotone(a, x1, x2):
    if x1 < x2:
        assert kt_forward(a, x1) <= kt_forward(a, x2)
        if x2 - x1 > 1e-12:
            assert kt_forward(a, x1) < kt_forward(a, x2)


@given(alphas, unit)
def test_odd_symmetry_and_range(a, x):
    y = kt_forward(a, x)
    assert -1.0 <= y <= 1.0
    assert abs(kt_forward(a, -x) + y) <= 4 * np.finfo(float).eps


@given(alphas)
def test_endpoints_fixed(a):
    assert kt_forward(a, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert kt_forward(a, -1.0) == pytest.approx(-1.0, abs=1e-15)


@given(st.floats(1e-6, 1.0), unit)
@example(1.0, 0.99999)
def test_derivative_identity(a, x):
    p = MapParam(a)
    y = kt_forward(p, x)
    s = p.scale
    r = max(0.0, 1.0 - (s * y) ** 2)
    alt = p.half_angle / s * math.sqrt(r)
    # sqrt(1 - y^2) cancels near the ends; allow for its conditioning
    tol = 1e-13 + 8 * EPS * p.half_angle / s / math.sqrt(max(r, EPS))
    assert abs(kt_derivative(p, x) - alt) < tol
    direct = p.half_angle / s * math.cos(p.half_angle * x)
    assert abs(kt_derivative(p, x) - direct) < 1e-13


@given(alphas.filter(lambda a: a < 1), unit)
def test_derivative_positive_below_one(a, x):
    assert kt_derivative(a, x) > 0


def test_continuity_at_zero():
    x = np.linspace(-1, 1, 101)
    assert np.max(np.abs(kt_forward(1e-6, x) - x)) < 1e-5


def test_cosine_map():
    assert cosine_map(-1, 1, -1.0) == pytest.approx(-1.0)
    a, b, m = 0.5, 3.0, 7
    i = np.arange(m + 1)
    np.testing.assert_allclose(cosine_map(a, b, a + i * (b - a) / m), -np.cos(i * np.pi / m), atol=1e-15)
    xm = a + (i + 0.5) * (b - a) / (m + 1)
    np.testing.assert_allclose(cosine_map(a, b, xm), -np.cos((2 * i + 1) * np.pi / (2 * m + 2)), atol=1e-15)
    with pytest.raises(DomainError):
        cosine_map(a, b, 3.5)
