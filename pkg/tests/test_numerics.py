import math
import warnings
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_moment import numerics as nx
from twisted_moment.numerics import (DEFAULT_PLAN, DomainError, PoleError, QuadraturePlan,
                                     QuadratureToleranceWarning)

finite = dict(allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(st.floats(-30, 30, **finite), st.floats(-200, 200, **finite))
def test_gamma_matches_mpmath(x, y):
    z = complex(x, y)
    if abs(z - round(x)) < 1e-3 and round(x) <= 0:
        return
    ref = complex(mpmath.gamma(mpmath.mpc(x, y)))
    if ref == 0 or not np.isfinite(abs(ref)):
        return
    got = nx.complex_gamma(z)
    assert abs(got / ref - 1) < 1e-11


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 0.99, **finite), st.floats(-80, 80, **finite))
def test_gamma_reflection(x, y):
    z = complex(x, y)
    prod = nx.complex_gamma(z) * nx.complex_gamma(1 - z) * np.sin(np.pi * z) / np.pi
    assert abs(prod - 1) < 1e-10


def test_gamma_vectorized_shape_and_real_axis():
    z = np.array([[0.5, 1.0], [2.5, 5.0]])
    g = nx.complex_gamma(z)
    assert g.shape == (2, 2)
    np.testing.assert_allclose(g.real, scipy.special.gamma(z), rtol=1e-13)


@pytest.mark.parametrize("z", [0, -1, -7, 0j, -3 + 0j])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        nx.complex_gamma(z)


def test_gamma_near_pole_is_large_not_error():
    assert abs(nx.complex_gamma(-2 + 1e-9)) > 1e8


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 3.7, 25.0, 1e3])
def test_digamma_matches_scipy(x):
    assert nx.digamma(x) == pytest.approx(scipy.special.digamma(x), rel=1e-14, abs=1e-14)


def test_digamma_known_values():
    assert nx.digamma(1.0) == pytest.approx(-nx.EULER_GAMMA, abs=1e-15)
    assert nx.digamma(0.5) == pytest.approx(-nx.EULER_GAMMA - 2 * math.log(2), abs=1e-15)


def test_bernoulli_numbers_exact():
    b = nx.bernoulli_numbers(5)
    assert b[:5] == (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66))


def test_compensated_sum_recovers_cancelled_terms():
    assert nx.compensated_sum([1e16, 1.0, -1e16]) == 1.0
    assert nx.compensated_sum_complex([1e16 + 1j, 1.0, -1e16 - 1j]) == 1.0


@pytest.mark.parametrize("T", [2.0, 10.0, 40.0])
@pytest.mark.parametrize("xi", [-0.9, 0.0, 0.05, 0.4])
def test_window_transforms_closed_vs_quadrature(T, xi):
    q = nx.gaussian_window_transform_quad(xi, T)
    assert abs(q.value - nx.gaussian_window_transform(xi, T)) < 1e-9
    qw = nx.gaussian_window_transform_quad(xi, T, weighted=True)
    assert abs(qw.value - nx.gaussian_window_transform_weighted(xi, T)) < 1e-9 * max(1, T**2)


def test_window_transform_rejects_nonpositive_T():
    with pytest.raises(DomainError):
        nx.gaussian_window_transform(0.1, 0.0)


def test_integrate_panels_elementary():
    r = nx.integrate_panels(np.sin, 0.0, math.pi)
    assert abs(r.value - 2.0) < 1e-14 and r.error < 1e-12
    g = nx.integrate_panels(lambda x: np.exp(-x * x), -8, 8)
    assert abs(g.value - math.sqrt(math.pi)) < 1e-14


def test_integrate_panels_vector_valued():
    def f(x):
        return np.stack([np.cos(x), x**2], axis=1)

    r = nx.integrate_panels(f, 0.0, 1.0)
    np.testing.assert_allclose(r.value, [math.sin(1.0), 1 / 3], atol=1e-15)


def test_integrate_panels_oscillatory_with_frequency():
    w = 50.0
    r = nx.integrate_panels(lambda x: np.cos(w * x), 0.0, 10.0, DEFAULT_PLAN, lambda x: w)
    assert abs(r.value - math.sin(w * 10) / w) < 1e-13


def test_integrate_panels_warns_when_under_resolved():
    coarse = QuadraturePlan(panel_width=200.0, nodes_per_panel=2)
    with pytest.warns(QuadratureToleranceWarning):
        nx.integrate_panels(lambda x: np.cos(30 * x), 0.0, 10.0, coarse)


def test_panel_edges_cover_interval():
    e = nx.panel_edges(-3.0, 5.0, 1.0, lambda t: abs(t))
    assert e[0] == -3.0 and e[-1] == 5.0 and np.all(np.diff(e) > 0)


def test_plan_validation():
    for bad in ({"nodes_per_panel": 0}, {"lhs_cutoff_factor": 4.0}, {"dual_cutoff": 39.0},
                {"target_abs_tol": 0.0}, {"panel_width": -1.0}):
        with pytest.raises(ValueError):
            QuadraturePlan(**bad)


def test_plan_doubling():
    assert DEFAULT_PLAN.doubled("panel_width").panel_width == DEFAULT_PLAN.panel_width / 2
    assert DEFAULT_PLAN.doubled("em_start").em_start == 2 * DEFAULT_PLAN.em_start
    assert isinstance(DEFAULT_PLAN.doubled("em_start").em_start, int)
    assert set(nx.TRUNCATION_PARAMETERS) <= set(DEFAULT_PLAN.as_dict())


def test_unit_root_quarter_points_exact():
    assert nx.unit_root(0, 7) == 1
    assert nx.unit_root(3, 6) == -1
    assert nx.unit_root(5, 20) == 1j
    assert nx.unit_root(-1, 4) == -1j


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**12, 10**12), st.integers(1, 10**4))
def test_unit_root_reduces_exactly(num, den):
    z = nx.unit_root(num, den)
    r = Fraction(num % den, den)
    ref = complex(mpmath.expjpi(2 * mpmath.mpf(r.numerator) / r.denominator))
    assert abs(z - ref) < 1e-15
    assert nx.cos_rational(num, den) == z.real


def test_no_warnings_on_default_transform():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        nx.gaussian_window_transform_quad(0.3, 20.0)
