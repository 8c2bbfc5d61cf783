import math

import numpy as np
import pytest
from scipy.special import beta as beta_fn, roots_jacobi

from conicpoly.exceptions import ParameterRangeError
from conicpoly.quadrature import cone_quadrature, gauss_jacobi, gauss_jacobi_01, gauss_legendre
from conicpoly.sphere import solid_harmonic_eval


@pytest.mark.parametrize("alpha,beta", [(0, 0), (1.5, -0.5), (-0.7, 3), (6, 0)])
@pytest.mark.parametrize("npts", [1, 4, 17])
def test_golub_welsch_matches_scipy(alpha, beta, npts):
    rule = gauss_jacobi(alpha, beta, npts)
    x, w = roots_jacobi(npts, alpha, beta)
    np.testing.assert_allclose(rule.nodes, x, atol=1e-13)
    np.testing.assert_allclose(rule.weights, w, rtol=1e-11)
    assert rule.exactness == 2 * npts - 1


@pytest.mark.parametrize("a,b", [(0, 0), (2, 0.5), (-0.5, 1)])
def test_unit_interval_rule_reproduces_beta_moments(a, b):
    rule = gauss_jacobi_01(a, b, 8)
    for k in range(16):
        assert rule.integrate(rule.nodes ** k) == pytest.approx(beta_fn(a + k + 1, b + 1), rel=1e-12)


def test_rule_is_not_exact_beyond_its_degree():
    rule = gauss_jacobi_01(0, 0, 3)
    assert abs(rule.integrate(rule.nodes ** 6) - 1 / 7) > 1e-6


def test_gauss_legendre_interval():
    rule = gauss_legendre(0.3, 1.0, 5)
    assert rule.integrate(rule.nodes ** 9) == pytest.approx((1 - 0.3 ** 10) / 10)


def test_weight_guards():
    with pytest.raises(ParameterRangeError):
        gauss_jacobi(-1.0, 0, 3)
    with pytest.raises(ParameterRangeError):
        cone_quadrature(2, -2.0, 0, 4)
    with pytest.raises(ParameterRangeError):
        cone_quadrature(3, 0, -1.0, 4)


@pytest.mark.parametrize("beta,gamma", [(0, 0), (1, 0.5), (-0.5, 2)])
def test_cone_rule_is_normalized(d, beta, gamma):
    rule = cone_quadrature(d, beta, gamma, 6)
    assert rule.weights.sum() == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("k", [0, 1, 3])
def test_cone_moments(d, k):
    # int t^k w_{b,g} = B(b+d+k, g+1) / B(b+d, g+1) for the normalized measure
    b, g = 0.5, 1.5
    rule = cone_quadrature(d, b, g, 8)
    xi, t = rule.points()
    expect = beta_fn(b + d + k, g + 1) / beta_fn(b + d, g + 1)
    assert rule.integrate(t ** k) == pytest.approx(expect, rel=1e-12)


def test_cone_rule_kills_nonconstant_harmonics(d):
    rule = cone_quadrature(d, 0, 0, 8)
    xi, t = rule.points()
    x = t[:, None] * xi
    assert abs(rule.integrate(solid_harmonic_eval(d, 2, 1, x))) < 1e-14
