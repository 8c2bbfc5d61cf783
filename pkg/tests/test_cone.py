import math

import numpy as np
import pytest
from numpy.polynomial import Chebyshev

from conicpoly.cone import (BasisIndex, ConeFunction, ConeParams, ConePoint, ModalFunction, basis_eval,
                            basis_function, basis_indices, basis_norm, cone_dim, degree_indices, gram_matrix,
                            ordinary_ip, random_polynomial, sample_panel, sobolev_basis_dt, sobolev_basis_eval,
                            sobolev_ip_cone, sobolev_tfactor)
from conicpoly.exceptions import IndexRangeError, OffConeError, ParameterRangeError
from conicpoly.jacobi import jacobi_eval
from conicpoly.sphere import harmonic_eval


@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_dimension_counts(d, n):
    assert len(degree_indices(d, n)) == cone_dim(d, n)
    assert cone_dim(d, n) == math.comb(n + d - 1, n) + (math.comb(n + d - 2, n - 1) if n else 0)


@pytest.mark.parametrize("params", [(0, 0), (1, 0.5), (-0.5, 2)], ids=str)
def test_ordinary_gram(d, params):
    p = ConeParams.ordinary(d, *params)
    idx, G = gram_matrix(p, 5)
    norms = np.array([basis_norm(p, n, m) for n, m, _ in idx])
    np.testing.assert_allclose(np.diag(G), norms, rtol=1e-12)
    np.testing.assert_allclose(G - np.diag(np.diag(G)), 0, atol=1e-12)


@pytest.mark.parametrize("s,beta", [(1, 0), (2, 1), (3, 0)])
def test_sobolev_gram(d, s, beta):
    p = ConeParams.sobolev(d, beta, s, lambdas=tuple(1.0 + k for k in range(s)))
    idx, G = gram_matrix(p, 5)
    norms = np.array([basis_norm(p, n, m) for n, m, _ in idx])
    np.testing.assert_allclose(np.diag(G), norms, rtol=1e-11)
    np.testing.assert_allclose(G - np.diag(np.diag(G)), 0, atol=1e-11)


def test_gram_against_pointwise_inner_product():
    p = ConeParams.ordinary(3, 0.5, 1.0)
    f, g = basis_function(p, (3, 1, 2)), basis_function(p, (3, 1, 2))
    assert ordinary_ip(f, g, p, 8) == pytest.approx(basis_norm(p, 3, 1), rel=1e-12)
    q = ConeParams.sobolev(2, 0.0, 2)
    h = basis_function(q, (4, 3, 1))
    assert sobolev_ip_cone(h, h, q, 10) == pytest.approx(basis_norm(q, 4, 3), rel=1e-12)


def test_basis_value_by_definition(panel, d):
    xi, t = panel
    p = ConeParams.ordinary(d, 0.5, 1.5)
    n, m, ell = 5, 2, 1
    expect = jacobi_eval(2 * m + 0.5 + d - 1, 1.5, n - m, 1 - 2 * t) * t ** m * harmonic_eval(d, m, ell, xi)
    np.testing.assert_allclose(basis_eval(p, (n, m, ell), xi, t), expect, atol=1e-13)


def test_ordinary_derivative_ladder(panel, d):
    xi, t = panel
    p = ConeParams.ordinary(d, 0.0, 0.5)
    for idx in [(4, 1, 1), (6, 2, 2), (3, 3, 1)]:
        f = basis_function(p, idx)
        for k in (1, 2):
            np.testing.assert_allclose(basis_eval(p, idx, xi, t, dt=k), f.dt(k)(xi, t), atol=1e-11)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_sobolev_derivative_closed_forms(d, s):
    p = ConeParams.sobolev(d, 0.5, s)
    xi, t = sample_panel(d, 12)
    ones = np.ones(len(t))
    for idx in basis_indices(d, 5):
        np.testing.assert_allclose(sobolev_basis_dt(p, idx, xi, t, s), sobolev_basis_eval(p, idx, xi, t, dt=s),
                                   atol=1e-10)
        for k in range(1, s):
            np.testing.assert_allclose(sobolev_basis_dt(p, idx, xi, ones, k),
                                       sobolev_basis_eval(p, idx, xi, ones, dt=k), atol=1e-10)


def test_sobolev_tfactor_low_degree():
    # below s the t-factor is (1-t)^{n-m}/(n-m)! up to the reflection u = 1-2t: (2(1-t))^j / j!
    t = np.linspace(0, 1, 9)
    np.testing.assert_allclose(sobolev_tfactor(2, 0.0, 3, 2, 0)(t), (2 * (1 - t)) ** 2 / 2, atol=1e-13)


def test_modal_algebra(panel, d):
    xi, t = panel
    f = random_polynomial(d, 4, seed=1)
    g = random_polynomial(d, 3, seed=2)
    np.testing.assert_allclose((f + g)(xi, t), f(xi, t) + g(xi, t), atol=1e-12)
    np.testing.assert_allclose((f - 2 * g)(xi, t), f(xi, t) - 2 * g(xi, t), atol=1e-12)
    one_minus = Chebyshev([0.5, -0.5], domain=[0, 1])
    np.testing.assert_allclose((f * one_minus)(xi, t), (1 - t) * f(xi, t), atol=1e-12)
    assert f.degree == 4 and g.degree == 3


def test_modal_derivative_holds_x_fixed(d):
    # f = t * Y(x) with Y of degree 1: dt f = Y(x) = t Y(xi)
    f = ModalFunction.harmonic(d, 1, 1, Chebyshev.identity(domain=[0, 1]))
    xi = np.eye(d)[:1]
    t = np.array([0.4])
    np.testing.assert_allclose(f.dt()(xi, t), 0.4 * harmonic_eval(d, 1, 1, xi))


def test_off_cone_evaluation(d):
    f = ModalFunction.harmonic(d, 2, 1, Chebyshev([1.0, 1.0], domain=[0, 1]))
    x = np.full((1, d), 0.2)
    r = np.linalg.norm(x)
    val = f.at(x, np.array([0.9]))
    assert val == pytest.approx(f.terms[(2, 1)](0.9) * r ** 2 * harmonic_eval(d, 2, 1, x[0] / r))


def test_cone_function_derivatives():
    f = ConeFunction(2, lambda x, t: np.exp(t) * x[..., 0], [lambda x, t: np.exp(t) * x[..., 0]])
    xi = np.array([[1.0, 0.0]])
    assert f.dt()(xi, np.array([0.5])) == pytest.approx(0.5 * math.exp(0.5))
    with pytest.raises(ValueError):
        f.dt(2)


def test_random_polynomial_is_seeded(d):
    a, b = random_polynomial(d, 3, seed=7), random_polynomial(d, 3, seed=7)
    xi = np.eye(d)
    t = np.full(d, 0.3)
    np.testing.assert_array_equal(a(xi, t), b(xi, t))
    assert a.degree == 3


def test_cone_point():
    pt = ConePoint(np.array([0.6, 0.8]), 0.5)
    np.testing.assert_allclose(pt.x, [0.3, 0.4])
    with pytest.raises(ValueError):
        ConePoint(np.array([1.0, 1.0]), 0.5)
    with pytest.raises(ValueError):
        ConePoint(np.array([1.0, 0.0]), 1.5)
    p = ConeParams.ordinary(2, 0, 0)
    assert basis_eval(p, (2, 0, 1), pt) == pytest.approx(jacobi_eval(1, 0, 2, 0.0))


def test_parameter_guards():
    with pytest.raises(ParameterRangeError):
        ConeParams.ordinary(2, -2.0, 0.0)
    with pytest.raises(ParameterRangeError):
        ConeParams.ordinary(3, 0.0, -1.0)
    with pytest.raises(ParameterRangeError):
        ConeParams.sobolev(2, -4.0, 2)
    with pytest.raises(ParameterRangeError):
        ConeParams.sobolev(2, 0.0, 2, lambdas=(1.0,))
    with pytest.raises(ParameterRangeError):
        ConeParams.sobolev(2, 0.0, 1.5)
    with pytest.raises(IndexRangeError):
        basis_eval(ConeParams.ordinary(2, 0, 0), (2, 3, 1), np.array([1.0, 0.0]), 0.5)
    with pytest.raises(IndexRangeError):
        basis_eval(ConeParams.ordinary(2, 0, 0), (2, 1, 3), np.array([1.0, 0.0]), 0.5)


def test_describe_and_shift():
    p = ConeParams.sobolev(3, 1.0, 2, lambdas=(1.0, 2.0))
    assert p.describe() == "d=3;beta=1;s=2;lambdas=1,2"
    assert p.shifted() == ConeParams.ordinary(3, 3.0, 0.0)
    q = ConeParams.ordinary(2, 0.5, 0.5)
    assert q.shifted(2) == ConeParams.ordinary(2, 2.5, 2.5)
