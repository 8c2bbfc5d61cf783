import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.polynomial import Chebyshev

from conicpoly.cone import (ConeFunction, ConeParams, ModalFunction, basis_function, basis_indices, basis_norm,
                            cone_grid, ordinary_ip, random_polynomial, sample_panel)
from conicpoly.exceptions import IndexRangeError, ParameterRangeError
from conicpoly.projection import (CoefficientTable, CutoffFunction, error_representation, error_table,
                                  fourier_coeffs, near_best_function, partial_sum, project, q_near_best,
                                  rim_coefficients, sobolev_fourier_coeffs, sobolev_project_integral,
                                  verify_commutation, verify_factor_theorem, verify_sobolev_commutation)

ONE_MINUS_T = Chebyshev([0.5, -0.5], domain=[0, 1])


def nonzero(table, tol=1e-10):
    return {idx for idx, v in table.entries.items() if abs(v) > tol}


# -- cut-off ----------------------------------------------------------------

@given(x=st.floats(0, 4), y=st.floats(0, 4))
def test_cutoff_admissible(x, y):
    eta = CutoffFunction()
    assert 0 <= eta(x) <= 1
    if x <= 1:
        assert eta(x) == 1
    if x >= 2:
        assert eta(x) == 0
    if x <= y:
        assert eta(x) >= eta(y) - 1e-15


def test_cutoff_is_smooth_at_the_ends():
    eta = CutoffFunction()
    h = 1e-3
    assert abs(eta(1 + h) - 1) < 1e-100
    assert eta(2 - h) < 1e-100


def test_cutoff_weights():
    w = CutoffFunction().weights(4)
    assert list(w) == list(range(9))
    assert all(w[k] == 1 for k in range(5)) and w[8] == 0
    with pytest.raises(ValueError):
        CutoffFunction().weights(0)


# -- ordinary coefficients ------------------------------------------------------

def test_basis_element_gives_indicator(d):
    p = ConeParams.ordinary(d, 0.5, 1.0)
    for idx in [(0, 0, 1), (3, 1, 2), (4, 4, 1)]:
        T = fourier_coeffs(basis_function(p, idx), p, 5)
        assert nonzero(T) == {idx}
        assert T[idx] == pytest.approx(1.0)


def test_constant_function(d):
    p = ConeParams.ordinary(d, 0, 0)
    T = fourier_coeffs(ModalFunction.harmonic(d, 0, 1), p, 4)
    assert nonzero(T) == {(0, 0, 1)}


def test_height_function_d2():
    # t = 2/3 - (1/3) P_1^{(1,0)}(1-2t) for d = 2, beta = gamma = 0
    p = ConeParams.ordinary(2, 0, 0)
    f = ConeFunction(2, lambda x, t: t + 0 * x[..., 0])
    T = fourier_coeffs(f, p, 4, exactness=10)
    assert nonzero(T) == {(0, 0, 1), (1, 0, 1)}
    assert T[(0, 0, 1)] == pytest.approx(2 / 3)
    assert T[(1, 0, 1)] == pytest.approx(-1 / 3)


@pytest.mark.parametrize("params", [(0, 0), (1, 0.5), (-0.5, 2)], ids=str)
def test_parseval(d, params):
    p = ConeParams.ordinary(d, *params)
    f = random_polynomial(d, 6, seed=11)
    T = fourier_coeffs(f, p, 6)
    total = sum(v * v * basis_norm(p, i.n, i.m) for i, v in T.entries.items())
    assert total == pytest.approx(ordinary_ip(f, f, p, 14), rel=1e-10)


def test_completeness_and_idempotence(d):
    p = ConeParams.ordinary(d, 1, 0.5)
    f = random_polynomial(d, 5, seed=4)
    xi, t = sample_panel(d)
    T = fourier_coeffs(f, p, 5)
    total = sum(project(T, n, xi, t) for n in range(6))
    np.testing.assert_allclose(total, f(xi, t), atol=1e-10)
    slice3 = T.to_function({3: 1.0})
    T3 = fourier_coeffs(slice3, p, 5)
    for idx, v in T3.entries.items():
        assert v == pytest.approx(T[idx] if idx.n == 3 else 0.0, abs=1e-10)


def test_projection_of_other_degree_vanishes(d):
    p = ConeParams.ordinary(d, 0, 0)
    T = fourier_coeffs(basis_function(p, (4, 2, 1)), p, 5)
    xi, t = sample_panel(d)
    assert np.max(np.abs(project(T, 3, xi, t))) < 1e-12


def test_project_range_and_mode_guards(d):
    p = ConeParams.ordinary(d, 0, 0)
    T = fourier_coeffs(ModalFunction.harmonic(d, 0, 1), p, 2)
    with pytest.raises(IndexRangeError):
        project(T, 3, np.eye(d)[:1], np.array([0.5]))
    with pytest.raises(ParameterRangeError):
        fourier_coeffs(ModalFunction.harmonic(d, 0, 1), ConeParams.sobolev(d, 0, 1), 2)
    with pytest.raises(ParameterRangeError):
        sobolev_fourier_coeffs(ModalFunction.harmonic(d, 0, 1), p, 2)


# -- Sobolev coefficients -------------------------------------------------------

@pytest.mark.parametrize("s", [1, 2])
def test_sobolev_indicator(d, s):
    p = ConeParams.sobolev(d, 0.0, s)
    for idx in [(0, 0, 1), (3, 2, 1), (4, 1, 2), (5, 5, 1)]:
        T = sobolev_fourier_coeffs(basis_function(p, idx), p, 5)
        assert nonzero(T, 1e-9) == {idx}
        assert T[idx] == pytest.approx(1.0)


def test_rotationally_symmetric_input(d):
    p = ConeParams.sobolev(d, 0.0, 2)
    f = ModalFunction.harmonic(d, 0, 1, ONE_MINUS_T ** 2)
    T = sobolev_fourier_coeffs(f, p, 5)
    assert all(idx.m == 0 for idx in nonzero(T))


@pytest.mark.parametrize("beta", [0.0, 1.0])
def test_two_coefficient_paths(d, beta):
    p = ConeParams.sobolev(d, beta, 2)
    for seed in range(5):
        f = random_polynomial(d, 5, seed=seed)
        A = sobolev_fourier_coeffs(f, p, 5)
        B = sobolev_fourier_coeffs(f, p, 5, method="direct")
        scale = max(1.0, max(abs(v) for v in A.entries.values()))
        assert max(abs(A[i] - B[i]) for i in A.entries) / scale < 1e-9


@pytest.mark.parametrize("s", [1, 2])
def test_rim_coefficients_vanish_for_factored_input(d, s):
    p = ConeParams.sobolev(d, 0.0, s)
    f = random_polynomial(d, 3, seed=5) * ONE_MINUS_T ** s
    T = sobolev_fourier_coeffs(f, p, 5)
    for idx, v in T.entries.items():
        if idx.m > idx.n - s:
            assert abs(v) < 1e-12


def test_rim_coefficients_quadrature_matches_exact(d):
    f = random_polynomial(d, 4, seed=9)
    g = ConeFunction(d, lambda x, t: f.at(x, t), [lambda x, t, k=k: f.dt(k).at(x, t) for k in (1, 2)])
    for k in (0, 1, 2):
        exact = rim_coefficients(f, k, d, 5)
        approx = rim_coefficients(g, k, d, 5, exactness=12)
        for key in exact:
            assert approx[key] == pytest.approx(exact[key], abs=1e-11)


# -- integral representation -------------------------------------------------------

@pytest.mark.parametrize("s,beta", [(1, 0.0), (2, 0.0), (2, 1.0)])
def test_integral_representation(d, s, beta):
    p = ConeParams.sobolev(d, beta, s)
    xi, t = sample_panel(d, 20)
    f = random_polynomial(d, 5, seed=3)
    T = sobolev_fourier_coeffs(f, p, 6)
    for n in range(7):
        np.testing.assert_allclose(sobolev_project_integral(f, p, n, xi, t), project(T, n, xi, t), atol=1e-9)


def test_integral_representation_trivial_cases(d):
    p = ConeParams.sobolev(d, 0.0, 2)
    xi, t = sample_panel(d, 5)
    one = ModalFunction.harmonic(d, 0, 1)
    np.testing.assert_allclose(sobolev_project_integral(one, p, 0, xi, t), 1.0)
    # with f and dt f zero on the rim only the integral term survives
    f = random_polynomial(d, 2, seed=2) * ONE_MINUS_T ** 2
    for n in range(2, 5):
        shifted = fourier_coeffs(f.dt(2), p.shifted(), n - 2)
        assert shifted.max_degree == n - 2
        np.testing.assert_allclose(sobolev_project_integral(f, p, n, xi, t),
                                   project(sobolev_fourier_coeffs(f, p, n), n, xi, t), atol=1e-10)


# -- commutation and the factor theorem --------------------------------------------------

def test_commutation_basis_elements(d):
    p = ConeParams.ordinary(d, 0.5, 1.5)
    for idx in [(3, 1, 1), (4, 0, 1), (5, 2, 2)]:
        assert verify_commutation(basis_function(p, idx), p, idx[0]) < 1e-10


@pytest.mark.parametrize("params", [(0, 0), (1, 0.5)], ids=str)
def test_commutation_random(d, params):
    p = ConeParams.ordinary(d, *params)
    for seed in range(3):
        f = random_polynomial(d, 5, seed=seed)
        assert verify_commutation(f, p, 0) < 1e-12
        for n in range(1, 6):
            assert verify_commutation(f, p, n) < 1e-9


@pytest.mark.parametrize("s", [1, 2])
def test_sobolev_commutation(d, s):
    p = ConeParams.sobolev(d, 0.0, s)
    assert verify_sobolev_commutation(ModalFunction.harmonic(d, 0, 1), p, s) < 1e-12
    assert verify_sobolev_commutation(basis_function(p, (4, 1, 1)), p, 4) < 1e-9
    for seed in range(3):
        f = random_polynomial(d, 5, seed=seed)
        for n in range(s, 6):
            assert verify_sobolev_commutation(f, p, n) < 1e-9
    with pytest.raises(ValueError):
        verify_sobolev_commutation(f, p, s - 1)


@pytest.mark.parametrize("s", [1, 2])
def test_factor_theorem(d, s):
    p = ConeParams.sobolev(d, 0.0, s)
    assert verify_factor_theorem(ModalFunction(d), p, 3) == 0.0
    single = basis_function(ConeParams.ordinary(d, 0.0, float(s)), (2, 1, 1))
    assert verify_factor_theorem(single, p, 2 + s) < 1e-10
    for seed in range(3):
        g = random_polynomial(d, 4, seed=seed)
        for n in range(7):
            assert verify_factor_theorem(g, p, n) < 1e-10


# -- near-best operators ---------------------------------------------------------------

@pytest.mark.parametrize("mode", ["ordinary", "sobolev"])
def test_near_best_reproduces_polynomials(d, mode):
    p = ConeParams.ordinary(d, 0, 0) if mode == "ordinary" else ConeParams.sobolev(d, 0.0, 2)
    xi, t = sample_panel(d)
    for n in (1, 3, 5):
        f = random_polynomial(d, n, seed=n)
        np.testing.assert_allclose(q_near_best(f, p, n, None, xi, t), f(xi, t), atol=1e-10)


def test_flat_cutoff_gives_partial_sum(d):
    p = ConeParams.ordinary(d, 0, 0)
    flat = CutoffFunction(lambda x: np.ones_like(x))
    f = random_polynomial(d, 7, seed=1)
    xi, t = sample_panel(d)
    T = fourier_coeffs(f, p, 6)
    np.testing.assert_allclose(q_near_best(f, p, 3, flat, xi, t),
                               partial_sum(T, {n: 1.0 for n in range(7)}, xi, t), atol=1e-10)


@pytest.mark.parametrize("s", [1, 2])
def test_error_representation(d, s):
    p = ConeParams.sobolev(d, 0.5, s)
    xi, t = sample_panel(d, 15)
    f = random_polynomial(d, 7, seed=s)
    for n in (2, 3):
        q = near_best_function(f, p, n)
        rhs = error_representation(f, p, n, xi=xi, t=t)
        np.testing.assert_allclose(f(xi, t) - q(xi, t), rhs, atol=1e-9)


def test_error_table_on_polynomial_is_zero():
    p = ConeParams.ordinary(2, 0, 0)
    f = random_polynomial(2, 3, seed=0)
    for row in error_table(f, p, [3, 4], orders=[1, 2]):
        assert row["sup_err"] < 1e-10 and row["l2_err"] < 1e-10
        assert row["sup_err_dt1"] < 1e-9 and row["sup_err_dt2"] < 1e-8
        assert row["identity_residual"] < 1e-8


def test_error_table_sobolev_identity():
    p = ConeParams.sobolev(2, 0.0, 2)
    f = ConeFunction(2, lambda x, t: np.exp(t) * x[..., 0], [lambda x, t: np.exp(t) * x[..., 0]] * 2)
    rows = error_table(f, p, [2, 4, 6])
    assert all(r["identity_residual"] < 1e-9 for r in rows)
    assert rows[-1]["sup_err"] < rows[0]["sup_err"]


def test_error_table_against_best_fit():
    # the near-best error stays within a fixed factor of the grid least-squares fit
    p = ConeParams.ordinary(2, 0, 0)
    f = ConeFunction(2, lambda x, t: np.cos(3 * t) * (1 + x[..., 1]), [])
    rows = error_table(f, p, [3, 4, 5, 6], grid=cone_grid(2, 21, 24))
    ratios = [r["sup_err"] / r["ls_err"] for r in rows]
    assert max(ratios) < 50
    assert rows[-1]["sup_err"] < rows[0]["sup_err"]


def test_table_to_function_round_trip(d):
    p = ConeParams.sobolev(d, 1.0, 1)
    f = random_polynomial(d, 4, seed=8)
    T = sobolev_fourier_coeffs(f, p, 4)
    assert isinstance(T, CoefficientTable)
    xi, t = sample_panel(d)
    np.testing.assert_allclose(T.to_function()(xi, t), f(xi, t), atol=1e-10)
