"""Fourier coefficients, projections and near-best approximation on the cone.

Coefficient tables are computed with a product quadrature: harmonic
coefficients on the sphere first, then a Gauss-Jacobi transform in ``t``.
Partial sums are evaluated through the Jacobi recurrence, or materialized as a
:class:`~conicpoly.cone.ModalFunction` when derivatives or off-cone evaluations
``(x, v)`` are needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Chebyshev

from .cone import (BasisIndex, ConeParams, ModalFunction, _basis_table, _ordinary_t, basis_indices,
                   basis_norm, cone_grid, degree_indices, sample_panel)
from .exceptions import IndexRangeError, ParameterRangeError
from .jacobi import renorm_factor
from .quadrature import cone_quadrature
from .sphere import harmonic_dim, harmonic_indices, harmonics_table, sphere_coefficients, sphere_quadrature

__all__ = [
    "CoefficientTable",
    "CutoffFunction",
    "fourier_coeffs",
    "sobolev_fourier_coeffs",
    "rim_coefficients",
    "project",
    "partial_sum",
    "sobolev_project_integral",
    "q_near_best",
    "near_best_table",
    "near_best_function",
    "shifted_near_best_table",
    "shifted_near_best_function",
    "verify_commutation",
    "verify_sobolev_commutation",
    "verify_factor_theorem",
    "error_representation",
    "least_squares_error",
    "error_table",
]


@dataclass(frozen=True)
class CoefficientTable:
    """Coefficients ``fhat`` for every basis index of degree ``<= max_degree``."""

    params: ConeParams
    max_degree: int
    entries: dict = field(repr=False)

    def __getitem__(self, idx):
        return self.entries[BasisIndex(*idx)]

    def degree(self, n):
        """``{index: coefficient}`` restricted to degree ``n``."""
        self._check(n)
        return {idx: self.entries[idx] for idx in degree_indices(self.params.d, n)}

    def _check(self, n):
        if not 0 <= n <= self.max_degree:
            raise IndexRangeError(f"degree {n} outside table range 0..{self.max_degree}")

    def to_function(self, weights=None) -> ModalFunction:
        """``sum_n w_n proj_n f``; ``weights`` maps degree to weight (default all 1)."""
        if weights is None:
            weights = {n: 1.0 for n in range(self.max_degree + 1)}
        coeffs = {}
        for n, w in weights.items():
            if w == 0:
                continue
            self._check(n)
            for idx in degree_indices(self.params.d, n):
                c = self.entries[idx]
                if c != 0:
                    coeffs[idx] = w * c
        return ModalFunction.from_basis(self.params, coeffs)


class CutoffFunction:
    """Admissible cut-off: 1 on [0, 1], 0 on [2, inf), smooth and nonincreasing between.

    The default transition is the smooth step ``u(2-x) / (u(2-x) + u(x-1))`` with
    ``u(y) = exp(-1/y)`` for ``y > 0``.  Any other callable can be supplied.
    """

    def __init__(self, func=None, name="smooth-step"):
        self.func = func
        self.name = name if func is None else getattr(func, "__name__", "custom")

    @staticmethod
    def _u(y):
        y = np.asarray(y, dtype=float)
        return np.where(y > 0, np.exp(-1.0 / np.where(y > 0, y, 1.0)), 0.0)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.func is not None:
            out = np.asarray(self.func(x), dtype=float)
        else:
            a, b = self._u(2 - x), self._u(x - 1)
            mid = a / np.where(a + b > 0, a + b, 1.0)
            out = np.where(x <= 1, 1.0, np.where(x >= 2, 0.0, mid))
        return float(out) if out.ndim == 0 else out

    def weights(self, n, kmax=None, shift=0):
        """``{k: eta((k + shift) / n)}`` for ``k = 0..kmax`` (default ``2n - shift``)."""
        if n < 1:
            raise ValueError("the cut-off weights need n >= 1")
        kmax = 2 * n - shift if kmax is None else kmax
        return {k: float(self((k + shift) / n)) for k in range(max(kmax, -1) + 1)}


# ---------------------------------------------------------------------------
# coefficients


def _default_exactness(f, N):
    if isinstance(f, ModalFunction):
        return N + f.degree + 2
    return 2 * N + 24


def fourier_coeffs(f, params: ConeParams, N, exactness=None) -> CoefficientTable:
    """``fhat = <f, S>_{beta,gamma} / h`` for all indices of degree ``<= N``."""
    if params.is_sobolev:
        raise ParameterRangeError("fourier_coeffs needs ordinary parameters; use sobolev_fourier_coeffs")
    exactness = _default_exactness(f, N) if exactness is None else exactness
    d = params.d
    rule = cone_quadrature(d, params.beta, params.gamma, exactness)
    xi, t = rule.points()
    nt, ns = len(rule.t_nodes), len(rule.sphere_weights)
    values = np.asarray(f(xi, t), dtype=float).reshape(nt, ns)
    hidx, C = sphere_coefficients(values.T, rule.sphere_rule, N)
    pos = {key: i for i, key in enumerate(hidx)}
    tn, tw = rule.t_nodes, rule.t_weights
    entries = {}
    for n in range(N + 1):
        for m in range(n + 1):
            prof = tw * _ordinary_t(params, n, m, tn) * tn ** m
            h = basis_norm(params, n, m)
            for ell in range(1, harmonic_dim(d, m) + 1):
                entries[BasisIndex(n, m, ell)] = float(C[pos[(m, ell)]] @ prof) / h
    return CoefficientTable(params, N, entries)


def rim_coefficients(f, k, d, mmax, exactness=None):
    """Harmonic coefficients of ``xi -> dt^k f(xi, 1)`` for degrees ``<= mmax``.

    Exact for :class:`ModalFunction`; otherwise computed with a sphere rule.
    """
    if isinstance(f, ModalFunction):
        rim = f.dt(k).rim(0) if k else f.rim(0)
        return {key: rim.get(key, 0.0) for key in harmonic_indices(d, mmax)}
    exactness = 2 * mmax + 24 if exactness is None else exactness
    srule = sphere_quadrature(d, exactness)
    vals = np.asarray(f.dt(k).at(srule.nodes, np.ones(len(srule.weights))), dtype=float)
    idx, C = sphere_coefficients(vals, srule, mmax)
    return {key: float(c) for key, c in zip(idx, C)}


def sobolev_fourier_coeffs(f, params: ConeParams, N, exactness=None, method="formula") -> CoefficientTable:
    """Coefficients of ``f`` in the Sobolev basis.

    ``method="formula"`` uses the derivative identity: for ``m <= n - s`` the
    coefficient is the ``(beta+s, 0)`` coefficient of ``dt^s f`` divided by
    ``(-2)^s A_{n-m-s}^{(2m+alpha,0)}``, ``alpha = s+beta+d-1``; for ``m > n-s``
    it is ``(-2)^{m-n}`` times the rim coefficient of ``dt^{n-m} f``.
    ``method="direct"`` divides ``<f, S>_{beta,-s}`` by the square norm.
    """
    if not params.is_sobolev:
        raise ParameterRangeError("sobolev_fourier_coeffs needs Sobolev parameters")
    if method == "direct":
        return _sobolev_direct(f, params, N, exactness)
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")
    s, d = params.s, params.d
    alpha = s + params.beta + d - 1
    shifted = None
    if N >= s:
        shifted = fourier_coeffs(f.dt(s), params.shifted(), N - s, exactness)
    rims = [rim_coefficients(f, k, d, N, exactness) for k in range(min(s, N + 1))]
    entries = {}
    for idx in basis_indices(d, N):
        n, m, ell = idx
        if m <= n - s:
            scale = (-2.0) ** s * renorm_factor(2 * m + alpha, 0.0, n - m - s)
            entries[idx] = shifted[(n - s, m, ell)] / scale
        else:
            entries[idx] = (-2.0) ** (m - n) * rims[n - m][(m, ell)]
    return CoefficientTable(params, N, entries)


def _sobolev_direct(f, params, N, exactness):
    s, d = params.s, params.d
    exactness = _default_exactness(f, N) if exactness is None else exactness
    idx = basis_indices(d, N)
    rule = cone_quadrature(d, params.beta + s, 0.0, exactness)
    xi, t = rule.points()
    B = _basis_table(params, idx, xi, t, dt=s)
    alpha = params.beta + s + d - 1
    ip = (B * rule.weights) @ np.asarray(f.dt(s)(xi, t), dtype=float) / (alpha + 1)
    srule = sphere_quadrature(d, exactness)
    ones = np.ones(len(srule.weights))
    for k in range(s):
        R = _basis_table(params, idx, srule.nodes, ones, dt=k)
        fk = np.asarray(f.dt(k).at(srule.nodes, ones), dtype=float)
        ip = ip + params.lambdas[k] * (R * srule.weights) @ fk / srule.weights.sum()
    entries = {i: float(v) / basis_norm(params, i.n, i.m) for i, v in zip(idx, ip)}
    return CoefficientTable(params, N, entries)


def _coeffs(f, params, N, exactness=None):
    if params.is_sobolev:
        return sobolev_fourier_coeffs(f, params, N, exactness)
    return fourier_coeffs(f, params, N, exactness)


# ---------------------------------------------------------------------------
# projections


def project(table: CoefficientTable, n, xi, t=None, dt=0):
    """``proj_n f`` (or its ``dt``-th t-derivative) at cone points from a coefficient table."""
    coeffs = table.degree(n)
    if t is None:
        xi, t = xi.xi, xi.t
    xi, t = np.asarray(xi, dtype=float), np.asarray(t, dtype=float)
    flat_xi = xi.reshape(-1, table.params.d)
    flat_t = np.broadcast_to(t, xi.shape[:-1]).ravel()
    idx = list(coeffs)
    vals = np.asarray([coeffs[i] for i in idx]) @ _basis_table(table.params, idx, flat_xi, flat_t, dt=dt)
    out = vals.reshape(xi.shape[:-1])
    return float(out) if out.ndim == 0 else out


def partial_sum(table: CoefficientTable, weights, xi, t=None, dt=0):
    """``sum_n weights[n] proj_n f`` evaluated at cone points.

    Basis values come from the Jacobi recurrence, which is more accurate at high
    degree than summing the Chebyshev form.
    """
    out = 0.0
    for n, w in weights.items():
        if w != 0:
            out = out + w * np.asarray(project(table, n, xi, t, dt=dt))
    return out


def sobolev_project_integral(f, params: ConeParams, n, xi, t=None, exactness=None):
    """Sobolev projection ``proj_n^{beta,-s} f`` through its integral representation.

    The sum over ``m < s`` uses sphere projections of ``dt^m f(., 1)`` extended as
    solid harmonics at ``x = t xi``.  The remaining term integrates
    ``(v-t)^{s-1}/(s-1)!`` against ``proj_{n-s}^{beta+s,0}(dt^s f)`` with the
    height slot at ``v`` and the harmonic slot at ``x``, by Gauss-Legendre on [t, 1].
    """
    if not params.is_sobolev:
        raise ParameterRangeError("sobolev_project_integral needs Sobolev parameters")
    s, d = params.s, params.d
    xi = np.asarray(xi, dtype=float)
    t = np.broadcast_to(np.asarray(t, dtype=float), xi.shape[:-1])
    flat_xi, flat_t = xi.reshape(-1, d), t.ravel()
    out = np.zeros(len(flat_t))
    for m in range(min(s - 1, n) + 1):
        j = n - m
        rim = rim_coefficients(f, m, d, j, exactness)
        hidx, Y = harmonics_table(d, j, flat_xi)
        val = sum(rim[key] * Y[i] for i, key in enumerate(hidx) if key[0] == j)
        out += (flat_t - 1) ** m / math.factorial(m) * flat_t ** j * val
    if n >= s:
        shifted = params.shifted()
        table = fourier_coeffs(f.dt(s), shifted, n - s, exactness)
        nodes, wts = np.polynomial.legendre.leggauss(math.ceil((n + s) / 2) + 1)
        half = (1 - flat_t)[:, None] / 2
        v = flat_t[:, None] + half * (nodes + 1)
        kern = half * wts * (v - flat_t[:, None]) ** (s - 1) / math.factorial(s - 1)
        hidx, Y = harmonics_table(d, n - s, flat_xi)
        pos = {key: i for i, key in enumerate(hidx)}
        acc = np.zeros(len(flat_t))
        for m in range(n - s + 1):
            prof = np.sum(kern * _ordinary_t(shifted, n - s, m, v), axis=1) * flat_t ** m
            for ell in range(1, harmonic_dim(d, m) + 1):
                acc += table[(n - s, m, ell)] * prof * Y[pos[(m, ell)]]
        out += (-1) ** s * acc
    out = out.reshape(xi.shape[:-1])
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# near-best operators


def _near_best_weights(n, eta):
    return {0: 1.0} if n == 0 else eta.weights(n)


def near_best_table(f, params: ConeParams, n, eta=None, exactness=None):
    """Coefficient table of degree ``2n`` and the cut-off weights defining ``Q_{n,eta}``."""
    eta = CutoffFunction() if eta is None else eta
    return _coeffs(f, params, 2 * n, exactness), _near_best_weights(n, eta)


def near_best_function(f, params: ConeParams, n, eta=None, exactness=None) -> ModalFunction:
    """``Q_{n,eta} f = sum_{k <= 2n} eta(k/n) proj_k f`` as a polynomial."""
    table, weights = near_best_table(f, params, n, eta, exactness)
    return table.to_function(weights)


def shifted_near_best_table(g, params: ConeParams, n, shift, eta=None, exactness=None):
    """Table and weights of ``sum_j eta((j + shift)/n) proj_j g``, ``j <= 2n - shift``."""
    eta = CutoffFunction() if eta is None else eta
    kmax = 2 * n - shift
    if kmax < 0:
        return None, {}
    return _coeffs(g, params, kmax, exactness), eta.weights(n, kmax=kmax, shift=shift)


def shifted_near_best_function(g, params: ConeParams, n, shift, eta=None, exactness=None) -> ModalFunction:
    """Shifted operator ``sum_j eta((j + shift)/n) proj_j g`` as a polynomial."""
    table, weights = shifted_near_best_table(g, params, n, shift, eta, exactness)
    if table is None:
        return ModalFunction(params.d)
    return table.to_function(weights)


def q_near_best(f, params: ConeParams, n, eta=None, xi=None, t=None, exactness=None, dt=0):
    """``Q_{n,eta} f`` (ordinary or Sobolev mode per ``params``) at cone points."""
    table, weights = near_best_table(f, params, n, eta, exactness)
    return partial_sum(table, weights, xi, t, dt=dt)


# ---------------------------------------------------------------------------
# identity checks


def _panel(params, xi, t):
    if xi is None:
        return sample_panel(params.d)
    return np.asarray(xi, dtype=float), np.asarray(t, dtype=float)


def _sup(v):
    return float(np.max(np.abs(v))) if np.size(v) else 0.0


def verify_commutation(f, params: ConeParams, n, xi=None, t=None, exactness=None):
    """``max |dt proj_n^{beta,gamma} f - proj_{n-1}^{beta+1,gamma+1} dt f|`` on a panel."""
    xi, t = _panel(params, xi, t)
    lhs = project(fourier_coeffs(f, params, n, exactness), n, xi, t, dt=1)
    if n == 0:
        return _sup(lhs)
    rhs = project(fourier_coeffs(f.dt(1), params.shifted(1), n - 1, exactness), n - 1, xi, t)
    return _sup(lhs - rhs)


def verify_sobolev_commutation(f, params: ConeParams, n, xi=None, t=None, exactness=None):
    """``max |dt^s proj_n^{beta,-s} f - proj_{n-s}^{beta+s,0} dt^s f|`` on a panel (``n >= s``)."""
    s = params.s
    if n < s:
        raise ValueError(f"the identity needs n >= s = {s}")
    xi, t = _panel(params, xi, t)
    lhs = project(sobolev_fourier_coeffs(f, params, n, exactness), n, xi, t, dt=s)
    rhs = project(fourier_coeffs(f.dt(s), params.shifted(), n - s, exactness), n - s, xi, t)
    return _sup(lhs - rhs)


def verify_factor_theorem(g, params: ConeParams, n, xi=None, t=None, exactness=None):
    """``max |proj_n^{beta,-s}[(1-t)^s g] - (1-t)^s proj_{n-s}^{beta,s} g|`` on a panel."""
    s = params.s
    xi, t = _panel(params, xi, t)
    factor = Chebyshev([1.0], domain=[0.0, 1.0]) - Chebyshev.identity(domain=[0.0, 1.0])
    f = g * factor ** s
    lhs = project(sobolev_fourier_coeffs(f, params, n, exactness), n, xi, t)
    if n < s:
        return _sup(lhs)
    ordinary = ConeParams.ordinary(params.d, params.beta, float(s))
    rhs = (1 - t) ** s * project(fourier_coeffs(g, ordinary, n - s, exactness), n - s, xi, t)
    return _sup(lhs - rhs)


def error_representation(f, params: ConeParams, n, eta=None, xi=None, t=None, exactness=None, nodes=None):
    """Right-hand side of the Taylor-remainder form of ``f - Q_{n,eta} f`` (Sobolev mode).

    ``sum_{m<s} (t-1)^m/m! [dt^m f - Qsph_m dt^m f](x, 1)
    + (-1)^s int_t^1 (v-t)^{s-1}/(s-1)! [dt^s f - Qtilde dt^s f](x, v) dv``
    with ``x = t xi`` held fixed; ``Qsph_m`` weights the sphere projection of
    degree ``j`` by ``eta((j+m)/n)`` and ``Qtilde`` weights ``proj_j^{beta+s,0}``
    by ``eta((j+s)/n)``.
    """
    s, d = params.s, params.d
    eta = CutoffFunction() if eta is None else eta
    xi, t = _panel(params, xi, t)
    x = t[:, None] * xi
    out = np.zeros(len(t))
    for m in range(s):
        jmax = 2 * n - m
        rim = rim_coefficients(f, m, d, jmax, exactness)
        w = eta.weights(n, kmax=jmax, shift=m)
        hidx, Y = harmonics_table(d, jmax, xi)
        approx = sum(w[key[0]] * rim[key] * t ** key[0] * Y[i] for i, key in enumerate(hidx))
        exact = np.asarray(f.dt(m).at(x, np.ones_like(t)), dtype=float)
        out += (t - 1) ** m / math.factorial(m) * (exact - approx)
    g = f.dt(s)
    qg = shifted_near_best_function(g, params.shifted(), n, s, eta, exactness)
    deg = g.degree if isinstance(g, ModalFunction) else 2 * n + 24
    q = nodes or (math.ceil((max(deg, 2 * n) + s) / 2) + 1)
    gl, gw = np.polynomial.legendre.leggauss(q)
    acc = np.zeros(len(t))
    for node, weight in zip(gl, gw):
        v = t + (1 - t) * (node + 1) / 2
        integrand = np.asarray(g.at(x, v), dtype=float) - np.asarray(qg.at(x, v), dtype=float)
        acc += weight * (1 - t) / 2 * (v - t) ** (s - 1) / math.factorial(s - 1) * integrand
    return out + (-1) ** s * acc


def least_squares_error(f, n, d, xi, t, beta=0.0, gamma=0.0):
    """Sup-grid error of the grid least-squares fit of ``f`` by polynomials of degree ``<= n``.

    An upper bound for the best-approximation error on the grid.
    """
    basis = ConeParams.ordinary(d, beta, gamma)
    A = _basis_table(basis, basis_indices(d, n), xi, t).T
    y = np.asarray(f(xi, t), dtype=float)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return _sup(A @ coef - y)


def error_table(f, params: ConeParams, n_list, eta=None, grid=None, orders=None, exactness=None,
                best_fit=True):
    """Rows of approximation errors of ``Q_{n,eta} f`` for each ``n`` in ``n_list``.

    Each row holds ``sup_err`` (grid maximum of ``|f - Qf|``), ``l2_err`` (weighted
    L2 error in the ordinary norm, or the Sobolev norm in Sobolev mode),
    ``sup_err_dt{k}`` for the requested derivative orders, ``identity_residual``
    (``dt^k Q f`` against the shifted operator applied to ``dt^k f``, with
    ``k = s`` in Sobolev mode and the largest requested order otherwise) and,
    if ``best_fit``, the least-squares reference ``ls_err``.
    """
    eta = CutoffFunction() if eta is None else eta
    d = params.d
    xi, t = cone_grid(d) if grid is None else grid
    if orders is None:
        orders = range(1, params.s + 1) if params.is_sobolev else ()
    fvals = np.asarray(f(xi, t), dtype=float)
    rows = []
    for n in n_list:
        table, weights = near_best_table(f, params, n, eta, exactness)
        q = table.to_function(weights)
        row = {"n": int(n), "sup_err": _sup(fvals - partial_sum(table, weights, xi, t))}
        row["l2_err"] = _l2_error(f, q, params, n, exactness)
        for k in orders:
            row[f"sup_err_dt{k}"] = _sup(np.asarray(f.dt(k)(xi, t)) - partial_sum(table, weights, xi, t, dt=k))
        k = params.s if params.is_sobolev else (max(orders) if len(orders) else 0)
        if k:
            shifted = params.shifted() if params.is_sobolev else params.shifted(k)
            st, sw = shifted_near_best_table(f.dt(k), shifted, n, k, eta, exactness)
            row["identity_residual"] = _sup(partial_sum(table, weights, xi, t, dt=k)
                                            - partial_sum(st, sw, xi, t))
        if best_fit:
            row["ls_err"] = least_squares_error(f, n, d, xi, t)
        rows.append(row)
    return rows


def _l2_error(f, q, params, n, exactness):
    e = exactness if exactness is not None else 4 * n + 24
    if params.is_sobolev:
        s, d = params.s, params.d
        rule = cone_quadrature(d, params.beta + s, 0.0, e)
        xi, t = rule.points()
        diff = np.asarray(f.dt(s)(xi, t)) - np.asarray(q.dt(s)(xi, t))
        total = rule.integrate(diff * diff) / (params.beta + s + d)
        srule = sphere_quadrature(d, e)
        ones = np.ones(len(srule.weights))
        for k in range(s):
            rd = np.asarray(f.dt(k).at(srule.nodes, ones)) - np.asarray(q.dt(k).at(srule.nodes, ones))
            total += params.lambdas[k] * srule.integrate(rd * rd) / srule.weights.sum()
        return float(math.sqrt(max(total, 0.0)))
    rule = cone_quadrature(params.d, params.beta, params.gamma, e)
    xi, t = rule.points()
    diff = np.asarray(f(xi, t)) - np.asarray(q(xi, t))
    return float(math.sqrt(max(rule.integrate(diff * diff), 0.0)))
