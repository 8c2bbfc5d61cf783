"""Orthogonal and Sobolev-orthogonal bases on the conic surface ``{(x, t): |x| = t, 0 <= t <= 1}``.

A point is parametrized as ``(x, t) = (t xi, t)`` with ``xi`` on ``S^{d-1}``.
Basis elements have the form ``p(t) Y_ell^m(x)`` where ``Y`` is a solid harmonic,
so ``Y(x) = t^m Y(xi)`` on the cone.

The derivative ``dt`` used throughout is the partial derivative in the last
coordinate with ``x`` held fixed: it acts on ``p`` only and leaves ``Y(x)`` alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from numpy.polynomial import Chebyshev

from .exceptions import IndexRangeError, ParameterRangeError
from .jacobi import jacobi_constants, jacobi_eval, jacobi_series, pochhammer, reflect_to_unit, renorm_factor
from .jacobi_sobolev import J_series
from .quadrature import cone_quadrature
from .sphere import (harmonic_dim, harmonic_eval, harmonic_indices, harmonics_table, omega,
                     sphere_quadrature)

__all__ = [
    "ConeParams",
    "BasisIndex",
    "ConePoint",
    "ModalFunction",
    "ConeFunction",
    "cone_dim",
    "degree_indices",
    "basis_indices",
    "ordinary_tfactor",
    "sobolev_tfactor",
    "basis_eval",
    "basis_norm",
    "sobolev_basis_eval",
    "sobolev_basis_norm",
    "sobolev_basis_dt",
    "basis_function",
    "ordinary_ip",
    "sobolev_ip_cone",
    "gram_matrix",
    "sphere_panel",
    "sample_panel",
    "cone_grid",
    "random_polynomial",
]


@dataclass(frozen=True)
class ConeParams:
    """Either an ordinary weight ``t^beta (1-t)^gamma`` or the Sobolev form of order ``s``.

    Use :meth:`ordinary` or :meth:`sobolev` to construct.
    """

    d: int
    beta: float
    gamma: float | None = None
    s: int | None = None
    lambdas: tuple | None = None

    @classmethod
    def ordinary(cls, d, beta, gamma, check=True):
        if check and beta <= -d:
            raise ParameterRangeError(f"ordinary mode needs beta > -d = {-d}, got {beta}")
        if check and gamma <= -1:
            raise ParameterRangeError(f"ordinary mode needs gamma > -1, got {gamma}")
        return cls(d=d, beta=float(beta), gamma=float(gamma))

    @classmethod
    def sobolev(cls, d, beta, s, lambdas=None):
        if s < 1 or int(s) != s:
            raise ParameterRangeError(f"s must be a positive integer, got {s}")
        s = int(s)
        if beta <= -d - s:
            raise ParameterRangeError(f"Sobolev mode needs beta > -d-s = {-d - s}, got {beta}")
        lambdas = (1.0,) * s if lambdas is None else tuple(float(v) for v in lambdas)
        if len(lambdas) != s:
            raise ParameterRangeError(f"need exactly s={s} rim weights, got {len(lambdas)}")
        if any(v <= 0 for v in lambdas):
            raise ParameterRangeError("rim weights must be positive")
        return cls(d=d, beta=float(beta), s=s, lambdas=lambdas)

    @property
    def is_sobolev(self):
        return self.s is not None

    def shifted(self, k=1):
        """Ordinary parameters ``(beta + k, gamma + k)``; Sobolev maps to ``(beta + s, 0)``."""
        if self.is_sobolev:
            return ConeParams.ordinary(self.d, self.beta + self.s, 0.0)
        return ConeParams.ordinary(self.d, self.beta + k, self.gamma + k, check=False)

    def describe(self):
        if self.is_sobolev:
            lam = ",".join(f"{v:g}" for v in self.lambdas)
            return f"d={self.d};beta={self.beta:g};s={self.s};lambdas={lam}"
        return f"d={self.d};beta={self.beta:g};gamma={self.gamma:g}"


class BasisIndex(NamedTuple):
    n: int
    m: int
    ell: int


@dataclass(frozen=True)
class ConePoint:
    xi: np.ndarray
    t: float

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=float)
        if abs(np.linalg.norm(xi) - 1) > 1e-12:
            raise ValueError("xi must be a unit vector")
        if not 0 <= self.t <= 1:
            raise ValueError("t must lie in [0, 1]")
        object.__setattr__(self, "xi", xi)

    @property
    def x(self):
        return self.t * self.xi


def cone_dim(d, n):
    """Dimension of the degree-n orthogonal space."""
    if n == 0:
        return 1
    return math.comb(n + d - 1, n) + math.comb(n + d - 2, n - 1)


def degree_indices(d, n):
    return [BasisIndex(n, m, ell) for m in range(n + 1) for ell in range(1, harmonic_dim(d, m) + 1)]


def basis_indices(d, nmax):
    return [idx for n in range(nmax + 1) for idx in degree_indices(d, n)]


def _check_index(d, idx):
    n, m, ell = idx
    if not (0 <= m <= n) or not 1 <= ell <= harmonic_dim(d, m):
        raise IndexRangeError(f"basis index {tuple(idx)} out of range for d={d}")


def _points(xi, t):
    if isinstance(xi, ConePoint):
        return xi.xi, np.asarray(xi.t, dtype=float)
    return np.asarray(xi, dtype=float), np.asarray(t, dtype=float)


def _scalar(v):
    return float(v) if np.ndim(v) == 0 else v


# ---------------------------------------------------------------------------
# t-factors


@lru_cache(maxsize=4096)
def ordinary_tfactor(d, beta, gamma, n, m) -> Chebyshev:
    """``P_{n-m}^{(2m+beta+d-1, gamma)}(1-2t)`` as a Chebyshev series in ``t`` on [0, 1]."""
    return jacobi_series(2 * m + beta + d - 1, gamma, n - m, domain=(0, 1))


@lru_cache(maxsize=4096)
def sobolev_tfactor(d, beta, s, n, m) -> Chebyshev:
    """``J_{n-m}^{(2m+beta+d-1, -s)}(1-2t)`` as a Chebyshev series in ``t`` on [0, 1]."""
    return reflect_to_unit(J_series(2 * m + beta + d - 1 + s, 0.0, s, n - m))


def _ordinary_t(params, n, m, t, k=0):
    """k-th t-derivative of the Jacobi factor through the derivative ladder."""
    a = 2 * m + params.beta + params.d - 1
    g = params.gamma
    j = n - m
    if k > j:
        return np.zeros_like(np.asarray(t, dtype=float))
    scale = (-1) ** k * pochhammer(j + a + g + 1, k)
    return scale * jacobi_eval(a + k, g + k, j - k, 1 - 2 * np.asarray(t, dtype=float))


def _tfactor(params, n, m):
    if params.is_sobolev:
        return sobolev_tfactor(params.d, params.beta, params.s, n, m)
    return ordinary_tfactor(params.d, params.beta, params.gamma, n, m)


# ---------------------------------------------------------------------------
# function representations


class ModalFunction:
    """Polynomial ``f(x, t) = sum_{m, ell} p_{m,ell}(t) Y_ell^m(x)`` on the cone.

    Each ``p`` is a Chebyshev series on ``[0, 1]``.  This is the canonical
    representation of a polynomial restricted to the cone, and ``dt``
    differentiates the ``p`` factors.
    """

    def __init__(self, d, terms=None):
        self.d = d
        self.terms = {}
        for key, p in (terms or {}).items():
            self.terms[tuple(key)] = _as_cheb(p)

    # -- construction -------------------------------------------------
    @classmethod
    def from_basis(cls, params: ConeParams, coeffs):
        """Linear combination ``sum c * S_{m,ell}^n`` of basis elements in ``params``."""
        out = cls(params.d)
        for idx, c in coeffs.items():
            n, m, ell = idx
            _check_index(params.d, idx)
            out._accumulate((m, ell), c * _tfactor(params, n, m))
        return out

    @classmethod
    def harmonic(cls, d, m, ell, p=1.0):
        return cls(d, {(m, ell): p})

    def _accumulate(self, key, p):
        if key in self.terms:
            self.terms[key] = self.terms[key] + p
        else:
            self.terms[key] = p

    # -- algebra ------------------------------------------------------
    def copy(self):
        return ModalFunction(self.d, dict(self.terms))

    def __add__(self, other):
        out = self.copy()
        for key, p in other.terms.items():
            out._accumulate(key, p)
        return out

    def __neg__(self):
        return ModalFunction(self.d, {k: -p for k, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (Chebyshev, np.polynomial.Polynomial)):
            q = _as_cheb(c)
            return ModalFunction(self.d, {k: p * q for k, p in self.terms.items()})
        return ModalFunction(self.d, {k: c * p for k, p in self.terms.items()})

    __rmul__ = __mul__

    @property
    def degree(self):
        deg = 0
        for (m, _), p in self.terms.items():
            c = np.trim_zeros(np.asarray(p.coef), "b")
            if len(c):
                deg = max(deg, m + len(c) - 1)
        return deg

    def dt(self, k=1):
        if k == 0:
            return self
        return ModalFunction(self.d, {key: p.deriv(k) for key, p in self.terms.items()})

    def rim(self, k=0):
        """Harmonic coefficients of ``xi -> dt^k f(xi, 1)``."""
        return {key: float(p.deriv(k)(1.0)) if k else float(p(1.0)) for key, p in self.terms.items()}

    # -- evaluation ---------------------------------------------------
    def __call__(self, xi, t=None):
        xi, t = _points(xi, t)
        return self._eval(xi, t, t)

    def at(self, x, v):
        """Evaluate at ``(x, v)`` with ``x`` any point of R^d (the cone needs ``|x| = v``)."""
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        safe = np.where(r > 0, r, 1.0)
        xi = np.where((r > 0)[..., None], x / safe[..., None], _pole(self.d))
        return self._eval(xi, r, np.asarray(v, dtype=float))

    def _eval(self, xi, r, v):
        if not self.terms:
            return _scalar(np.zeros(np.broadcast(xi[..., 0], v).shape))
        mmax = max(m for m, _ in self.terms)
        idx, Y = harmonics_table(self.d, mmax, xi)
        pos = {key: i for i, key in enumerate(idx)}
        out = 0.0
        for (m, ell), p in self.terms.items():
            out = out + p(v) * r ** m * Y[pos[(m, ell)]]
        return _scalar(np.asarray(out))

    def __repr__(self):
        return f"ModalFunction(d={self.d}, modes={sorted(self.terms)}, degree={self.degree})"


class ConeFunction:
    """A general function ``f(x, t)`` with optional analytic ``t``-derivatives.

    ``func(x, t)`` receives ``x`` of shape ``(..., d)`` and ``t`` broadcastable to
    ``x[..., 0]``; ``derivatives[k-1]`` evaluates ``dt^k f`` with the same
    signature.
    """

    def __init__(self, d, func, derivatives=(), name=None):
        self.d = d
        self.func = func
        self.derivatives = tuple(derivatives)
        self.name = name

    def at(self, x, v):
        return _scalar(np.asarray(self.func(np.asarray(x, dtype=float), np.asarray(v, dtype=float)),
                                  dtype=float))

    def __call__(self, xi, t=None):
        xi, t = _points(xi, t)
        return self.at(t[..., None] * xi, t)

    def dt(self, k=1):
        if k == 0:
            return self
        if k > len(self.derivatives):
            raise ValueError(f"{self.name or 'function'} has no derivative of order {k}")
        return ConeFunction(self.d, self.derivatives[k - 1], self.derivatives[k:], self.name)

    def __repr__(self):
        return f"ConeFunction({self.name or self.func!r}, d={self.d})"


def _as_cheb(p):
    if isinstance(p, Chebyshev):
        if tuple(p.domain) != (0.0, 1.0):
            return p.convert(kind=Chebyshev, domain=[0.0, 1.0])
        return p
    if isinstance(p, np.polynomial.Polynomial):
        return p.convert(kind=Chebyshev, domain=[0.0, 1.0])
    return Chebyshev([float(p)], domain=[0.0, 1.0])


def _pole(d):
    e = np.zeros(d)
    e[-1] = 1.0
    return e


# ---------------------------------------------------------------------------
# bases


def basis_eval(params: ConeParams, idx, xi, t=None, dt=0):
    """``S_{m,ell}^{n,(beta,gamma)} = P_{n-m}^{(2m+beta+d-1,gamma)}(1-2t) t^m Y_ell^m(xi)``.

    ``dt`` selects a t-derivative (x held fixed).  Dispatches to the Sobolev
    basis when ``params`` is in Sobolev mode.
    """
    if params.is_sobolev:
        return sobolev_basis_eval(params, idx, xi, t, dt=dt)
    idx = BasisIndex(*idx)
    _check_index(params.d, idx)
    xi, t = _points(xi, t)
    n, m, ell = idx
    val = _ordinary_t(params, n, m, t, dt) * t ** m * harmonic_eval(params.d, m, ell, xi)
    return _scalar(val)


def basis_norm(params: ConeParams, n, m):
    """Square norm of a basis element of degree ``n`` with harmonic degree ``m``."""
    if params.is_sobolev:
        return sobolev_basis_norm(params, n, m)
    b, g, d = params.beta, params.gamma, params.d
    ratio = pochhammer(b + d, 2 * m) / pochhammer(b + g + d + 1, 2 * m)
    return ratio * jacobi_constants(2 * m + b + d - 1, g, n - m).h_n


def sobolev_basis_eval(params: ConeParams, idx, xi, t=None, dt=0):
    """``J_{n-m}^{(2m+beta+d-1,-s)}(1-2t) Y_ell^m(x)`` (or its t-derivative of order ``dt``)."""
    idx = BasisIndex(*idx)
    _check_index(params.d, idx)
    xi, t = _points(xi, t)
    n, m, ell = idx
    p = sobolev_tfactor(params.d, params.beta, params.s, n, m)
    if dt:
        p = p.deriv(dt)
    return _scalar(p(t) * t ** m * harmonic_eval(params.d, m, ell, xi))


def sobolev_basis_norm(params: ConeParams, n, m):
    s, b, d = params.s, params.beta, params.d
    j = n - m
    if j <= s - 1:
        return 4.0 ** j * params.lambdas[j]
    a = s + 2 * m + b + d - 1
    return 2.0 ** (s - b - 2 * m - d) * jacobi_constants(a, 0.0, j - s).h_hat_n


def sobolev_basis_dt(params: ConeParams, idx, xi, t=None, k=1):
    """t-derivatives of Sobolev basis elements from their closed forms.

    ``k = s``: ``(-2)^s A_{n-s-m}^{(s+2m+beta+d-1,0)} S_{m,ell}^{n-s,(beta+s,0)}`` when
    ``m <= n - s`` and zero otherwise.  ``1 <= k <= s-1`` at the rim ``t = 1``:
    ``(-2)^k Y_ell^m(xi) delta_{k,n-m}`` when ``m > n - s`` and zero otherwise.
    Other combinations fall back to differentiating the t-factor.
    """
    s = params.s
    if not 0 <= k <= s:
        raise ValueError(f"derivative order must lie in [0, s={s}], got {k}")
    idx = BasisIndex(*idx)
    _check_index(params.d, idx)
    xi, t = _points(xi, t)
    n, m, ell = idx
    if k == 0:
        return sobolev_basis_eval(params, idx, xi, t)
    if k == s:
        if m > n - s:
            return _scalar(np.zeros(np.broadcast(xi[..., 0], t).shape))
        a = s + 2 * m + params.beta + params.d - 1
        shifted = params.shifted()
        return _scalar((-2.0) ** s * renorm_factor(a, 0.0, n - s - m)
                       * np.asarray(basis_eval(shifted, (n - s, m, ell), xi, t)))
    if np.all(t == 1.0):
        Y = harmonic_eval(params.d, m, ell, xi)
        if m > n - s and k == n - m:
            return _scalar((-2.0) ** k * np.asarray(Y) * np.ones_like(t))
        return _scalar(np.zeros(np.broadcast(xi[..., 0], t).shape))
    return sobolev_basis_eval(params, idx, xi, t, dt=k)


def basis_function(params: ConeParams, idx) -> ModalFunction:
    """The basis element as a :class:`ModalFunction`."""
    return ModalFunction.from_basis(params, {BasisIndex(*idx): 1.0})


# ---------------------------------------------------------------------------
# inner products


def ordinary_ip(f, g, params: ConeParams, exactness):
    """``<f, g>_{beta,gamma}`` by the product Gauss-Jacobi x sphere rule."""
    rule = cone_quadrature(params.d, params.beta, params.gamma, exactness)
    xi, t = rule.points()
    return float(rule.integrate(np.asarray(f(xi, t)) * np.asarray(g(xi, t))))


def sobolev_ip_cone(f, g, params: ConeParams, exactness):
    """``<f, g>_{beta,-s}``: the t^{beta+s}-weighted integral of ``dt^s f dt^s g`` plus rim terms.

    ``f`` and ``g`` must expose ``dt(k)`` (both :class:`ModalFunction` and
    :class:`ConeFunction` do).
    """
    s, d = params.s, params.d
    rule = cone_quadrature(d, params.beta + s, 0.0, exactness)
    xi, t = rule.points()
    fs, gs = f.dt(s), g.dt(s)
    # rule integrates against b_{beta+s,0} = c_{alpha,0} / omega_d with c_{alpha,0} = alpha + 1
    alpha = params.beta + s + d - 1
    integral = rule.integrate(np.asarray(fs(xi, t)) * np.asarray(gs(xi, t))) / (alpha + 1)
    srule = sphere_quadrature(d, exactness)
    ones = np.ones(len(srule.weights))
    rim = 0.0
    for k in range(s):
        fk = np.asarray(f.dt(k).at(srule.nodes, ones))
        gk = np.asarray(g.dt(k).at(srule.nodes, ones))
        rim += params.lambdas[k] * srule.integrate(fk * gk) / omega(d)
    return float(integral + rim)


def gram_matrix(params: ConeParams, nmax, exactness=None):
    """Gram matrix of all basis elements with degree ``<= nmax`` and the index list.

    Basis values (and their ``dt^s`` for Sobolev mode) are tabulated once on the
    quadrature grid so the whole matrix is a single weighted product.
    """
    d = params.d
    exactness = 2 * nmax if exactness is None else exactness
    idx = basis_indices(d, nmax)
    if params.is_sobolev:
        s = params.s
        rule = cone_quadrature(d, params.beta + s, 0.0, exactness)
        xi, t = rule.points()
        B = _basis_table(params, idx, xi, t, dt=s)
        alpha = params.beta + s + d - 1
        G = (B * rule.weights) @ B.T / (alpha + 1)
        srule = sphere_quadrature(d, exactness)
        ones = np.ones(len(srule.weights))
        for k in range(s):
            R = _basis_table(params, idx, srule.nodes, ones, dt=k)
            G += params.lambdas[k] * (R * srule.weights) @ R.T / omega(d)
        return idx, G
    rule = cone_quadrature(d, params.beta, params.gamma, exactness)
    xi, t = rule.points()
    B = _basis_table(params, idx, xi, t)
    return idx, (B * rule.weights) @ B.T


def _basis_table(params, indices, xi, t, dt=0):
    """Rows: basis elements; columns: points."""
    mmax = max(i.m for i in indices)
    hidx, Y = harmonics_table(params.d, mmax, xi)
    pos = {key: i for i, key in enumerate(hidx)}
    out = np.empty((len(indices), len(t)))
    cache = {}
    for row, (n, m, ell) in enumerate(indices):
        key = (n, m)
        if key not in cache:
            if params.is_sobolev:
                p = sobolev_tfactor(params.d, params.beta, params.s, n, m)
                cache[key] = (p.deriv(dt) if dt else p)(t) * t ** m
            else:
                cache[key] = _ordinary_t(params, n, m, t, dt) * t ** m
        out[row] = cache[key] * Y[pos[(m, ell)]]
    return out


# ---------------------------------------------------------------------------
# sampling helpers


def sphere_panel(d, npts):
    """Deterministic low-discrepancy points on S^{d-1} (van der Corput / Halton angles)."""
    from scipy.stats import qmc

    u = qmc.Halton(d=2, scramble=False).random(npts + 1)[1:]
    if d == 2:
        th = 2 * np.pi * u[:, 0]
        return np.stack([np.cos(th), np.sin(th)], axis=-1)
    z = 2 * u[:, 0] - 1
    ph = 2 * np.pi * u[:, 1]
    r = np.sqrt(1 - z * z)
    return np.stack([r * np.cos(ph), r * np.sin(ph), z], axis=-1)


def sample_panel(d, npts=40, t_range=(0.05, 0.95)):
    """Fixed evaluation panel: heights spread over ``t_range`` and Halton directions."""
    xi = sphere_panel(d, npts)
    lo, hi = t_range
    t = lo + (hi - lo) * (np.arange(npts) + 0.5) / npts
    # decorrelate height from direction ordering
    t = t[np.argsort(np.sin(np.arange(npts) * 12.9898) * 43758.5453 % 1)]
    return xi, t


def cone_grid(d, nt=41, ns=None):
    """Tensor grid on the closed cone: ``nt`` heights in [0, 1] times ``ns`` directions."""
    ns = (32 if d == 2 else 96) if ns is None else ns
    xi = sphere_panel(d, ns)
    t = np.linspace(0.0, 1.0, nt)
    return np.broadcast_to(xi, (nt, ns, d)).reshape(-1, d), np.repeat(t, ns)


def random_polynomial(d, degree, seed=0, beta=0.0, gamma=0.0, coeff_range=3):
    """Integer combination of ordinary basis elements of degree ``<= degree``.

    The top-degree block always has a nonzero coefficient, so the exact degree
    is ``degree``.
    """
    rng = np.random.default_rng(seed)
    params = ConeParams.ordinary(d, beta, gamma)
    coeffs = {}
    for idx in basis_indices(d, degree):
        coeffs[idx] = int(rng.integers(-coeff_range, coeff_range + 1))
    top = [i for i in coeffs if i.n == degree]
    if degree >= 0 and all(coeffs[i] == 0 for i in top):
        coeffs[top[int(rng.integers(len(top)))]] = 1
    return ModalFunction.from_basis(params, coeffs)
