"""The second order operator ``D_gamma`` on the cone and its polynomial eigenfunctions.

``D_gamma = t(1-t) d2/dt2 + (d-1-(d+gamma)t) d/dt + t^{-1} Delta_0``, where the
t-derivatives run along rays (``xi`` fixed) and ``Delta_0`` is the
Laplace-Beltrami operator in ``xi``.  On a mode ``p(t) Y(x) = p(t) t^m Y(xi)`` the
pole cancels and

    D_gamma[p Y] = {t(1-t) p'' + (2m+d-1-(2m+d+gamma)t) p' - m(m+d+gamma-1) p} Y,

which is how the operator is applied here: exactly, on Chebyshev coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial

from .cone import BasisIndex, ConeParams, ModalFunction, basis_function, basis_indices, cone_dim, sample_panel
from .exceptions import ApexEvaluationError, DegenerateParameterError, ParameterRangeError
from .jacobi import jacobi_series, pochhammer
from .sphere import harmonic_dim, harmonic_eval, laplace_beltrami_eigenvalue

__all__ = [
    "EIGEN_TOL",
    "NOT_EIGEN_TOL",
    "eigenvalue",
    "apply_D",
    "apply_D_ray",
    "EigenReport",
    "eigen_check",
    "ZCandidate",
    "z_coefficients",
    "z_function",
    "z_normalization",
    "EigenspaceU",
    "degenerate_pairs",
    "eigenspace_U",
    "verify_D_gamma_lemma",
]

EIGEN_TOL = 1e-8
NOT_EIGEN_TOL = 1e-3

_T = Chebyshev.identity(domain=[0.0, 1.0])
_ONE = Chebyshev([1.0], domain=[0.0, 1.0])


def eigenvalue(n, gamma, d):
    """``lambda_n^{(gamma)} = -n(n+gamma+d-1)``."""
    return -n * (n + gamma + d - 1)


def _mode_D(gamma, d, m, p):
    return (_T * (_ONE - _T) * p.deriv(2) + ((2 * m + d - 1) * _ONE - (2 * m + d + gamma) * _T) * p.deriv(1)
            - m * (m + d + gamma - 1) * p)


def apply_D(gamma, f: ModalFunction, xi=None, t=None):
    """``D_gamma f`` as a :class:`ModalFunction`, or its values when points are given."""
    d = f.d
    out = ModalFunction(d, {(m, ell): _mode_D(gamma, d, m, p) for (m, ell), p in f.terms.items()})
    if xi is None:
        return out
    return out(xi, t)


def apply_D_ray(gamma, q, d, m, ell, xi, t):
    """``D_gamma[q(t) Y_ell^m(xi)]`` with ``xi`` held fixed (no solid-harmonic factor).

    ``q`` is any numpy polynomial series.  The ``t^{-1} Delta_0`` term has a pole
    at the apex unless ``m = 0``, so ``t = 0`` is rejected in that case.
    """
    t = np.asarray(t, dtype=float)
    if m > 0 and np.any(t == 0):
        raise ApexEvaluationError("D_gamma on q(t) Y(xi) is singular at t = 0 for m >= 1")
    Y = harmonic_eval(d, m, ell, xi)
    safe = np.where(t == 0, 1.0, t)
    val = (t * (1 - t) * q.deriv(2)(t) + (d - 1 - (d + gamma) * t) * q.deriv(1)(t)
           + laplace_beltrami_eigenvalue(d, m) * q(t) / safe)
    return val * Y


# ---------------------------------------------------------------------------
# eigen checks


@dataclass(frozen=True)
class EigenReport:
    index: BasisIndex
    gamma: float
    lambda_expected: float
    residual: float
    classified: str

    @property
    def is_eigen(self):
        return self.classified == "eigen"


def _classify(res, eigen_tol, not_eigen_tol):
    if res < eigen_tol:
        return "eigen"
    if res > not_eigen_tol:
        return "not-eigen"
    return "indeterminate"


def _residual(gamma, Z: ModalFunction, lam, panel):
    xi, t = panel
    z = np.asarray(Z(xi, t))
    r = np.asarray(apply_D(gamma, Z)(xi, t)) - lam * z
    scale = float(np.max(np.abs(z)))
    return float(np.max(np.abs(r))) / (scale if scale > 0 else 1.0)


def eigen_check(params: ConeParams, idx, panel=None, eigen_tol=EIGEN_TOL, not_eigen_tol=NOT_EIGEN_TOL):
    """Test ``D_gamma S = lambda_n S`` for one basis element with ``beta = -1``.

    Ordinary parameters use ``gamma`` directly; Sobolev parameters use ``gamma = -s``.
    The residual is the panel sup of ``|D S - lambda S|`` divided by the panel sup of ``|S|``.
    """
    if params.beta != -1:
        raise ParameterRangeError(f"the spectral case needs beta = -1, got {params.beta}")
    idx = BasisIndex(*idx)
    gamma = -float(params.s) if params.is_sobolev else params.gamma
    panel = sample_panel(params.d) if panel is None else panel
    lam = eigenvalue(idx.n, gamma, params.d)
    res = _residual(gamma, basis_function(params, idx), lam, panel)
    return EigenReport(idx, gamma, lam, res, _classify(res, eigen_tol, not_eigen_tol))


# ---------------------------------------------------------------------------
# explicit eigenfunctions


@dataclass(frozen=True)
class ZCandidate:
    """``p(t) = sum_i a_{j,i} (1-t)^i`` paired with a solid harmonic of degree ``n - j``."""

    j: int
    n: int
    gamma: float
    d: int
    coeffs: np.ndarray
    harmonic: tuple = (0, 1)

    @property
    def poly(self) -> Chebyshev:
        one_minus_t = _ONE - _T
        out = Chebyshev([0.0], domain=[0.0, 1.0])
        for i, a in enumerate(self.coeffs):
            out = out + a * one_minus_t ** i
        return out


def _pochhammer_zero_at(j, n, gamma, d):
    """First ``r`` in ``0..j-1`` with ``2n+gamma+d-j-1+r = 0``, else ``None``."""
    base = 2 * n + gamma + d - j - 1
    for r in range(j):
        if abs(base + r) < 1e-12:
            return r
    return None


def z_coefficients(j, n, gamma, d, ell=1) -> ZCandidate:
    """Coefficients ``a_{j,i}`` of the monic (in ``(1-t)^j``) eigenfunction profile.

    ``a_{j,i} = (-1)^{j-i} (i+1)_{j-i} (gamma+i+1)_{j-i} / [(j-i)! (2n+gamma+d-1-j+i)_{j-i}]``.
    """
    if not 0 <= j <= n:
        raise ParameterRangeError(f"need 0 <= j <= n, got j={j}, n={n}")
    r = _pochhammer_zero_at(j, n, gamma, d)
    if r is not None:
        raise DegenerateParameterError(
            f"(2n+gamma+d-j-1)_j vanishes for n={n}, j={j}, gamma={gamma}, d={d}: "
            f"2n+gamma+d-r-1 = 0 at r = {j - r}", n=n, j=j)
    B = 2 * n + gamma + d - 1 - j
    a = np.empty(j + 1)
    for i in range(j + 1):
        k = j - i
        a[i] = ((-1) ** k * pochhammer(i + 1, k) * pochhammer(gamma + i + 1, k)
                / (math.factorial(k) * pochhammer(B + i, k)))
    return ZCandidate(j=j, n=n, gamma=float(gamma), d=d, coeffs=a, harmonic=(n - j, ell))


def z_function(z: ZCandidate) -> ModalFunction:
    m, ell = z.harmonic
    return ModalFunction.harmonic(z.d, m, ell, z.poly)


def z_normalization(j, n, gamma, d):
    """Constant ``c`` with ``sum_i a_{j,i} (1-t)^i = c P_j^{(2n-2j+d-2, gamma)}(1-2t)``.

    ``c = j! / (2n+gamma+d-j-1)_j``.
    """
    return math.factorial(j) / pochhammer(2 * n + gamma + d - j - 1, j)


# ---------------------------------------------------------------------------
# eigenspace for gamma = -s


@dataclass
class EigenspaceU:
    n: int
    s: int
    d: int
    elements: list = field(repr=False)
    count: int = 0
    dim_V: int = 0
    dim_claimed: int = 0

    @property
    def matches_dim_V(self):
        return self.count == self.dim_V

    @property
    def matches_claimed(self):
        return self.count == self.dim_claimed

    @property
    def flagged(self):
        """True when the constructed count disagrees with either dimension formula."""
        return not (self.matches_dim_V and self.matches_claimed)


def degenerate_pairs(n, s, d):
    """``(n, j)`` pairs where ``P_j^{(2n-2j+d-2,-s)}`` loses degree.

    Happens when ``-2n-d+j+s+2`` is an integer in ``[1, j]``.
    """
    out = []
    for j in range(1, min(s - 1, n) + 1):
        k = -2 * n - d + j + s + 2
        if 1 <= k <= j:
            out.append((n, j))
    return out


def eigenspace_U(n, s, d):
    """Spanning set of the ``D_{-s}`` eigenspace of degree ``n``.

    Harmonics of degree ``n``; ``P_j^{(2n-2j+d-2,-s)}(1-2t)`` times harmonics of degree
    ``n - j`` for ``1 <= j <= s-1``; and ``(1-t)^s`` times the ordinary basis of degree
    ``n - s`` for the weight ``t^{-1}(1-t)^s``.  Each element is a tuple
    ``(label, index, ModalFunction)``.
    """
    if s < 2:
        raise ParameterRangeError(f"the eigenspace construction needs s >= 2, got {s}")
    bad = degenerate_pairs(n, s, d)
    if bad:
        n0, j0 = bad[0]
        raise DegenerateParameterError(
            f"P_{j0}^(2n-2j+d-2,-s) drops degree for n={n0}, j={j0}, s={s}, d={d}", n=n0, j=j0)
    elements = []
    for ell in range(1, harmonic_dim(d, n) + 1):
        elements.append(("harmonic", (n, n, ell), ModalFunction.harmonic(d, n, ell)))
    for j in range(1, min(s - 1, n) + 1):
        p = jacobi_series(2 * n - 2 * j + d - 2, -float(s), j, domain=(0, 1))
        for ell in range(1, harmonic_dim(d, n - j) + 1):
            elements.append((f"jacobi-j{j}", (n, n - j, ell), ModalFunction.harmonic(d, n - j, ell, p)))
    if n >= s:
        inner = ConeParams.ordinary(d, -1.0, float(s))
        factor = (_ONE - _T) ** s
        for idx in basis_indices(d, n - s):
            if idx.n == n - s:
                elements.append(("factor", (n, idx.m, idx.ell), basis_function(inner, idx) * factor))
    claimed = math.comb(n + d - 1, d)
    return EigenspaceU(n=n, s=s, d=d, elements=elements, count=len(elements),
                       dim_V=cone_dim(d, n), dim_claimed=claimed)


# ---------------------------------------------------------------------------
# the (1-t)^k lemma


def _ray_times_t(gamma, d, m, q: Polynomial) -> Polynomial:
    """``t * D_gamma[q(t) Y(xi)] / Y(xi)`` as a polynomial (clears the pole)."""
    t = Polynomial([0.0, 1.0])
    return (t * t * (1 - t) * q.deriv(2) + t * ((d - 1) - (d + gamma) * t) * q.deriv(1)
            + laplace_beltrami_eigenvalue(d, m) * q)


def verify_D_gamma_lemma(k, gamma, p, harmonic, xi=None, t=None):
    """Residual of ``D_gamma[(1-t)^k p Y] = (1-t)^k D_{gamma+2k}[p Y] - k(1-t)^{k-1}[d-1-(d+gamma+k-1)t] p Y``.

    ``harmonic = (d, m, ell)`` and ``Y`` is taken as a function of ``xi`` alone.
    Returns the larger of the coefficient-level residual (after clearing the
    ``t^{-1}``) and the sup over the evaluation panel.
    """
    d, m, ell = harmonic
    if isinstance(p, np.polynomial.polynomial.ABCPolyBase):
        p = p.convert(kind=Polynomial, domain=[-1, 1], window=[-1, 1])
    else:
        p = Polynomial(np.asarray(p, dtype=float))
    tt = Polynomial([0.0, 1.0])
    one_minus = 1 - tt
    lhs = _ray_times_t(gamma, d, m, one_minus ** k * p)
    rhs = one_minus ** k * _ray_times_t(gamma + 2 * k, d, m, p)
    if k >= 1:
        rhs = rhs - k * one_minus ** (k - 1) * ((d - 1) - (d + gamma + k - 1) * tt) * p * tt
    diff = lhs - rhs
    coef_res = float(np.max(np.abs(diff.coef))) if len(diff.coef) else 0.0
    if xi is None:
        xi, t = sample_panel(d)
    t = np.asarray(t, dtype=float)
    if np.any(t == 0) and m > 0:
        raise ApexEvaluationError("panel must avoid the apex")
    point_res = float(np.max(np.abs(diff(t) / t * harmonic_eval(d, m, ell, xi))))
    return max(coef_res, point_res)
