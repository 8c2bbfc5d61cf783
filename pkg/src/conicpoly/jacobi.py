"""Classical Jacobi polynomials, their normalizations and the negative-parameter family.

Conventions follow the weight ``(1 - t)**alpha * (1 + t)**beta`` on ``[-1, 1]``.
The normalized square norm ``h_n`` is scaled so that ``h_0 = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Chebyshev
from scipy.special import gammaln, gammasgn

from .exceptions import DegreeTooSmallError, ParameterRangeError

MAX_DEGREE = 64

__all__ = [
    "JacobiParams",
    "JacobiConstants",
    "pochhammer",
    "gamma_ratio",
    "jacobi_eval",
    "jacobi_eval_any",
    "jacobi_constants",
    "jacobi_hat_eval",
    "jacobi_negparam_eval",
    "jacobi_series",
    "renorm_factor",
]


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def check(self):
        _check_params(self.alpha, self.beta)
        return self


@dataclass(frozen=True)
class JacobiConstants:
    """Normalization data for ``P_n^{(alpha, beta)}``.

    Attributes
    ----------
    c_ab : float
        ``Gamma(a+b+2) / (Gamma(a+1) Gamma(b+1))``, the reciprocal of the weight mass on [0, 1].
    h_n : float
        Square norm of ``P_n`` under the probability-normalized weight.
    A_n : float
        Renormalization ``2**n / (n+a+b+1)_n`` making ``d/dt Phat_n = Phat_{n-1}^{(a+1,b+1)}``.
    h_hat_n : float
        Unnormalized square norm ``int Phat_n**2 w dt`` over [-1, 1].
    """

    c_ab: float
    h_n: float
    A_n: float
    h_hat_n: float


def pochhammer(a, k):
    """Rising factorial ``(a)_k = a (a+1) ... (a+k-1)`` by iterated product."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def gamma_ratio(num, den):
    """``prod Gamma(num_i) / prod Gamma(den_j)`` through log-gamma with sign tracking."""
    logv = sum(gammaln(x) for x in num) - sum(gammaln(x) for x in den)
    sign = 1.0
    for x in list(num) + list(den):
        sign *= gammasgn(x)
    return float(sign * np.exp(logv))


def _check_params(alpha, beta):
    if alpha <= -1 or beta <= -1:
        raise ParameterRangeError(
            f"Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}")


def _check_degree(n):
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the supported cap {MAX_DEGREE}")


def jacobi_eval(alpha, beta, n, t):
    """Evaluate ``P_n^{(alpha, beta)}(t)`` by the three-term recurrence.

    Parameters
    ----------
    alpha, beta : float
        Parameters, both > -1.
    n : int
        Degree, ``0 <= n <= 64``.
    t : float or array_like
        Evaluation points.
    """
    _check_params(alpha, beta)
    _check_degree(n)
    t = np.asarray(t, dtype=float)
    p0 = np.ones_like(t)
    if n == 0:
        return p0 if p0.ndim else float(p0)
    ab = alpha + beta
    p1 = (alpha + 1) + (ab + 2) * (t - 1) / 2
    for k in range(2, n + 1):
        c = 2 * k + ab
        a1 = 2 * k * (k + ab) * (c - 2)
        a2 = (c - 1) * (c * (c - 2) * t + alpha ** 2 - beta ** 2)
        a3 = 2 * (k + alpha - 1) * (k + beta - 1) * c
        p0, p1 = p1, (a2 * p1 - a3 * p0) / a1
    return p1 if p1.ndim else float(p1)


def jacobi_eval_any(alpha, beta, n, t):
    """``P_n^{(alpha, beta)}(t)`` for arbitrary real parameters.

    Uses the finite sum ``sum_k C(n+a, n-k) C(n+b, k) ((t-1)/2)^k ((t+1)/2)^(n-k)``
    with generalized binomials, which is the analytic continuation in the
    parameters and keeps the degree reduction when ``n + a + b`` is a negative
    integer. Intended for small ``n``.
    """
    _check_degree(n)
    t = np.asarray(t, dtype=float)
    lo = (t - 1) / 2
    hi = (t + 1) / 2
    out = np.zeros_like(t)
    for k in range(n + 1):
        # C(n+a, n-k) = (a+k+1)_{n-k} / (n-k)!, C(n+b, k) = (b+n-k+1)_k / k!
        coef = (pochhammer(alpha + k + 1, n - k) / math.factorial(n - k)
                * pochhammer(beta + n - k + 1, k) / math.factorial(k))
        out = out + coef * lo ** k * hi ** (n - k)
    return out if out.ndim else float(out)


def renorm_factor(alpha, beta, n):
    """``A_n^{(alpha, beta)} = 2**n / (n + alpha + beta + 1)_n``."""
    return 2.0 ** n / pochhammer(n + alpha + beta + 1, n)


def jacobi_constants(alpha, beta, n) -> JacobiConstants:
    _check_params(alpha, beta)
    _check_degree(n)
    ab = alpha + beta
    c_ab = gamma_ratio([ab + 2], [alpha + 1, beta + 1])
    if n == 0:
        h = 1.0
    else:
        h = (pochhammer(alpha + 1, n) * pochhammer(beta + 1, n) * (ab + n + 1)
             / (math.factorial(n) * pochhammer(ab + 2, n) * (ab + 2 * n + 1)))
    A = renorm_factor(alpha, beta, n)
    h_hat = 2.0 ** (ab + 1) / c_ab * A * A * h
    return JacobiConstants(c_ab=c_ab, h_n=h, A_n=A, h_hat_n=h_hat)


def jacobi_hat_eval(alpha, beta, n, t):
    """Renormalized ``Phat_n = A_n P_n``; its derivative is ``Phat_{n-1}^{(alpha+1, beta+1)}``."""
    return renorm_factor(alpha, beta, n) * jacobi_eval(alpha, beta, n, t)


def jacobi_negparam_eval(alpha, s, n, t):
    """``P_n^{(alpha, -s)}(t)`` for ``n >= s`` via the ``(1+t)^s`` factorization."""
    if alpha <= -1:
        raise ParameterRangeError(f"alpha must exceed -1, got {alpha}")
    if s < 1 or int(s) != s:
        raise ParameterRangeError(f"s must be a positive integer, got {s}")
    if n < s:
        raise DegreeTooSmallError(f"P_n^(alpha,-s) needs n >= s, got n={n}, s={s}")
    s = int(s)
    t = np.asarray(t, dtype=float)
    const = pochhammer(-alpha - n, s) / (2.0 ** s * pochhammer(-n, s))
    out = const * (1 + t) ** s * jacobi_eval(alpha, s, n - s, t)
    return out if np.ndim(out) else float(out)


def jacobi_series(alpha, beta, n, hat=False, domain=(-1.0, 1.0)):
    """Chebyshev series of ``P_n^{(alpha, beta)}`` (or ``Phat_n``) as a function of ``u`` in [-1, 1].

    With ``domain=(0, 1)`` the series is returned as a function of ``t``
    where ``u = 1 - 2t``.
    """
    evaluate = jacobi_eval if (alpha > -1 and beta > -1) else jacobi_eval_any
    scale = renorm_factor(alpha, beta, n) if hat else 1.0
    series = Chebyshev.interpolate(lambda u: scale * evaluate(alpha, beta, n, u), n)
    series = _trim_to_degree(series, n)
    if tuple(float(v) for v in domain) == (0.0, 1.0):
        return reflect_to_unit(series)
    return series


def reflect_to_unit(series):
    """Re-express a Chebyshev series in ``u`` as a series in ``t`` where ``u = 1 - 2t``.

    ``T_k(1 - 2t) = (-1)^k T_k(2t - 1)`` so only signs change.
    """
    c = series.coef.copy()
    c[1::2] *= -1
    return Chebyshev(c, domain=[0.0, 1.0])


def _trim_to_degree(series, n):
    c = np.zeros(n + 1)
    c[: min(len(series.coef), n + 1)] = series.coef[: n + 1]
    return Chebyshev(c, domain=series.domain)
