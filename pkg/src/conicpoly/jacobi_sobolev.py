"""The modified Jacobi family ``J_n^{(alpha-s, beta-s)}`` and its one-variable Sobolev inner product.

``J_n`` is built as an exact Chebyshev coefficient vector: for ``n >= s`` it is the
s-fold antiderivative of ``Phat_{n-s}^{(alpha, beta)}`` whose derivatives of
order ``0..s-1`` vanish at ``u = -1``; for ``n < s`` it is ``(u+1)^n / n!``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial

from .exceptions import DegreeTooSmallError, ParameterRangeError
from .jacobi import jacobi_constants, jacobi_hat_eval, jacobi_series
from .quadrature import gauss_jacobi

__all__ = [
    "SobolevParams1D",
    "J_series",
    "J_eval",
    "J_closed_form_eval",
    "J_norm",
    "poly_derivatives",
    "sobolev_ip_1d",
]


@dataclass(frozen=True)
class SobolevParams1D:
    """Parameters of ``[f, g] = int f^(s) g^(s) w_{alpha,beta} + sum_k mu_k f^(k)(-1) g^(k)(-1)``."""

    alpha: float
    beta: float
    s: int
    mu: tuple = field(default=None)

    def __post_init__(self):
        if self.alpha <= -1 or self.beta <= -1:
            raise ParameterRangeError("alpha and beta must exceed -1")
        if self.s < 1 or int(self.s) != self.s:
            raise ParameterRangeError(f"s must be a positive integer, got {self.s}")
        mu = (1.0,) * self.s if self.mu is None else tuple(float(v) for v in self.mu)
        if len(mu) != self.s:
            raise ParameterRangeError(f"need exactly s={self.s} boundary weights, got {len(mu)}")
        if any(v < 0 for v in mu):
            raise ParameterRangeError("boundary weights must be nonnegative")
        object.__setattr__(self, "mu", mu)


def _check(alpha, beta, s):
    if alpha <= -1 or beta <= -1:
        raise ParameterRangeError(f"alpha and beta must exceed -1, got {alpha}, {beta}")
    if s < 1 or int(s) != s:
        raise ParameterRangeError(f"s must be a positive integer, got {s}")


@lru_cache(maxsize=1024)
def J_series(alpha, beta, s, n) -> Chebyshev:
    """Chebyshev series of ``J_n^{(alpha-s, beta-s)}(u)`` on [-1, 1]."""
    _check(alpha, beta, s)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n < s:
        mono = Polynomial([1.0, 1.0]) ** n / math.factorial(n)
        return mono.convert(kind=Chebyshev)
    base = jacobi_series(alpha, beta, n - s, hat=True)
    return base.integ(m=int(s), lbnd=-1.0)


def J_eval(alpha, beta, s, n, t):
    """``J_n^{(alpha-s, beta-s)}(t)`` from the antiderivative construction."""
    out = J_series(alpha, beta, s, n)(np.asarray(t, dtype=float))
    return out if np.ndim(out) else float(out)


def J_closed_form_eval(alpha, s, n, t):
    """``J_n^{(alpha, -s)}(t) = (n-s)!/n! (1+t)^s Phat_{n-s}^{(alpha, s)}(t)`` for ``n >= s``.

    Here ``alpha`` is the first parameter of ``J`` itself, so this coincides with
    ``J_eval(alpha + s, 0, s, n, t)``.
    """
    if alpha <= -1:
        raise ParameterRangeError(f"alpha must exceed -1, got {alpha}")
    if n < s:
        raise DegreeTooSmallError(f"closed form needs n >= s, got n={n}, s={s}")
    t = np.asarray(t, dtype=float)
    ratio = math.factorial(n - s) / math.factorial(n)
    out = ratio * (1 + t) ** s * jacobi_hat_eval(alpha, s, n - s, t)
    return out if np.ndim(out) else float(out)


def J_norm(params: SobolevParams1D, n):
    """Square norm of ``J_n`` under :func:`sobolev_ip_1d`."""
    if n < params.s:
        return params.mu[n]
    return jacobi_constants(params.alpha, params.beta, n - params.s).h_hat_n


def poly_derivatives(p, order):
    """``[p, p', ..., p^(order)]`` as callables for a numpy polynomial series."""
    return [p.deriv(k) if k else p for k in range(order + 1)]


def _as_derivs(f, s):
    if hasattr(f, "deriv"):
        return poly_derivatives(f, s)
    derivs = list(f)
    if len(derivs) < s + 1:
        raise ValueError(f"need derivatives up to order {s}, got {len(derivs) - 1}")
    return derivs


def sobolev_ip_1d(f, g, params: SobolevParams1D, exactness):
    """One-variable Sobolev inner product with boundary terms at ``u = -1``.

    ``f`` and ``g`` are numpy polynomial series, or sequences
    ``[f, f', ..., f^(s)]`` of callables.  The integral uses a Gauss-Jacobi rule
    exact for degree ``exactness``.
    """
    s = params.s
    fd, gd = _as_derivs(f, s), _as_derivs(g, s)
    rule = gauss_jacobi(params.alpha, params.beta, max(1, math.ceil((exactness + 1) / 2)))
    integral = rule.integrate(np.asarray(fd[s](rule.nodes)) * np.asarray(gd[s](rule.nodes)))
    boundary = sum(params.mu[k] * float(fd[k](-1.0)) * float(gd[k](-1.0)) for k in range(s))
    return float(integral + boundary)
