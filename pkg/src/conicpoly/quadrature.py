"""Gauss-Jacobi rules on [0, 1] and the product rule for the cone measure."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import betaln

from .exceptions import ParameterRangeError
from .jacobi import gamma_ratio
from .sphere import SphereRule, omega, sphere_quadrature

__all__ = [
    "QuadratureRule",
    "ConeRule",
    "jacobi_recurrence",
    "gauss_jacobi",
    "gauss_jacobi_01",
    "gauss_legendre",
    "cone_quadrature",
]


@dataclass(frozen=True)
class QuadratureRule:
    """One-dimensional rule; ``weight_descriptor`` is ``(a, b, interval)``."""

    nodes: np.ndarray
    weights: np.ndarray
    exactness: int
    weight_descriptor: tuple

    def integrate(self, values):
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


def jacobi_recurrence(alpha, beta, npts):
    """Diagonal and off-diagonal of the Jacobi matrix for ``(1-u)^alpha (1+u)^beta``."""
    ab = alpha + beta
    k = np.arange(npts, dtype=float)
    diag = np.empty(npts)
    diag[0] = (beta - alpha) / (ab + 2)
    if npts > 1:
        kk = k[1:]
        diag[1:] = (beta ** 2 - alpha ** 2) / ((2 * kk + ab) * (2 * kk + ab + 2))
    off = np.empty(max(npts - 1, 0))
    if npts > 1:
        off[0] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
        kk = k[2:]
        c = 2 * kk + ab
        off[1:] = 4 * kk * (kk + alpha) * (kk + beta) * (kk + ab) / (c * c * (c + 1) * (c - 1))
    return diag, np.sqrt(off)


def gauss_jacobi(alpha, beta, npts) -> QuadratureRule:
    """Gauss rule on [-1, 1] for ``(1-u)^alpha (1+u)^beta`` by the Golub-Welsch method."""
    if alpha <= -1 or beta <= -1:
        raise ParameterRangeError(f"Jacobi weight exponents must exceed -1, got {alpha}, {beta}")
    if npts < 1:
        raise ValueError("npts must be positive")
    diag, off = jacobi_recurrence(alpha, beta, npts)
    nodes, vecs = eigh_tridiagonal(diag, off)
    mass = math.exp((alpha + beta + 1) * math.log(2) + betaln(alpha + 1, beta + 1))
    weights = mass * vecs[0] ** 2
    return QuadratureRule(nodes, weights, 2 * npts - 1, (alpha, beta, "[-1,1]"))


def gauss_jacobi_01(a, b, npts) -> QuadratureRule:
    """Gauss rule on [0, 1] for the weight ``t^a (1-t)^b``."""
    base = gauss_jacobi(b, a, npts)
    nodes = (1 + base.nodes) / 2
    weights = base.weights / 2.0 ** (a + b + 1)
    return QuadratureRule(nodes, weights, base.exactness, (a, b, "[0,1]"))


def gauss_legendre(lo, hi, npts) -> QuadratureRule:
    x, w = np.polynomial.legendre.leggauss(npts)
    half = (hi - lo) / 2
    return QuadratureRule(lo + half * (x + 1), half * w, 2 * npts - 1, (0.0, 0.0, (lo, hi)))


@dataclass(frozen=True)
class ConeRule:
    """Product rule realizing ``<f, g>_{beta,gamma}`` on the conic surface.

    The height rule carries the weight ``t^(beta+d-1) (1-t)^gamma`` (surface
    factor folded in) and is scaled by ``c_{beta+d-1,gamma}``; the sphere rule is
    divided by ``omega_d``.  Hence ``sum(weights) == 1``.
    """

    d: int
    beta: float
    gamma: float
    t_rule: QuadratureRule
    sphere_rule: SphereRule
    t_scale: float

    @property
    def t_nodes(self):
        return self.t_rule.nodes

    @property
    def t_weights(self):
        return self.t_scale * self.t_rule.weights

    @property
    def sphere_weights(self):
        return self.sphere_rule.weights / omega(self.d)

    def points(self):
        """Flattened ``(xi, t)`` arrays, t-major."""
        nt = len(self.t_nodes)
        ns = len(self.sphere_rule.weights)
        xi = np.broadcast_to(self.sphere_rule.nodes, (nt, ns, self.d)).reshape(-1, self.d)
        t = np.repeat(self.t_nodes, ns)
        return xi, t

    @property
    def weights(self):
        return np.outer(self.t_weights, self.sphere_weights).ravel()

    def integrate(self, values):
        """Integrate values sampled at :meth:`points` (t-major flattening)."""
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


def cone_quadrature(d, beta, gamma, exactness) -> ConeRule:
    if beta <= -d:
        raise ParameterRangeError(f"beta must exceed -d = {-d}, got {beta}")
    if gamma <= -1:
        raise ParameterRangeError(f"gamma must exceed -1, got {gamma}")
    npts = max(1, math.ceil((exactness + 1) / 2))
    a = beta + d - 1
    t_rule = gauss_jacobi_01(a, gamma, npts)
    scale = gamma_ratio([a + gamma + 2], [a + 1, gamma + 1])
    return ConeRule(d, beta, gamma, t_rule, sphere_quadrature(d, exactness), scale)
