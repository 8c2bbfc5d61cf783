"""Real orthonormal spherical harmonics on S^1 and S^2, sphere quadrature and projections.

Harmonics are normalized against the averaged surface measure,
``(1/omega_d) int Y Y' dsigma = delta``, so the constant harmonic is 1.

For ``d = 2`` the basis of degree ``m >= 1`` is ``sqrt(2) cos(m theta)`` (``ell = 1``)
and ``sqrt(2) sin(m theta)`` (``ell = 2``).  For ``d = 3`` the index ``ell`` runs over
the orders ``-m..m`` in ascending order; negative orders carry ``sin(|mu| phi)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import DimensionUnsupportedError, IndexRangeError, OffConeError

__all__ = [
    "SphereRule",
    "omega",
    "harmonic_dim",
    "harmonic_indices",
    "harmonic_eval",
    "harmonics_table",
    "solid_harmonic_eval",
    "laplace_beltrami_eigenvalue",
    "sphere_quadrature",
    "sphere_coefficients",
    "sphere_project",
]

SUPPORTED_DIMS = (2, 3)


@dataclass(frozen=True)
class SphereRule:
    """Nodes on S^{d-1} (shape ``(N, d)``) with weights summing to ``omega(d)``."""

    d: int
    nodes: np.ndarray
    weights: np.ndarray
    exactness: int

    def integrate(self, values):
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


def omega(d):
    """Surface area of S^{d-1}."""
    return 2 * math.pi ** (d / 2) / math.gamma(d / 2)


def harmonic_dim(d, m):
    if m < 0:
        raise ValueError("harmonic degree must be nonnegative")
    if m == 0:
        return 1
    return math.comb(m + d - 2, m) + math.comb(m + d - 3, m - 1)


def harmonic_indices(d, mmax):
    """All ``(m, ell)`` with ``m <= mmax`` in basis order."""
    return [(m, ell) for m in range(mmax + 1) for ell in range(1, harmonic_dim(d, m) + 1)]


def laplace_beltrami_eigenvalue(d, m):
    return -m * (m + d - 2)


def _check_dim(d):
    if d not in SUPPORTED_DIMS:
        raise DimensionUnsupportedError(f"explicit harmonic bases exist for d in {{2, 3}}, got d={d}")


def _check_index(d, m, ell):
    if m < 0 or not 1 <= ell <= harmonic_dim(d, m):
        raise IndexRangeError(f"harmonic index (m={m}, ell={ell}) out of range for d={d}")


def _legendre_table(mmax, z):
    """Normalized associated Legendre ``Q[m, mu](z)`` with ``(1/2) int Q^2 dz = 1/(2 - delta_mu0)``.

    Combined with ``sqrt(2 - delta) * cos/sin(mu phi)`` this gives unit
    averaged-norm harmonics.
    """
    z = np.asarray(z, dtype=float)
    s = np.sqrt(np.clip(1 - z * z, 0.0, None))
    Q = np.zeros((mmax + 1, mmax + 1) + z.shape)
    Q[0, 0] = 1.0
    for mu in range(1, mmax + 1):
        Q[mu, mu] = math.sqrt((2 * mu + 1) / (2 * mu)) * s * Q[mu - 1, mu - 1]
    for mu in range(0, mmax):
        Q[mu + 1, mu] = math.sqrt(2 * mu + 3) * z * Q[mu, mu]
    for mu in range(0, mmax + 1):
        for m in range(mu + 2, mmax + 1):
            a = math.sqrt((4 * m * m - 1) / (m * m - mu * mu))
            b = math.sqrt(((m - 1) ** 2 - mu * mu) / (4 * (m - 1) ** 2 - 1))
            Q[m, mu] = a * (z * Q[m - 1, mu] - b * Q[m - 2, mu])
    return Q


def harmonics_table(d, mmax, xi):
    """Evaluate every harmonic with degree ``<= mmax`` at unit vectors ``xi``.

    Returns ``(indices, values)`` where ``values[k]`` holds ``Y_{ell}^{m}(xi)`` for
    ``indices[k] = (m, ell)``.
    """
    _check_dim(d)
    xi = np.asarray(xi, dtype=float)
    shape = xi.shape[:-1]
    idx = harmonic_indices(d, mmax)
    out = np.empty((len(idx),) + shape)
    if d == 2:
        theta = np.arctan2(xi[..., 1], xi[..., 0])
        k = 0
        for m in range(mmax + 1):
            if m == 0:
                out[k] = 1.0
                k += 1
            else:
                out[k] = math.sqrt(2) * np.cos(m * theta)
                out[k + 1] = math.sqrt(2) * np.sin(m * theta)
                k += 2
        return idx, out
    z = np.clip(xi[..., 2], -1.0, 1.0)
    phi = np.arctan2(xi[..., 1], xi[..., 0])
    Q = _legendre_table(mmax, z)
    k = 0
    for m in range(mmax + 1):
        for mu in range(-m, m + 1):
            if mu < 0:
                out[k] = math.sqrt(2) * Q[m, -mu] * np.sin(-mu * phi)
            elif mu == 0:
                out[k] = Q[m, 0]
            else:
                out[k] = math.sqrt(2) * Q[m, mu] * np.cos(mu * phi)
            k += 1
    return idx, out


def harmonic_eval(d, m, ell, xi):
    """``Y_ell^m(xi)`` for unit vectors ``xi`` (last axis has length d)."""
    _check_dim(d)
    _check_index(d, m, ell)
    xi = np.asarray(xi, dtype=float)
    norms = np.linalg.norm(xi, axis=-1)
    if np.any(np.abs(norms - 1) > 1e-12):
        raise ValueError("harmonic_eval expects unit vectors")
    if d == 2:
        theta = np.arctan2(xi[..., 1], xi[..., 0])
        if m == 0:
            out = np.ones(xi.shape[:-1])
        elif ell == 1:
            out = math.sqrt(2) * np.cos(m * theta)
        else:
            out = math.sqrt(2) * np.sin(m * theta)
    else:
        mu = ell - m - 1
        z = np.clip(xi[..., 2], -1.0, 1.0)
        phi = np.arctan2(xi[..., 1], xi[..., 0])
        Q = _legendre_table(m, z)[m, abs(mu)]
        if mu < 0:
            out = math.sqrt(2) * Q * np.sin(-mu * phi)
        elif mu == 0:
            out = Q
        else:
            out = math.sqrt(2) * Q * np.cos(mu * phi)
    return out if np.ndim(out) else float(out)


def solid_harmonic_eval(d, m, ell, x, t=None, tol=1e-10):
    """Homogeneous extension ``|x|^m Y_ell^m(x/|x|)``.

    When ``t`` is given the point is required to lie on the cone, ``|x| = t``.
    At ``x = 0`` the value is ``Y`` itself for ``m = 0`` and 0 otherwise.
    """
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1)
    if t is not None and np.any(np.abs(r - np.asarray(t)) > tol):
        raise OffConeError("point is off the cone: |x| != t")
    safe = np.where(r > 0, r, 1.0)
    xi = x / safe[..., None]
    xi = np.where((r > 0)[..., None], xi, _pole(d))
    val = harmonic_eval(d, m, ell, xi) * r ** m
    return val if np.ndim(val) else float(val)


def _pole(d):
    e = np.zeros(d)
    e[-1] = 1.0
    return e


@lru_cache(maxsize=64)
def _sphere_rule(d, exactness):
    if d == 2:
        npts = exactness + 1
        theta = 2 * math.pi * np.arange(npts) / npts
        nodes = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        weights = np.full(npts, 2 * math.pi / npts)
    else:
        nz = exactness // 2 + 1
        naz = exactness + 1
        z, wz = np.polynomial.legendre.leggauss(nz)
        phi = 2 * math.pi * np.arange(naz) / naz
        Z, P = np.meshgrid(z, phi, indexing="ij")
        S = np.sqrt(1 - Z * Z)
        nodes = np.stack([S * np.cos(P), S * np.sin(P), Z], axis=-1).reshape(-1, 3)
        weights = np.outer(wz, np.full(naz, 2 * math.pi / naz)).ravel()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return SphereRule(d=d, nodes=nodes, weights=weights, exactness=exactness)


def sphere_quadrature(d, exactness) -> SphereRule:
    """Product rule on S^{d-1} integrating polynomials of degree ``<= exactness`` exactly.

    ``d = 2``: trapezoid rule with ``exactness + 1`` equispaced angles.
    ``d = 3``: Gauss-Legendre in ``cos(polar angle)`` times equispaced azimuths.
    """
    _check_dim(d)
    if exactness < 0:
        raise ValueError("exactness must be nonnegative")
    return _sphere_rule(d, int(exactness))


def sphere_coefficients(values, rule: SphereRule, mmax):
    """Averaged inner products ``(1/omega) int g Y_ell^m`` for all ``m <= mmax``.

    ``values`` has the rule's nodes along axis 0; trailing axes are batch axes.
    Returns ``(indices, coeffs)`` with ``coeffs`` shaped ``(n_harmonics,) + batch``.
    """
    idx, Y = harmonics_table(rule.d, mmax, rule.nodes)
    values = np.asarray(values, dtype=float)
    coeffs = np.tensordot(Y * rule.weights, values, axes=(1, 0)) / omega(rule.d)
    return idx, coeffs


def sphere_project(f, n, d, exactness):
    """Coefficients ``fhat_ell^n`` of ``f`` in the degree-n harmonics.

    ``f`` is a callable on unit vectors of shape ``(..., d)``; ``exactness``
    should be at least ``n + deg f`` for polynomial ``f``.
    """
    rule = sphere_quadrature(d, exactness)
    vals = np.asarray(f(rule.nodes), dtype=float)
    _, Y = harmonics_table(d, n, rule.nodes)
    start = sum(harmonic_dim(d, k) for k in range(n))
    Yn = Y[start:]
    return Yn @ (rule.weights * vals) / omega(d)
