# %% [markdown]
# # Fourier coefficients, projections and the derivative commutation
#
# Coefficients come from a product quadrature: a sphere transform in ``xi``
# followed by Gauss-Jacobi in ``t``.  Taking a t-derivative of a projection
# lands in the projection with both parameters raised by one.

# %%
import numpy as np

from conicpoly import ConeParams
from conicpoly.cone import random_polynomial, sample_panel
from conicpoly.projection import (fourier_coeffs, project, sobolev_fourier_coeffs, sobolev_project_integral,
                                  verify_commutation, verify_factor_theorem, verify_sobolev_commutation)

d = 2
f = random_polynomial(d, 5, seed=1)
xi, t = sample_panel(d)

# %%
p = ConeParams.ordinary(d, 0.0, 0.0)
T = fourier_coeffs(f, p, 5)
recon = sum(project(T, n, xi, t) for n in range(6))
print("reconstruction error:", np.abs(recon - f(xi, t)).max())
print("commutation residuals:", [f"{verify_commutation(f, p, n):.1e}" for n in range(6)])

# %% [markdown]
# For the Sobolev basis there are two ways to get a projection.  One is the
# coefficient table.  The other is the integral form, which writes the
# projection as a rim part plus an integral of the projected ``s``-th derivative.

# %%
q = ConeParams.sobolev(d, 0.0, 2)
S = sobolev_fourier_coeffs(f, q, 5)
for n in range(6):
    gap = np.abs(sobolev_project_integral(f, q, n, xi, t) - project(S, n, xi, t)).max()
    print(f"n={n}: coefficient vs integral path {gap:.1e}")
print("Sobolev commutation:", max(verify_sobolev_commutation(f, q, n) for n in range(2, 6)))
print("factor theorem:", max(verify_factor_theorem(random_polynomial(d, 4, seed=2), q, n) for n in range(8)))
