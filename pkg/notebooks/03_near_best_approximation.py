# %% [markdown]
# # Near-best approximation with a smooth cut-off
#
# ``Q_n f`` weights the degree-k projection by ``eta(k/n)``, where ``eta`` is 1
# on [0, 1] and 0 beyond 2.  It reproduces polynomials of degree ``n``, and for
# smooth ``f`` its error tracks the best approximation.

# %%
import numpy as np

from conicpoly import ConeParams
from conicpoly.cone import ConeFunction, cone_grid, random_polynomial, sample_panel
from conicpoly.projection import CutoffFunction, error_table, q_near_best

d = 2
p = ConeParams.ordinary(d, 0.0, 0.0)
eta = CutoffFunction()
print("eta on a grid:", np.round(eta(np.linspace(0, 2.5, 11)), 4))

# %%
xi, t = sample_panel(d)
g = random_polynomial(d, 6, seed=3)
print("reproduction of a degree-6 polynomial:", np.abs(q_near_best(g, p, 6, eta, xi, t) - g(xi, t)).max())

# %% [markdown]
# For ``f = e^t`` the error hits the double precision floor between ``n = 8`` and ``n = 12``.
# Past that point it just wobbles around ``1e-13``.

# %%
f = ConeFunction(d, lambda x, t: np.exp(t) + 0 * x[..., 0], [lambda x, t: np.exp(t) + 0 * x[..., 0]] * 2)
for row in error_table(f, p, [2, 4, 6, 8, 12, 16, 20], eta, grid=cone_grid(d), best_fit=False):
    print(f"n={row['n']:2d}  sup {row['sup_err']:.2e}  L2 {row['l2_err']:.2e}")

# %% [markdown]
# A function that is smooth but not entire converges more slowly, so the
# decay is easy to see.  We also compare against the degree-n least-squares fit
# on the grid.  ``Q_n f`` has degree up to ``2n - 1``, so it can beat that fit.

# %%
h = ConeFunction(d, lambda x, t: 1 / (1.5 - t) * (1 + x[..., 0]), [])
for row in error_table(h, p, [2, 4, 8, 12], eta, grid=cone_grid(d, 21, 24)):
    print(f"n={row['n']:2d}  sup {row['sup_err']:.2e}  least squares {row['ls_err']:.2e}")
