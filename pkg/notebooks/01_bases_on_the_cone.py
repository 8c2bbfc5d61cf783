# %% [markdown]
# # Orthogonal bases on the conic surface
#
# The surface is ``{(x, t): |x| = t, 0 <= t <= 1}``.  A basis element is a
# Jacobi polynomial in ``t`` times a solid spherical harmonic in ``x``.  Here we
# build both bases and look at their Gram matrices.

# %%
import numpy as np

from conicpoly import ConeParams, basis_norm, gram_matrix
from conicpoly.cone import cone_dim

# %% [markdown]
# Ordinary weight ``t^beta (1-t)^gamma``.  The Gram matrix should be diagonal,
# with the closed-form norms on the diagonal.

# %%
p = ConeParams.ordinary(3, 1.0, 0.5)
idx, G = gram_matrix(p, 4)
h = np.array([basis_norm(p, n, m) for n, m, _ in idx])
print(p.describe(), "elements:", len(idx), "=", sum(cone_dim(3, n) for n in range(5)))
print("max off-diagonal:", np.abs(G - np.diag(np.diag(G))).max())
print("max relative norm error:", np.max(np.abs(np.diag(G) - h) / h))

# %% [markdown]
# Sobolev mode replaces ``gamma`` by ``-s``.  The inner product pairs ``s``
# t-derivatives in the interior with rim values of the lower derivatives.

# %%
for s in (1, 2, 3):
    q = ConeParams.sobolev(2, 0.0, s, lambdas=[1.0] * s)
    idx, G = gram_matrix(q, 5)
    h = np.array([basis_norm(q, n, m) for n, m, _ in idx])
    off = np.abs(G - np.diag(np.diag(G))).max()
    print(f"s={s}: off-diagonal {off:.1e}, norm error {np.max(np.abs(np.diag(G) - h) / h):.1e}")
