# %% [markdown]
# # The second order operator and its eigenfunctions
#
# With ``beta = -1`` the ordinary basis of degree ``n`` consists of
# eigenfunctions of ``D_gamma`` with eigenvalue ``-n(n+gamma+d-1)``.  With
# ``gamma = -s`` only part of the Sobolev basis keeps this property.

# %%
from conicpoly import ConeParams
from conicpoly.cone import degree_indices
from conicpoly.diffop import eigen_check, eigenspace_U, z_coefficients, z_normalization

d = 3
for s in (1, 2):
    q = ConeParams.sobolev(d, -1.0, s)
    for idx in degree_indices(d, 4):
        if idx.ell == 1:
            rep = eigen_check(q, idx)
            print(f"s={s} (n,m)=({idx.n},{idx.m}): {rep.classified:9s} residual {rep.residual:.1e}")

# %% [markdown]
# The explicit eigenfunctions are ``p(t) Y`` with ``p`` a polynomial in ``1-t``.
# Its coefficients follow from a two-term recurrence.  The profile is a
# multiple of a Jacobi polynomial in ``1-2t``.

# %%
z = z_coefficients(2, 4, 0.5, d)
print("a_{2,i}:", z.coeffs, " scale:", z_normalization(2, 4, 0.5, d))

# %% [markdown]
# The eigenspace for ``gamma = -s`` combines three parts: harmonics, Jacobi
# profiles times lower harmonics, and the ``(1-t)^s`` multiples.  The number
# of elements found matches the dimension of the degree-``n`` space.

# %%
for n in range(1, 5):
    U = eigenspace_U(n, 2, d)
    print(f"n={n}: {U.count} elements, dim V_n = {U.dim_V}, binomial count {U.dim_claimed}")
