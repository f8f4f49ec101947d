"""
Closed-form inverse
===================

Flipping the sign of every entry with odd index sum gives a matrix whose
product with A is (1 - 2 alpha)^n times the identity.  Dividing by that
factor gives the inverse.  Accuracy falls off as alpha approaches 1/2
because the factor grows like (1 - 2 alpha)^-n.
"""

# %%
import numpy as np

from wchan import (
    ChannelParams,
    SingularAlpha,
    build_inverse,
    build_matrix,
    numeric_inverse_oracle,
    signed_companion,
)

np.set_printoptions(precision=4, suppress=True)

# %%
params = ChannelParams(2, 0.1)
a = build_matrix(params)
print("A @ A* =\n", a.entries @ signed_companion(a))
print("inverse =\n", build_inverse(params).entries)

# %% Residual of A @ inv(A) - I across alpha
for alpha in (0.01, 0.1, 0.2, 0.3, 0.4, 0.45, 0.49):
    errs = []
    for n in (2, 6, 10):
        p = ChannelParams(n, alpha)
        errs.append(np.abs(build_matrix(p).entries @ build_inverse(p).entries - np.eye(n + 1)).max())
    print(f"alpha={alpha:<5} n=2,6,10 residuals: " + "  ".join(f"{e:.1e}" for e in errs))

# %% Gaussian elimination agrees with the closed form
p = ChannelParams(5, 0.3)
print("max |elimination - closed form|:",
      np.abs(numeric_inverse_oracle(build_matrix(p)) - build_inverse(p).entries).max())

# %% alpha = 1/2 is singular: every row is the same binomial distribution
try:
    build_inverse(ChannelParams(3, 0.5))
except SingularAlpha as exc:
    print("SingularAlpha:", exc)
