"""
Closed-form capacity
====================

Working in the output distribution q instead of the input p turns the
stationarity conditions into q_j = 2^(K_j - nu - 1).  The input is then
recovered through the inverse matrix.  Blahut-Arimoto serves as reference.
"""

# %%
import numpy as np

from wchan import (
    ChannelParams,
    blahut_arimoto,
    build_inverse,
    build_matrix,
    solve_closed_form,
    stationarity_residual,
)

np.set_printoptions(precision=5, suppress=True)


def report(n, alpha):
    params = ChannelParams(n, alpha)
    a = build_matrix(params)
    inv = build_inverse(params, a)
    sol = solve_closed_form(a, inv)
    ba = blahut_arimoto(a)
    print(f"n={n} alpha={alpha}")
    print("  K  =", sol.k_vector)
    print("  q* =", sol.q_star)
    print("  p* =", sol.p_star)
    print(f"  closed form {sol.capacity_bits:.8f} bits ({sol.capacity_role}), "
          f"Blahut-Arimoto {ba.capacity_bits:.8f} bits, {ba.iterations} iterations")
    print(f"  stationarity residual {stationarity_residual(a, inv, sol):.1e}")


# %% A single binary symmetric channel: capacity 1 - H_b(alpha)
report(1, 0.1)

# %% Two channels, small alpha: p* is a distribution and the value is exact
report(2, 0.1)

# %% Two channels, alpha = 0.2: the middle input would need negative mass,
# the closed-form value is only an upper bound
report(2, 0.2)
