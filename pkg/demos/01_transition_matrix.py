"""
Weight-state transition matrix
==============================

n binary channels each flip with probability alpha during one slot.  The
receiver only counts the good ones, so the system moves between the weight
states 0..n.  This script builds the matrix, checks it against a direct
enumeration of flip patterns and against a Monte Carlo run.
"""

# %%
import itertools

import numpy as np

from wchan import ChannelParams, SimConfig, build_matrix, simulate_transitions

np.set_printoptions(precision=4, suppress=True)

# %% Two channels at alpha = 0.1
a2 = build_matrix(ChannelParams(2, 0.1))
print(a2.entries)

# %% Rows sum to one and the matrix is unchanged by relabelling good <-> bad
print("row sums:", a2.entries.sum(axis=1))
print("centrosymmetric:", a2.is_centrosymmetric())

# %% Enumerate every flip pattern for n = 4 and compare
n, alpha = 4, 0.27
enum = np.zeros((n + 1, n + 1))
for w in range(n + 1):
    start = [1] * w + [0] * (n - w)
    for pattern in itertools.product((0, 1), repeat=n):
        k = sum(pattern)
        enum[w, sum(b ^ f for b, f in zip(start, pattern))] += alpha**k * (1 - alpha) ** (n - k)
print("max |formula - enumeration|:", np.abs(build_matrix(ChannelParams(n, alpha)).entries - enum).max())

# %% Monte Carlo with a fixed seed
for trials in (10**3, 10**4, 10**5, 10**6):
    est = simulate_transitions(SimConfig(ChannelParams(3, 0.1), trials, seed=42))
    print(f"{trials:>8} trials/state: max deviation {est.max_abs_deviation:.2e}")
