"""
Where is the closed form exact?
===============================

Sweep n and alpha and record the first alpha at which the recovered input
leaves the simplex.  The boundary moves towards zero as n grows.
"""

# %%
from wchan import run_sweep
from wchan.sweep import alpha_grid

alphas = alpha_grid(0.01, 0.45, 0.01)
records = run_sweep(10, alphas)

# %%
print(" n  first invalid alpha   max |closed - BA| while valid")
for n in range(1, 11):
    rows = [r for r in records if r.n == n]
    bad = [r.alpha for r in rows if str(r.validity) != "Valid"]
    gap = max(abs(r.capacity_closed_bits - r.capacity_ba_bits) for r in rows if str(r.validity) == "Valid")
    print(f"{n:>2}  {bad[0] if bad else '-':>19}   {gap:.1e}")

# %% Outside the region the closed-form value stays above the true capacity
worst = min(r.capacity_closed_bits - r.capacity_ba_bits for r in records if str(r.validity) != "Valid")
print("smallest closed - BA over invalid points:", worst)
