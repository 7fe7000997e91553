# # Spreading on the line
#
# With a loop of weight l at each vertex the coin on the line is the
# three-state Grover coin deformed by rho = sqrt(l/(l+2)), and the two outer
# peaks of the distribution travel at speed rho.

# %%
import numpy as np

from wqwalk.line import lack_coin, peak_velocity, rho_from_loop_weight, simulate_line, stefanak_coin

l = 10.0
print("coins agree:", np.allclose(lack_coin(l), stefanak_coin(rho_from_loop_weight(l)), atol=1e-14))

# %%
T = 100
print(" l     measured  predicted")
for l in (0.5, 1.0, 2.0, 10.0):
    v = peak_velocity(simulate_line(l, T), T)[1]
    print(f"{l:4g}   {v:.3f}     {rho_from_loop_weight(l):.3f}")

# %% [markdown]
# The flip-flop shift gives a different, narrower walk, and the loopless
# Hadamard walk leaves every odd site empty.

# %%
moving = simulate_line(10, T, "moving")
flip = simulate_line(10, T, "flipflop")
spread = lambda d: float(np.sqrt(np.sum(d.positions**2 * d.probabilities)))
print(f"rms spread  moving {spread(moving):.1f}  flip-flop {spread(flip):.1f}")
loopless = simulate_line(0, T)
print("odd-site mass, loopless:", loopless.probabilities[1::2].sum())
