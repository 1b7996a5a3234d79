"""
How G(2,l) grows with separation at criticality
===============================================

At lambda = 1 the pair measure keeps rising with l. Its limit follows from
the long-range order of the fermionic correlator.
"""

# %%
import numpy as np

from qpt_entanglement import runner

profile = runner.gl_profile(1.0, [1, 2, 5, 10, 20, 50, 100, 200])
for l, g in profile:
    print(f"l={l:4d}  G(2,l)={g:.6f}")

# %%
# The large-l limit is 4/3 (1 - ((1 + 4/pi^2)/2)^2). The approach is slow,
# with the deficit shrinking like l**-0.5, so l = 50 still sits about 0.02 short.
limit = 4 / 3 * (1 - ((1 + 4 / np.pi ** 2) / 2) ** 2)
print("limit", limit)
for l, g in profile[-3:]:
    print(f"l={l:4d} deficit {limit - g:.5f}  deficit*sqrt(l) {(limit - g) * np.sqrt(l):.4f}")
