"""Tour of the pair-channel model: force gradient, noise trade-off, minimal rate.

Run from the repository root after installing the package:

    python demos/01_pair_channel_rates.py
"""

import numpy as np

from gravdec import (constants, decoherence_coefficient, force_gradient,
                     min_decoherence_rate, newtonian_expansion, optimal_noise)
from gravdec.constants import EARTH_MASS, EARTH_RADIUS, RB87_MASS

C = constants()

# ----------------------------------------------------------------------
# A rubidium atom against the whole Earth, treated as a point at one
# Earth radius. The force gradient sets everything.
# ----------------------------------------------------------------------
K = force_gradient(RB87_MASS, EARTH_MASS, EARTH_RADIUS)
print(f"force gradient K = {K:.3e} N/m")

# The channel's dephasing coefficient is 1/(4D) + K^2 D / (4 hbar^2):
# too little measurement noise reveals the positions, too much feeds
# noisy feedback. The optimum sits at D* = hbar/K.
d_star = optimal_noise(K)
print(f"optimal noise parameter D* = {d_star:.3e} m^2 s")
for factor in (0.1, 1.0, 10.0):
    D = factor * d_star
    print(f"  coefficient at {factor:>4} D*: {decoherence_coefficient(K, D):.4e} m^-2 s^-1")

# Minimal dephasing rate for a half-metre superposition, the scale the
# large fountain actually reached:
rate = min_decoherence_rate(K, 0.54)
print(f"minimal rate at dx = 0.54 m: {rate.gamma:.1f} s^-1 "
      f"(coherence time {1.0 / rate.gamma:.2e} s)")
print("-> any interferometer holding such a superposition for a second "
      "should have lost all contrast\n")

# ----------------------------------------------------------------------
# The quadratic potential expansion behind the channel's unitary part.
# ----------------------------------------------------------------------
d = 1.0
for s in np.geomspace(1e-1, 1e-4, 4):
    exact = -C.G / (d + s)
    approx = newtonian_expansion(1.0, 1.0, d, s, 0.0)
    print(f"s/d = {s:.0e}: expansion error {abs(approx - exact) / abs(exact):.2e} "
          "(cubic in s/d)")
