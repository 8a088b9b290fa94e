"""
Comparison with a scalar-field detector
=======================================

A two-level detector linearly coupled to a massless scalar field has no
phase-damping channel.  Its decoherence starts at exactly zero for a
gapless detector with coincident branches and grows monotonically with
the separation, unlike the spin case.
"""

import numpy as np

from spindeco import SpinFieldParams, udw_decoherence

logL = np.linspace(-1, 1.5, 11)
for T in (0.0, 1.0):
    for gap in (0.0, 0.5, 1.0):
        D = [udw_decoherence(SpinFieldParams(1.0, gap, 10**x, T)).total for x in logL]
        print(f"T={T} gap={gap}", " ".join(f"{d:.4f}" for d in D))

print("gapless, coincident, vacuum:", udw_decoherence(SpinFieldParams(1.0, 0.0, 0.0, 0.0)).total)
