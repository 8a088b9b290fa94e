"""
Vacuum decoherence terms
========================

A static spin-1/2 in a spatial superposition of two branches, switched on
with a Gaussian of unit width, decoheres through the magnetic field it
couples to.  In the vacuum every contribution has a closed form.
"""

import numpy as np

from spindeco import InPlaneSplit, SpinFieldParams, ZSplit, vacuum_terms

# dimensionless inputs: coupling mu_B/sigma, gap Omega*sigma, separation L/sigma
p = SpinFieldParams(coupling=1e-2, gap=0.5, separation=1.0)

for geom in (ZSplit(), InPlaneSplit(0.0)):
    v = vacuum_terms(p, geom)
    print(geom.axis, "A_loc", v.a_loc, "D_loc", v.d_loc, "D_nl", v.d_nl, "M_nl", v.m_nl)

# the two branches coincide as L -> 0: the nonlocal phase damping tends to
# the local one and cancels it in the total
L = np.logspace(-3, 1.5, 10)
for x in L:
    v = vacuum_terms(p.replace(separation=x), InPlaneSplit(0.0))
    print(f"L={x:9.3g}  D_nl/D_loc = {v.d_nl / v.d_loc: .6f}  |M_nl|/A_loc = {abs(v.m_nl) / v.a_loc: .6f}")

# an in-plane split at angle theta only rotates the phase of M_nl
for theta in (0.0, np.pi / 4, np.pi / 2):
    print(theta, vacuum_terms(p, InPlaneSplit(theta)).m_nl)
