"""
Thermal contributions
=====================

In a thermal field state every term gains a Bose-weighted part, computed
as a one-dimensional radial integral.  The total decoherence never
decreases with temperature.
"""

import numpy as np

from spindeco import InPlaneSplit, SpinFieldParams, thermal_terms, total_terms
from spindeco.params import FieldState
from spindeco.quadrature import oracle_em_term

geom = InPlaneSplit(0.0)
p = SpinFieldParams(coupling=1.0, gap=0.5, separation=1.0, temperature=1.0)

th = thermal_terms(p, geom)
print(th)

# cross-check one term against the brute-force 3D momentum integral
ref = oracle_em_term("d_nl", p, geom, FieldState.THERMAL)
print("D_nl^beta closed 1D:", th.d_nl_beta, " 3D oracle:", ref.real)

for T in np.linspace(0.0, 2.0, 9):
    b = total_terms(p.replace(temperature=T), geom)
    print(f"T={T:4.2f}  D={b.total:.10f}  (vacuum part {b.vacuum_total:.10f})")
