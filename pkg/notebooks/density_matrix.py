"""
Final spin density matrix
=========================

Starting from alpha|up> + e^{i phi} sqrt(1 - alpha^2)|down> in a
superposition of two branches, the reduced state after the interaction
lives on the four (spin, branch) basis states.  Its l1 coherence equals
2|rho_14(0)|(1 - D) to leading order.
"""

import numpy as np

from spindeco import (
    InitialSpinState,
    InPlaneSplit,
    SpinFieldParams,
    build_density_matrix,
    coherence_formula,
    decoherence_measure,
    l1_coherence,
)

init = InitialSpinState(amplitude=0.6, phase=0.3)
p = SpinFieldParams(coupling=1e-2, gap=0.5, separation=3.0, temperature=0.5)
geom = InPlaneSplit(0.0)

rho = build_density_matrix(init, p, geom)
np.set_printoptions(precision=3, linewidth=120)
print(rho.entries)
print("trace", rho.trace, "hermiticity error", rho.hermiticity_error())
print("eigenvalues", rho.eigenvalues())
print("l1 coherence", l1_coherence(rho), "formula", coherence_formula(init, decoherence_measure(p, geom)))
