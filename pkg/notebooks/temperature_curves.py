"""
Decoherence against temperature
===============================

At L = 1 the decoherence grows monotonically with the field temperature
for every gap, for both split directions.
"""

import numpy as np

from spindeco import InPlaneSplit, SpinFieldParams, ZSplit, total_terms

T = np.linspace(0.0, 2.0, 21)
for gap in (0.0, 0.5, 1.0):
    for geom in (ZSplit(), InPlaneSplit(0.0)):
        D = [total_terms(SpinFieldParams(1.0, gap, 1.0, t), geom).total for t in T]
        print(f"gap={gap} {geom.axis:7s}", " ".join(f"{d:.4f}" for d in D[::4]),
              "monotone:", bool(np.all(np.diff(D) >= 0)))
