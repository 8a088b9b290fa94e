"""Decoherence of a spatially superposed spin coupled to a quantum field.

A static spin (magnetic moment ``mu_B``, Zeeman gap ``Omega``) in a spatial
superposition of two branches separated by ``L`` interacts for a Gaussian
time window of width ``sigma`` with the electromagnetic field, in its vacuum
or a thermal state.  The package evaluates the second-order decoherence
terms, the final density matrix and the decoherence measure, plus the same
quantities for a scalar-field Unruh-DeWitt detector.
"""

from .coherence import (
    SpinDensityMatrix,
    build_density_matrix,
    coherence_formula,
    decoherence_measure,
    density_matrix_from_terms,
    initial_density_matrix,
    l1_coherence,
)
from .em_thermal import DecoherenceBreakdown, ThermalTerms, thermal_terms, total_terms
from .em_vacuum import VacuumTerms, vacuum_terms
from .params import (
    FieldState,
    InitialSpinState,
    InPlaneSplit,
    NegativeQuantity,
    PerturbativityWarning,
    SpinFieldParams,
    SplitGeometry,
    ZSplit,
    validate,
)
from .quadrature import NonFiniteIntegrand, NotConverged
from .si import TabletopScenario, dimensionless_from_si, tabletop_report
from .udw import udw_decoherence

__version__ = "0.1.0"
