"""Minkowski-vacuum decoherence terms for a Gaussian-switched static spin.

Every function takes dimensionless parameters (units of the switching
width) and returns the term including the ``coupling**2`` prefactor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .params import SpinFieldParams, SplitGeometry, as_validated
from .specfun import dawson, erfc

__all__ = [
    "VacuumTerms",
    "deexcitation_probability",
    "excitation_probability",
    "local_amplitude_damping",
    "local_phase_damping",
    "nonlocal_amplitude_damping",
    "nonlocal_amplitude_damping_abs",
    "nonlocal_phase_damping",
    "vacuum_terms",
]

SQRT_PI = math.sqrt(math.pi)
# below this separation the brackets are summed from their Taylor series
SERIES_SEPARATION = 1.0
_N_SERIES = 40


def _dawson_half_series(n: int) -> np.ndarray:
    """Power-series coefficients (in L) of D+(L/2)."""
    coef = np.zeros(2 * n + 2)
    dfact = 1.0
    for j in range(n + 1):
        if j:
            dfact *= 2 * j + 1
        coef[2 * j + 1] = (-1) ** j / (2.0 ** (j + 1) * dfact)
    return coef


def _bracket_series(free, times_dawson, power: int) -> np.ndarray:
    """Coefficients of (free(L) + times_dawson(L) * D+(L/2)) / L**power."""
    d = _dawson_half_series(_N_SERIES)
    full = P.polyadd(free, P.polymul(times_dawson, d))[: 2 * _N_SERIES]
    head = full[:power]
    assert np.allclose(head, 0.0, atol=1e-15), head
    return full[power:]


# -L + (L^2 + 2) D+        divided by L^3
_DNL_Z = _bracket_series([0, -1], [2, 0, 1], 3)
# L^3 + 2L - (L^4 + 4) D+  divided by L^3
_DNL_X = _bracket_series([0, 2, 0, 1], [-4, 0, 0, 0, -1], 3)
# L (L^2/6 + 1) - 2 (L^4/12 + L^2/3 + 1) D+  divided by L^5
_MNL_X = _bracket_series([0, 1, 0, 1 / 6], [-2, 0, -2 / 3, 0, -1 / 6], 5)


@dataclass(frozen=True)
class VacuumTerms:
    p_excite: float
    p_deexcite: float
    a_loc: float
    d_loc: float
    d_nl: float
    m_nl: complex

    @property
    def m_nl_abs(self) -> float:
        return abs(self.m_nl)


def _transition_bracket(x: float) -> float:
    return 2 * math.exp(-x * x) * (1 + x * x) - SQRT_PI * x * (3 + 2 * x * x) * float(erfc(x))


def excitation_probability(params: SpinFieldParams) -> float:
    """Probability of the down -> up spin flip along one branch."""
    p = as_validated(params)
    return p.coupling**2 / (6 * math.pi) * _transition_bracket(p.gap)


def deexcitation_probability(params: SpinFieldParams) -> float:
    """Probability of the up -> down spin flip, equal to the excitation probability at -gap."""
    p = as_validated(params)
    return p.coupling**2 / (6 * math.pi) * _transition_bracket(-p.gap)


def local_amplitude_damping(params: SpinFieldParams) -> float:
    """Re of the local amplitude-damping term: mean of the two transition probabilities."""
    return 0.5 * (excitation_probability(params) + deexcitation_probability(params))


def local_phase_damping(params: SpinFieldParams) -> float:
    p = as_validated(params)
    return p.coupling**2 / (6 * math.pi)


def nonlocal_phase_damping(params: SpinFieldParams, geom: SplitGeometry) -> float:
    """Re of the nonlocal phase-damping term for the given split geometry."""
    p = as_validated(params)
    L = p.separation
    c2 = p.coupling**2
    if geom.is_z:
        if L < SERIES_SEPARATION:
            return c2 / (2 * math.pi) * float(P.polyval(L, _DNL_Z))
        return c2 / (2 * math.pi * L**3) * (-L + (L * L + 2) * float(dawson(L / 2)))
    if L < SERIES_SEPARATION:
        return c2 / (8 * math.pi) * float(P.polyval(L, _DNL_X))
    return c2 / (8 * math.pi * L**3) * (L**3 + 2 * L - (L**4 + 4) * float(dawson(L / 2)))


def _m_nl_reference(p) -> float:
    """Nonlocal amplitude-damping term for a split along +x (real, signed)."""
    L = p.separation
    pref = -3 * p.coupling**2 * math.exp(-p.gap**2) / (4 * math.pi)
    if L < SERIES_SEPARATION:
        return pref * L * L * float(P.polyval(L, _MNL_X))
    bracket = L * (L * L / 6 + 1) - 2 * (L**4 / 12 + L * L / 3 + 1) * float(dawson(L / 2))
    return pref * bracket / L**3


def nonlocal_amplitude_damping(params: SpinFieldParams, geom: SplitGeometry) -> complex:
    """Complex nonlocal amplitude-damping term.

    Zero for a z split.  For an in-plane split at angle theta the value is
    the x-split result times ``exp(-2i theta)``.
    """
    p = as_validated(params)
    if geom.is_z:
        return 0j
    return complex(_m_nl_reference(p) * cmath.exp(-2j * geom.angle))


def nonlocal_amplitude_damping_abs(params: SpinFieldParams, geom: SplitGeometry) -> float:
    return abs(nonlocal_amplitude_damping(params, geom))


def vacuum_terms(params: SpinFieldParams, geom: SplitGeometry) -> VacuumTerms:
    p = as_validated(params)
    pe = excitation_probability(p)
    pd = deexcitation_probability(p)
    return VacuumTerms(
        p_excite=pe,
        p_deexcite=pd,
        a_loc=0.5 * (pe + pd),
        d_loc=local_phase_damping(p),
        d_nl=nonlocal_phase_damping(p, geom),
        m_nl=nonlocal_amplitude_damping(p, geom),
    )
