"""Unruh-DeWitt detector: a two-level system coupled linearly to a massless scalar field.

Only amplitude damping is present, and the nonlocal term does not depend on
the split direction.  ``coupling`` in :class:`~spindeco.params.SpinFieldParams`
is the dimensionless coupling lambda here.
"""

from __future__ import annotations

import math

import numpy as np

from .em_thermal import DecoherenceBreakdown, ThermalTerms
from .em_vacuum import VacuumTerms
from .params import FieldState, SpinFieldParams, as_validated
from .quadrature import RadialIntegrand, integrate_radial
from .specfun import dawson, erfc

__all__ = [
    "UdwParams",
    "udw_deexcitation_probability",
    "udw_decoherence",
    "udw_excitation_probability",
    "udw_nonlocal",
    "udw_thermal_terms",
]

UdwParams = SpinFieldParams

SQRT_PI = math.sqrt(math.pi)
# below this, D+(x)/x is summed from its Taylor series
_SMALL_X = 0.05


def _bracket(x: float) -> float:
    return math.exp(-x * x) - SQRT_PI * x * float(erfc(x))


def udw_excitation_probability(params: SpinFieldParams) -> float:
    p = as_validated(params)
    return p.coupling**2 / (4 * math.pi) * _bracket(p.gap)


def udw_deexcitation_probability(params: SpinFieldParams) -> float:
    p = as_validated(params)
    return p.coupling**2 / (4 * math.pi) * _bracket(-p.gap)


def _dawson_ratio(x: float) -> float:
    """D+(x)/x, equal to 1 at x = 0."""
    if x < _SMALL_X:
        x2 = x * x
        return 1.0 - 2 * x2 / 3 + 4 * x2 * x2 / 15 - 8 * x2**3 / 105 + 16 * x2**4 / 945
    return float(dawson(x)) / x


def udw_nonlocal(params: SpinFieldParams) -> float:
    """Vacuum nonlocal term, real and non-negative for every split direction."""
    p = as_validated(params)
    return p.coupling**2 / (4 * math.pi) * math.exp(-p.gap**2) * _dawson_ratio(p.separation / 2)


def _sinc_scaled(k, L):
    """sin(kL)/L, tending to k as L -> 0."""
    x = k * L
    out = np.empty_like(x)
    small = np.abs(x) < 1e-3
    xs = x[small]
    out[small] = k[small] * (1 - xs * xs / 6 + xs**4 / 120)
    out[~small] = np.sin(x[~small]) / L
    return out


def udw_thermal_terms(params: SpinFieldParams) -> tuple[float, float]:
    """Bose-weighted transition probability and nonlocal term ``(p_beta, m_nl_beta)``."""
    p = as_validated(params)
    if p.temperature == 0:
        return 0.0, 0.0
    beta = 1.0 / p.temperature
    w = p.gap
    lam2 = p.coupling**2

    def p_kernel(k):
        return k * 0.5 * (np.exp(-((k - w) ** 2)) + np.exp(-((k + w) ** 2)))

    p_int = integrate_radial(RadialIntegrand(p_kernel, beta=beta, center=w), tol=1e-16, rel_tol=1e-11)
    L = p.separation

    def m_kernel(k):
        return np.exp(-k * k) * _sinc_scaled(k, L)

    m_int = integrate_radial(RadialIntegrand(m_kernel, beta=beta), tol=1e-16, rel_tol=1e-11)
    p_beta = lam2 / math.pi * float(p_int.unwrap("scalar thermal transition probability"))
    m_beta = lam2 / math.pi * math.exp(-w * w) * float(m_int.unwrap("scalar thermal nonlocal term"))
    return p_beta, m_beta


def udw_decoherence(params: SpinFieldParams, state: FieldState | None = None) -> DecoherenceBreakdown:
    """Decoherence breakdown for the scalar detector; phase-damping fields are zero."""
    p = as_validated(params)
    pe = udw_excitation_probability(p)
    pd = udw_deexcitation_probability(p)
    vac = VacuumTerms(
        p_excite=pe, p_deexcite=pd, a_loc=0.5 * (pe + pd), d_loc=0.0, d_nl=0.0, m_nl=complex(udw_nonlocal(p))
    )
    if state is FieldState.VACUUM or p.temperature == 0:
        return DecoherenceBreakdown(vac, ThermalTerms())
    p_beta, m_beta = udw_thermal_terms(p)
    th = ThermalTerms(
        p_excite_beta=p_beta, p_deexcite_beta=p_beta, a_loc_beta=p_beta, m_nl_beta=complex(m_beta)
    )
    return DecoherenceBreakdown(vac, th)
