"""Thermal contributions to the EM decoherence terms.

In a thermal state each two-point function is the vacuum one plus a
Bose-weighted part; the functions here return that temperature-dependent
part as a 1D radial integral, and :func:`total_terms` adds the vacuum
closed forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from math import factorial

import numpy as np
from numpy.polynomial import polynomial as P

from . import em_vacuum
from .params import SpinFieldParams, SplitGeometry, as_validated
from .quadrature import RadialIntegrand, integrate_radial

__all__ = [
    "DecoherenceBreakdown",
    "ThermalTerms",
    "thermal_local_phase_damping",
    "thermal_nonlocal_amplitude_damping",
    "thermal_nonlocal_amplitude_damping_abs",
    "thermal_nonlocal_phase_damping",
    "thermal_terms",
    "thermal_transition_probability",
    "total_terms",
]

REL_TOL = 1e-11
ABS_TOL = 1e-16
_TRIG_SERIES_CUTOFF = 1.0


def _trig_bracket(sin_poly, cos_poly, power: int, n: int = 30):
    """Stable evaluator for (sin_poly(x) sin x + cos_poly(x) cos x) / x**power."""
    sin_c = np.zeros(2 * n + 2)
    cos_c = np.zeros(2 * n + 2)
    for j in range(n + 1):
        sin_c[2 * j + 1] = (-1) ** j / factorial(2 * j + 1)
        cos_c[2 * j] = (-1) ** j / factorial(2 * j)
    series = P.polyadd(P.polymul(sin_poly, sin_c), P.polymul(cos_poly, cos_c))[: 2 * n]
    assert np.allclose(series[:power], 0.0, atol=1e-15)
    series = series[power:]

    def f(x):
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        small = np.abs(x) < _TRIG_SERIES_CUTOFF
        out[small] = P.polyval(x[small], series)
        xl = x[~small]
        out[~small] = (P.polyval(xl, sin_poly) * np.sin(xl) + P.polyval(xl, cos_poly) * np.cos(xl)) / xl**power
        return out

    return f


# sin x - x cos x, over x^3  (-> 1/3)
_bracket_z = _trig_bracket([1], [0, -1], 3)
# x cos x + (x^2 - 1) sin x, over x^3  (-> 2/3)
_bracket_x = _trig_bracket([-1, 0, 1], [0, 1], 3)
# 3x cos x + (x^2 - 3) sin x, over x^3  (-> -x^2/15)
_bracket_m = _trig_bracket([-3, 0, 1], [0, 3], 3)


@dataclass(frozen=True)
class ThermalTerms:
    """Temperature-dependent parts of each term (zero at zero temperature)."""

    p_excite_beta: float = 0.0
    p_deexcite_beta: float = 0.0
    a_loc_beta: float = 0.0
    d_loc_beta: float = 0.0
    d_nl_beta: float = 0.0
    m_nl_beta: complex = 0j

    @property
    def m_nl_beta_abs(self) -> float:
        return abs(self.m_nl_beta)


def _integrate(kernel, p, center=0.0, what="thermal integral") -> float:
    f = RadialIntegrand(kernel, beta=1.0 / p.temperature, center=center)
    return float(integrate_radial(f, tol=ABS_TOL, rel_tol=REL_TOL).unwrap(what))


def thermal_transition_probability(params: SpinFieldParams) -> float:
    """Bose-weighted part of either transition probability (they coincide)."""
    p = as_validated(params)
    if p.temperature == 0:
        return 0.0
    w = p.gap

    # exp(-w^2 - k^2) cosh(2 w k) written without overflow for large gaps
    def kernel(k):
        return k**3 * 0.5 * (np.exp(-((k - w) ** 2)) + np.exp(-((k + w) ** 2)))

    integral = _integrate(kernel, p, center=w, what="thermal transition probability")
    return 4 * p.coupling**2 / (3 * math.pi) * integral


def thermal_local_phase_damping(params: SpinFieldParams) -> float:
    p = as_validated(params)
    if p.temperature == 0:
        return 0.0
    integral = _integrate(lambda k: k**3 * np.exp(-k * k), p, what="thermal local phase damping")
    return 2 * p.coupling**2 / (3 * math.pi) * integral


def thermal_nonlocal_phase_damping(params: SpinFieldParams, geom: SplitGeometry) -> float:
    p = as_validated(params)
    if p.temperature == 0:
        return 0.0
    L = p.separation
    if geom.is_z:
        integral = _integrate(lambda k: k**3 * np.exp(-k * k) * _bracket_z(k * L), p,
                              what="thermal nonlocal phase damping")
        return 2 * p.coupling**2 / math.pi * integral
    integral = _integrate(lambda k: k**3 * np.exp(-k * k) * _bracket_x(k * L), p,
                          what="thermal nonlocal phase damping")
    return p.coupling**2 / math.pi * integral


def thermal_nonlocal_amplitude_damping(params: SpinFieldParams, geom: SplitGeometry) -> complex:
    """Bose-weighted part of the complex nonlocal amplitude-damping term.

    Carries the same ``exp(-2i theta)`` phase as the vacuum part for an
    in-plane split at angle theta; zero for a z split.
    """
    p = as_validated(params)
    if p.temperature == 0 or geom.is_z:
        return 0j
    L = p.separation
    integral = _integrate(lambda k: k**3 * np.exp(-k * k) * _bracket_m(k * L), p,
                          what="thermal nonlocal amplitude damping")
    value = -p.coupling**2 * math.exp(-p.gap**2) / math.pi * integral
    return complex(value * cmath.exp(-2j * geom.angle))


def thermal_nonlocal_amplitude_damping_abs(params: SpinFieldParams, geom: SplitGeometry) -> float:
    return abs(thermal_nonlocal_amplitude_damping(params, geom))


def thermal_terms(params: SpinFieldParams, geom: SplitGeometry) -> ThermalTerms:
    p = as_validated(params)
    if p.temperature == 0:
        return ThermalTerms()
    pb = thermal_transition_probability(p)
    return ThermalTerms(
        p_excite_beta=pb,
        p_deexcite_beta=pb,
        a_loc_beta=pb,
        d_loc_beta=thermal_local_phase_damping(p),
        d_nl_beta=thermal_nonlocal_phase_damping(p, geom),
        m_nl_beta=thermal_nonlocal_amplitude_damping(p, geom),
    )


@dataclass(frozen=True)
class DecoherenceBreakdown:
    """Decoherence terms split into vacuum and thermal parts.

    ``total`` is Re[D_nl + D_loc + A_loc] - |M_nl| with every term the sum
    of its vacuum and thermal parts.  The nonlocal amplitude-damping parts
    are kept complex so that the modulus is taken of their sum.
    """

    vacuum: em_vacuum.VacuumTerms
    thermal: ThermalTerms

    @property
    def a_loc(self) -> float:
        return self.vacuum.a_loc + self.thermal.a_loc_beta

    @property
    def d_loc(self) -> float:
        return self.vacuum.d_loc + self.thermal.d_loc_beta

    @property
    def d_nl(self) -> float:
        return self.vacuum.d_nl + self.thermal.d_nl_beta

    @property
    def m_nl(self) -> complex:
        return self.vacuum.m_nl + self.thermal.m_nl_beta

    @property
    def m_nl_abs(self) -> float:
        return abs(self.m_nl)

    @property
    def total(self) -> float:
        return self.d_nl + self.d_loc + self.a_loc - self.m_nl_abs

    @property
    def vacuum_total(self) -> float:
        v = self.vacuum
        return v.d_nl + v.d_loc + v.a_loc - v.m_nl_abs

    def to_dict(self) -> dict:
        out = {}
        for part in (self.vacuum, self.thermal):
            for key, val in asdict(part).items():
                if isinstance(val, complex):
                    out[key + "_re"] = val.real
                    out[key + "_im"] = val.imag
                else:
                    out[key] = val
        out.update(
            a_loc=self.a_loc,
            d_loc=self.d_loc,
            d_nl=self.d_nl,
            m_nl_abs=self.m_nl_abs,
            total=self.total,
        )
        return out


def total_terms(params: SpinFieldParams, geom: SplitGeometry) -> DecoherenceBreakdown:
    """Vacuum closed forms plus thermal integrals at ``params.temperature``."""
    p = as_validated(params)
    return DecoherenceBreakdown(em_vacuum.vacuum_terms(p, geom), thermal_terms(p, geom))
