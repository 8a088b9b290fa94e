"""Tabletop estimates in SI units.

The dimensionless inputs follow from the physical ones as

* coupling  mu_B / sigma = sqrt(4 pi alpha) u / (2 m_e c^2 sigma)
* gap       Omega sigma  = 2 mu_Bohr B0 sigma / u
* temperature            = k_B T sigma / u

where ``u`` is the action unit.  With ``convention="paper"`` (the default)
``u = h``, which reproduces the published tabletop numbers; ``"hbar"`` uses
the reduced constant, i.e. a switching width larger by 2 pi in natural
units.  The interaction time is taken as 10 sigma.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from scipy import constants as sc

from .em_thermal import thermal_transition_probability, thermal_local_phase_damping
from .em_vacuum import local_amplitude_damping, local_phase_damping, vacuum_terms
from .params import SpinFieldParams, SplitGeometry

__all__ = [
    "CODATA",
    "PhysicalConstants",
    "TabletopReport",
    "TabletopScenario",
    "dimensionless_from_si",
    "tabletop_report",
]

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = sc.c
    hbar: float = sc.hbar
    h: float = sc.h
    k_B: float = sc.k
    m_e: float = sc.m_e
    alpha: float = sc.fine_structure
    mu_bohr: float = sc.physical_constants["Bohr magneton"][0]


CODATA = PhysicalConstants()


@dataclass(frozen=True)
class TabletopScenario:
    """Physical inputs.

    Parameters
    ----------
    magnetic_field : float
        B0 in tesla.
    interaction_time : float
        Effective total interaction time 10 sigma, in seconds.
    temperature : float
        Field temperature in kelvin (0 for the vacuum).
    separation : float
        Branch separation in metres.
    """

    magnetic_field: float = 1.0
    interaction_time: float = 1.0
    temperature: float = 100.0
    separation: float = 100e-6

    def __post_init__(self):
        if not self.magnetic_field > 0 or not self.interaction_time > 0:
            raise ValueError("magnetic field and interaction time must be positive")
        if not self.temperature >= 0 or not self.separation >= 0:
            raise ValueError("temperature and separation must be non-negative")

    @property
    def sigma(self) -> float:
        return self.interaction_time / 10.0


def _action_unit(const: PhysicalConstants, convention: str) -> float:
    if convention == "paper":
        return const.h
    if convention == "hbar":
        return const.hbar
    raise ValueError(f"unknown convention {convention!r}")


def dimensionless_from_si(
    scenario: TabletopScenario, convention: str = "paper", const: PhysicalConstants = CODATA
) -> SpinFieldParams:
    """Coupling, gap, separation and temperature in units of the switching width."""
    u = _action_unit(const, convention)
    sigma = scenario.sigma
    coupling = math.sqrt(4 * math.pi * const.alpha) * u / (2 * const.m_e * const.c**2 * sigma)
    gap = 2 * const.mu_bohr * scenario.magnetic_field * sigma / u
    sigma_bar = const.k_B * sigma / u
    # the separation scale is c sigma, with the same 2 pi as the time scale
    length = const.c * sigma * const.hbar / u
    return SpinFieldParams(
        coupling=coupling,
        gap=gap,
        separation=scenario.separation / length,
        temperature=sigma_bar * scenario.temperature,
    )


@dataclass(frozen=True)
class TabletopReport:
    coupling: float
    gap: float
    separation: float
    temperature: float
    sigma_bar: float
    mu_bar: float
    omega_bar: float
    d_loc_vac: float
    a_loc_vac: float
    a_loc_vac_asymptotic: float
    a_loc_beta: float
    a_loc_beta_high_t: float
    d_loc_beta: float
    d_nl_vac: float
    m_nl_vac_abs: float
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def tabletop_report(
    scenario: TabletopScenario,
    convention: str = "paper",
    const: PhysicalConstants = CODATA,
    geom: SplitGeometry | None = None,
) -> TabletopReport:
    """Order-of-magnitude decoherence estimates for a tabletop setting.

    Both the closed asymptotic expressions and the exact values are
    reported.  Nonlocal terms are evaluated at ``scenario.separation``;
    for separations far below c sigma the phase-damping pair equals its
    coincidence limit and the amplitude-damping one is suppressed by
    exp(-gap**2).
    """
    geom = geom if geom is not None else SplitGeometry.in_plane()
    u = _action_unit(const, convention)
    p = dimensionless_from_si(scenario, convention, const)
    c2 = p.coupling**2
    sigma_bar = const.k_B * scenario.sigma / u
    mu_bar = math.sqrt(4 * math.pi * const.alpha) * const.k_B / (2 * const.m_e * const.c**2)
    omega_bar = 2 * const.mu_bohr * scenario.magnetic_field / const.k_B

    vac = vacuum_terms(p, geom)
    a_beta = d_beta = 0.0
    if p.temperature > 0:
        a_beta = thermal_transition_probability(p)
        d_beta = thermal_local_phase_damping(p)
    high_t = 2 * mu_bar**2 * sigma_bar / (3 * SQRT_PI) * omega_bar**2 * scenario.temperature
    notes = [
        f"separation/(c sigma) = {p.separation:.3g}: nonlocal phase damping equals its local value",
        "nonlocal amplitude damping carries exp(-gap^2) and is negligible",
    ]
    return TabletopReport(
        coupling=p.coupling,
        gap=p.gap,
        separation=p.separation,
        temperature=p.temperature,
        sigma_bar=sigma_bar,
        mu_bar=mu_bar,
        omega_bar=omega_bar,
        d_loc_vac=local_phase_damping(p),
        a_loc_vac=local_amplitude_damping(p),
        a_loc_vac_asymptotic=c2 * p.gap**3 / (3 * SQRT_PI),
        a_loc_beta=a_beta,
        a_loc_beta_high_t=high_t,
        d_loc_beta=d_beta,
        d_nl_vac=vac.d_nl,
        m_nl_vac_abs=vac.m_nl_abs,
        notes=notes,
    )
