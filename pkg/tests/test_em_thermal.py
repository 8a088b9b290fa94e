import math

import numpy as np
import pytest
from scipy import integrate

from spindeco.em_thermal import (
    DecoherenceBreakdown,
    ThermalTerms,
    _bracket_m,
    _bracket_x,
    _bracket_z,
    thermal_local_phase_damping,
    thermal_nonlocal_amplitude_damping,
    thermal_nonlocal_amplitude_damping_abs,
    thermal_nonlocal_phase_damping,
    thermal_terms,
    thermal_transition_probability,
    total_terms,
)
from spindeco.em_vacuum import vacuum_terms
from spindeco.params import FieldState, InPlaneSplit, SpinFieldParams, ZSplit
from spindeco.quadrature import oracle_em_nonlocal, oracle_transition_probability


def P(gap=0.0, L=1.0, T=1.0, c=1.0):
    return SpinFieldParams(c, gap, L, T)


def simpson(f, a=0.0, b=12.0, n=1_000_001):
    k = np.linspace(a, b, n)[1:]
    y = f(k)
    # every integrand below vanishes at k = 0
    return integrate.simpson(np.concatenate([[0.0], y]), x=np.concatenate([[0.0], k]))


def test_zero_temperature():
    p = P(T=0.0)
    assert thermal_transition_probability(p) == 0.0
    assert thermal_terms(p, InPlaneSplit()) == ThermalTerms()
    assert thermal_transition_probability(P(T=1e-4)) <= 1e-12


def test_transition_probability_gapless_simpson():
    ref = 4 / (3 * math.pi) * simpson(lambda k: k**3 * np.exp(-k * k) / np.expm1(k))
    assert thermal_transition_probability(P(0.0)) == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("gap,T", [(0.0, 1.0), (0.5, 0.5), (2.0, 2.0), (15.0, 1.0)])
def test_transition_probability_fourier_form(gap, T):
    p = P(gap, T=T)
    ref = oracle_transition_probability(p, +1, FieldState.THERMAL)
    assert thermal_transition_probability(p) == pytest.approx(ref, rel=1e-8)


def test_local_phase_damping():
    assert thermal_local_phase_damping(P(T=0)) == 0.0
    assert thermal_local_phase_damping(P()) == 0.5 * thermal_transition_probability(P(0.0))
    ref = 2 / (3 * math.pi) * simpson(lambda k: k**3 * np.exp(-k * k) / np.expm1(k))
    assert thermal_local_phase_damping(P()) == pytest.approx(ref, abs=1e-9)


def test_brackets_match_direct_evaluation():
    x = np.array([0.5, 0.99, 1.0, 1.5, 7.0, 40.0])
    s, c = np.sin(x), np.cos(x)
    assert np.allclose(_bracket_z(x), (s - x * c) / x**3, rtol=1e-13)
    assert np.allclose(_bracket_x(x), (x * c + (x * x - 1) * s) / x**3, rtol=1e-13)
    assert np.allclose(_bracket_m(x), (3 * x * c + (x * x - 3) * s) / x**3, rtol=1e-12)
    small = np.array([0.0, 1e-8, 1e-3])
    assert np.allclose(_bracket_z(small), 1 / 3 - small**2 / 30, rtol=1e-12)
    assert np.allclose(_bracket_x(small), 2 / 3 - 2 * small**2 / 15, rtol=1e-12)
    assert np.allclose(_bracket_m(small), -(small**2) / 15, rtol=1e-6, atol=0)


@pytest.mark.parametrize("geom", [ZSplit(), InPlaneSplit(0.4)])
def test_dnl_coincidence_limit(geom):
    for L in (0.0, 1e-4):
        val = thermal_nonlocal_phase_damping(P(L=L), geom)
        assert val == pytest.approx(thermal_local_phase_damping(P(L=L)), rel=1e-8)


def test_mnl_zero_cases():
    assert thermal_nonlocal_amplitude_damping(P(0.5), ZSplit()) == 0
    assert thermal_nonlocal_amplitude_damping(P(0.5, L=0.0), InPlaneSplit()) == 0


def test_mnl_small_separation():
    # the bracket over x^3 is -x^2/15 + O(x^4): the term vanishes like L^2
    gap, L = 0.5, 1e-4
    lead = math.exp(-gap**2) / (15 * math.pi) * L**2 * simpson(lambda k: k**5 * np.exp(-k * k) / np.expm1(k))
    val = thermal_nonlocal_amplitude_damping_abs(P(gap, L=L), InPlaneSplit())
    assert val == pytest.approx(lead, rel=1e-6)
    assert thermal_nonlocal_amplitude_damping_abs(P(gap, L=1e-7), InPlaneSplit()) <= 1e-12


@pytest.mark.parametrize("geom", [ZSplit(), InPlaneSplit()])
def test_dnl_against_oracle(geom):
    p = P(0.0, 1.0, 1.0)
    ref = oracle_em_nonlocal("d_nl", p, geom, FieldState.THERMAL).real
    assert thermal_nonlocal_phase_damping(p, geom) == pytest.approx(ref, rel=1e-6)


def test_mnl_against_oracle():
    p = P(0.5, 1.0, 1.0)
    for th in (0.0, 0.7):
        ref = oracle_em_nonlocal("m_nl", p, InPlaneSplit(th), FieldState.THERMAL)
        val = thermal_nonlocal_amplitude_damping(p, InPlaneSplit(th))
        assert abs(val - ref) <= 1e-6 * abs(ref)


@pytest.mark.parametrize("L", [30.0, 60.0, 120.0])
def test_large_separation_power_law(L):
    # small-k Bose tail n ~ T/k gives D_z -> c^2 T/L^3, D_x -> -c^2 T/(2 L^3) and
    # M -> 3 c^2 T exp(-gap^2)/(2 L^3), with O(1/L) corrections
    T, gap = 1.0, 0.5
    p = P(gap, L, T)
    z = thermal_nonlocal_phase_damping(p, ZSplit()) * L**3 / T
    x = thermal_nonlocal_phase_damping(p, InPlaneSplit()) * L**3 / T
    m = thermal_nonlocal_amplitude_damping(p, InPlaneSplit()).real * L**3 / (1.5 * T * math.exp(-gap**2))
    assert abs(z - 1) <= 1 / L
    assert abs(x + 0.5) <= 1 / L
    assert abs(m - 1) <= 1 / L


def test_excitation_equals_deexcitation():
    t = thermal_terms(P(1.3), InPlaneSplit())
    assert t.p_excite_beta == t.p_deexcite_beta == t.a_loc_beta


def test_total_terms_additivity_and_zero_temperature():
    p = P(1.0, 1.0, 1.0)
    b = total_terms(p, ZSplit())
    v, t = vacuum_terms(p, ZSplit()), thermal_terms(p, ZSplit())
    assert b.total == (v.d_nl + t.d_nl_beta) + (v.d_loc + t.d_loc_beta) + (v.a_loc + t.a_loc_beta) - abs(
        v.m_nl + t.m_nl_beta
    )
    b0 = total_terms(P(1.0, 1.0, 0.0), InPlaneSplit())
    assert b0.thermal == ThermalTerms()
    assert b0.total == b0.vacuum_total


def test_total_increases_with_temperature():
    for geom in (ZSplit(), InPlaneSplit()):
        assert total_terms(P(0.5, 1.0, 1.0), geom).total >= total_terms(P(0.5, 1.0, 0.5), geom).total


def test_breakdown_to_dict():
    d = total_terms(P(0.5, 1.0, 1.0), InPlaneSplit(0.3)).to_dict()
    assert {"m_nl_re", "m_nl_im", "m_nl_beta_re", "m_nl_beta_im", "total", "m_nl_abs"} <= set(d)
    assert all(isinstance(v, float) for v in d.values())
    assert isinstance(total_terms(P(), ZSplit()), DecoherenceBreakdown)
