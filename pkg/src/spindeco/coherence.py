"""Final spin/path density matrix, l1 coherence and the decoherence measure."""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from .em_thermal import DecoherenceBreakdown, ThermalTerms, total_terms
from .em_vacuum import vacuum_terms
from .params import FieldState, InitialSpinState, SpinFieldParams, SplitGeometry, as_validated

__all__ = [
    "BASIS",
    "DecoherenceBreakdown",
    "SpinDensityMatrix",
    "build_density_matrix",
    "coherence_formula",
    "decoherence_measure",
    "density_matrix_from_terms",
    "initial_density_matrix",
    "l1_coherence",
]

BASIS = ("up,C_up", "up,C_down", "down,C_up", "down,C_down")


@dataclass(frozen=True)
class SpinDensityMatrix:
    """4x4 density matrix in the basis :data:`BASIS`.

    Entries are exact to second order in the coupling; the neglected
    corrections are O(coupling**4), so positivity and purity only hold to
    that order.
    """

    entries: np.ndarray
    order: int = 2

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError("density matrix must be 4x4")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def trace(self) -> complex:
        d = np.diag(self.entries)
        return complex(math.fsum(d.real), math.fsum(d.imag))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def to_dict(self) -> dict:
        return {
            "basis": list(BASIS),
            "real": self.entries.real.tolist(),
            "imag": self.entries.imag.tolist(),
        }


def initial_density_matrix(initial: InitialSpinState) -> SpinDensityMatrix:
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = initial.population_up
    m[3, 3] = initial.population_down
    m[0, 3] = initial.coherence
    m[3, 0] = initial.coherence.conjugate()
    return SpinDensityMatrix(m)


def _exact_split(total: float, part: float) -> tuple[float, float]:
    """Return ``(total - part, part')`` whose exact sum is ``total``.

    ``part'`` differs from ``part`` by at most half an ulp of ``total``
    (Fast2Sum, valid for ``0 <= part <= total``).
    """
    rest = total - part
    return rest, total - rest


def density_matrix_from_terms(initial: InitialSpinState, terms: DecoherenceBreakdown) -> SpinDensityMatrix:
    """Assemble the final matrix from an already computed breakdown.

    Imaginary parts of the local terms only shift the phase of rho_14 and
    are not modelled; rho_14 is scaled by the real decoherence factor.
    """
    c0 = initial.coherence
    p_exc = terms.vacuum.p_excite + terms.thermal.p_excite_beta
    p_dex = terms.vacuum.p_deexcite + terms.thermal.p_deexcite_beta
    # populations split so that every pair below sums exactly in floating point:
    # the trace is then exactly 1 at the cost of at most one ulp per entry
    down, up = _exact_split(1.0, initial.population_up)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0], m[2, 2] = _exact_split(up, up * p_dex)
    m[3, 3], m[1, 1] = _exact_split(down, down * p_exc)
    m[0, 3] = c0 * (1.0 - terms.d_nl - terms.a_loc - terms.d_loc)
    m[3, 0] = m[0, 3].conjugate()
    m[1, 2] = c0.conjugate() * terms.m_nl
    m[2, 1] = m[1, 2].conjugate()
    return SpinDensityMatrix(m)


def _resolve_state(params, state):
    if state is None:
        return FieldState.THERMAL if params.temperature > 0 else FieldState.VACUUM
    return state


def decoherence_measure(
    params: SpinFieldParams, geom: SplitGeometry, state: FieldState | None = None
) -> DecoherenceBreakdown:
    """Decoherence breakdown for the EM field.

    ``state=VACUUM`` ignores the temperature; ``THERMAL`` (the default when
    the temperature is positive) adds the Bose-weighted parts.  The result
    does not depend on the initial spin state.
    """
    p = as_validated(params)
    if _resolve_state(p, state) is FieldState.VACUUM:
        return DecoherenceBreakdown(vacuum_terms(p, geom), ThermalTerms())
    return total_terms(p, geom)


def build_density_matrix(
    initial: InitialSpinState,
    params: SpinFieldParams,
    geom: SplitGeometry,
    state: FieldState | None = None,
) -> SpinDensityMatrix:
    return density_matrix_from_terms(initial, decoherence_measure(params, geom, state))


def l1_coherence(rho: SpinDensityMatrix) -> float:
    """Sum of the moduli of all off-diagonal entries."""
    m = np.abs(rho.entries)
    return float(m.sum() - np.trace(m))


def coherence_formula(initial: InitialSpinState, terms: DecoherenceBreakdown) -> float:
    """l1 coherence to second order, 2|rho_14(0)| (1 - D)."""
    return 2 * abs(initial.coherence) * (1.0 - terms.total)
