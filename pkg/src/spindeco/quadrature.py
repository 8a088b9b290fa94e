"""Numerical integration engine.

Two layers live here:

* :func:`adaptive_gk` / :func:`integrate_radial`, a vectorised adaptive
  Gauss-Kronrod (7/15) integrator used for every Bose-weighted radial
  integral in the package;
* the brute-force momentum-space oracles, which evaluate each decoherence
  term as a full three-dimensional integral over k in spherical coordinates
  (adaptive in |k|, Gauss-Legendre in theta, uniform in phi) starting from
  the polarisation-summed integrands, before any angular reduction.  The
  oracles never call the closed forms in :mod:`spindeco.em_vacuum` or the
  1D reductions in :mod:`spindeco.em_thermal`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .params import FieldState, SplitGeometry, SpinFieldParams, as_validated
from .specfun import gaussian_fourier

__all__ = [
    "NonFiniteIntegrand",
    "NotConverged",
    "QuadratureResult",
    "RadialIntegrand",
    "adaptive_gk",
    "bose_factor",
    "integrate_radial",
    "oracle_em_nonlocal",
    "oracle_em_term",
    "oracle_transition_probability",
    "oracle_udw_term",
]

# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

GK_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
GK_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss weights on the full 15-point layout (zero on pure Kronrod nodes)
G_WEIGHTS = np.zeros(15)
G_WEIGHTS[[1, 3, 5]] = _WG[:3]
G_WEIGHTS[7] = _WG[3]
G_WEIGHTS[[9, 11, 13]] = _WG[2::-1]

# Beyond this distance from the Gaussian centre the integrands are < 1e-31 of their peak.
GAUSSIAN_WIDTH = 12.0
SERIES_CUTOFF = 1e-4
MAX_INTERVALS = 4000


class NotConverged(RuntimeError):
    def __init__(self, result: "QuadratureResult", what: str = "integral"):
        self.result = result
        super().__init__(
            f"{what} did not converge: error estimate {result.error_estimate:.3g} "
            f"> tolerance {result.tolerance:.3g} after {result.evaluations} evaluations"
        )


class NonFiniteIntegrand(FloatingPointError):
    def __init__(self, k: float):
        self.k = k
        super().__init__(f"integrand is not finite at k={k!r}")


@dataclass(frozen=True)
class QuadratureResult:
    value: float | complex
    error_estimate: float
    evaluations: int
    converged: bool
    tolerance: float = 0.0

    def unwrap(self, what: str = "integral"):
        """Return the value, raising :class:`NotConverged` if it is unreliable."""
        if not self.converged:
            raise NotConverged(self, what)
        return self.value


def _fsum(values: np.ndarray):
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


def adaptive_gk(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    abs_tol: float = 1e-14,
    rel_tol: float = 1e-10,
    breakpoints=(),
    max_intervals: int = MAX_INTERVALS,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod 7/15 integration of ``func`` over ``[a, b]``.

    ``func`` must accept a 1D array of abscissae and return values of the
    same shape (real or complex).  Every interval whose error estimate
    exceeds its width-proportional share of the tolerance is bisected;
    the loop stops once the summed error is below
    ``max(abs_tol, rel_tol * |value|)``.  The final sum runs over intervals
    in left-endpoint order with :func:`math.fsum`, so results do not depend
    on evaluation order.
    """
    if not (b > a):
        if a == b:
            return QuadratureResult(0.0, 0.0, 0, True, abs_tol)
        raise ValueError("need a < b")
    edges = np.unique(np.clip(np.concatenate([[a, b], np.asarray(breakpoints, dtype=float)]), a, b))
    lo, hi = edges[:-1], edges[1:]
    width_total = b - a
    vals = np.empty(0)
    errs = np.empty(0)
    los = np.empty(0)
    his = np.empty(0)
    evaluations = 0
    while True:
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        x = (mid[:, None] + half[:, None] * GK_NODES[None, :]).ravel()
        fx = np.asarray(func(x)).reshape(lo.size, 15)
        evaluations += x.size
        if not np.all(np.isfinite(fx)):
            bad = np.argwhere(~np.isfinite(fx))[0]
            raise NonFiniteIntegrand(float(x.reshape(lo.size, 15)[tuple(bad)]))
        kron = half * (fx @ GK_WEIGHTS)
        gauss = half * (fx @ G_WEIGHTS)
        err = np.abs(kron - gauss)
        if vals.size == 0 and np.iscomplexobj(kron):
            vals = vals.astype(complex)
        vals = np.concatenate([vals, kron])
        errs = np.concatenate([errs, err])
        los = np.concatenate([los, lo])
        his = np.concatenate([his, hi])

        order = np.argsort(los, kind="stable")
        vals, errs, los, his = vals[order], errs[order], los[order], his[order]
        total = _fsum(vals)
        total_err = math.fsum(errs)
        tol = max(abs_tol, rel_tol * abs(total))
        if total_err <= tol:
            return QuadratureResult(total, total_err, evaluations, True, tol)
        if los.size >= max_intervals:
            return QuadratureResult(total, total_err, evaluations, False, tol)
        split = errs > tol * (his - los) / width_total
        if not np.any(split):
            split = errs == errs.max()
        centre = 0.5 * (los[split] + his[split])
        lo = np.concatenate([los[split], centre])
        hi = np.concatenate([centre, his[split]])
        if np.any(hi - lo <= 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(lo))):
            return QuadratureResult(total, total_err, evaluations, False, tol)
        keep = ~split
        vals, errs, los, his = vals[keep], errs[keep], los[keep], his[keep]


def bose_factor(k, beta: float):
    """Bose-Einstein occupation 1/(exp(beta k) - 1), stable as beta*k -> 0."""
    x = beta * np.asarray(k, dtype=float)
    out = np.empty_like(x)
    small = x < SERIES_CUTOFF
    xs = x[small]
    out[small] = 1.0 / xs - 0.5 + xs / 12.0
    xl = x[~small]
    with np.errstate(over="ignore"):
        out[~small] = 1.0 / np.expm1(xl)
    return out


@dataclass(frozen=True)
class RadialIntegrand:
    """Integrand ``kernel(k) * weight(k)`` on ``0 <= k < inf``.

    ``beta=None`` means vacuum (no weight); otherwise the Bose factor at
    inverse temperature ``beta`` multiplies the kernel.  ``center`` marks the
    peak of the Gaussian envelope: integration runs over
    ``[max(0, center - 12), center + 12]`` unless ``upper`` is given.
    """

    kernel: Callable[[np.ndarray], np.ndarray]
    beta: float | None = None
    center: float = 0.0
    upper: float | None = None

    def __call__(self, k):
        k = np.asarray(k, dtype=float)
        val = self.kernel(k)
        if self.beta is not None:
            val = val * bose_factor(k, self.beta)
        return val

    @property
    def limits(self) -> tuple[float, float]:
        if self.upper is not None:
            return 0.0, float(self.upper)
        return max(0.0, self.center - GAUSSIAN_WIDTH), self.center + GAUSSIAN_WIDTH


def integrate_radial(
    f: RadialIntegrand, tol: float = 1e-14, rel_tol: float = 1e-11, pieces: int = 8
) -> QuadratureResult:
    """Integrate a :class:`RadialIntegrand` over its truncated half line.

    The range is pre-split into ``pieces`` equal panels plus a breakpoint at
    the Gaussian centre.  Convergence means the error estimate is below
    ``max(tol, rel_tol * |value|)``; a non-converged result is returned with
    ``converged=False`` rather than raised.
    """
    if tol <= 0 or rel_tol < 0:
        raise ValueError("tolerances must be positive")
    a, b = f.limits
    breaks = list(np.linspace(a, b, pieces + 1)[1:-1])
    if a < f.center < b:
        breaks.append(f.center)
    return adaptive_gk(f, a, b, abs_tol=tol, rel_tol=rel_tol, breakpoints=breaks)


# ---------------------------------------------------------------------------
# 3D spherical oracles
# ---------------------------------------------------------------------------

N_THETA = 64
# the polar axis is put along the split, so the phase does not depend on phi
# and every integrand is a trigonometric polynomial of degree <= 2 in phi:
# a few uniform phi nodes integrate it exactly
N_PHI = 8


def _grid_size(separation: float, n_theta, n_phi):
    """Angular node counts; the theta count grows with the oscillation scale |k| L."""
    if n_theta is None:
        n_theta = max(N_THETA, 32 + int(8 * separation))
    if n_phi is None:
        n_phi = N_PHI
    return n_theta, n_phi


def _frame(u):
    """Orthonormal (e1, e2, u) with u the polar axis."""
    u = np.asarray(u, dtype=float)
    trial = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = trial - u * (trial @ u)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(u, e1), u


@lru_cache(maxsize=8)
def _angular_grid(n_theta: int, n_phi: int):
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = 0.5 * math.pi * (x + 1.0)
    w_theta = 0.5 * math.pi * w
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    w_phi = 2 * math.pi / n_phi
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    # measure sin(theta) dtheta dphi folded into the weights
    weight = (w_theta * np.sin(theta))[:, None] * w_phi * np.ones_like(ph)
    nx = np.sin(th) * np.cos(ph)
    ny = np.sin(th) * np.sin(ph)
    nz = np.cos(th)
    return weight, nx, ny, nz


def _polarisation_sum(kind: str, nx, ny, nz):
    """Polarisation sums divided by |k|^2, as functions of the direction n = k/|k|.

    ``plus_minus``:  sum (k x e)_+ (k x e*)_-  = |k|^2 + k3^2
    ``three_three``: sum (k x e)_3 (k x e*)_3  = |k|^2 - k3^2
    ``minus_minus``: sum (k x e)_- (k x e*)_-  = -k_-^2,  k_- = k1 - i k2
    ``scalar``:      1
    """
    if kind == "plus_minus":
        return 1.0 + nz * nz
    if kind == "three_three":
        return 1.0 - nz * nz
    if kind == "minus_minus":
        return -((nx - 1j * ny) ** 2)
    if kind == "scalar":
        return np.ones_like(nz)
    raise ValueError(kind)


class _AngularIntegral:
    """Callable k -> integral over the unit sphere of pol(n) * phase(k n . d)."""

    # complex work array per chunk is kept at about 2**20 entries
    BLOCK = 1 << 20

    def __init__(self, pol: str, phase: str, separation: float, geom: SplitGeometry,
                 n_theta: int = N_THETA, n_phi: int = N_PHI):
        weight, sx, sy, sz = _angular_grid(n_theta, n_phi)
        self.chunk = max(1, self.BLOCK // weight.size)
        e1, e2, u = _frame(geom.unit_vector())
        # lab-frame components of the direction n
        nx, ny, nz = (sx * e1[i] + sy * e2[i] + sz * u[i] for i in range(3))
        self.w = (weight * _polarisation_sum(pol, nx, ny, nz)).ravel()
        self.proj = (separation * sz).ravel()
        self.phase = phase

    def __call__(self, k: np.ndarray) -> np.ndarray:
        if self.phase not in ("plus", "minus", "cos"):
            raise ValueError(self.phase)
        sign = {"plus": 1.0, "minus": -1.0, "cos": 0.0}[self.phase]
        out = np.empty(k.size, dtype=complex)
        for start in range(0, k.size, self.chunk):
            arg = k[start:start + self.chunk, None] * self.proj[None, :]
            # exp(+-i arg) = cos(arg) +- i sin(arg), with real trig for speed
            val = np.cos(arg) @ self.w
            if sign:
                val = val + sign * 1j * (np.sin(arg) @ self.w)
            out[start:start + self.chunk] = val
        return out


def _chi2(w):
    return gaussian_fourier(w) ** 2


def _em_spec(term: str, gap: float, state: FieldState):
    """(pol, phase, radial factor of |k|, momentum-space prefactor, centre) for an EM term.

    The momentum integrals are taken with d^3k/((2 pi)^3 2|k|) for the vacuum
    Wightman function; the thermal part carries 1/((2 pi)^3 |k|) times the
    Bose factor (the '+ c.c.' doubling).
    """
    thermal = state is FieldState.THERMAL
    pref = 1.0 / (8 * math.pi**3) * (1.0 if thermal else 0.5)
    if term in ("d_nl", "d_loc"):
        return "three_three", ("cos" if thermal else "plus"), (lambda k: _chi2(k)), pref, 0.0
    if term == "m_nl":
        return ("minus_minus", ("cos" if thermal else "minus"),
                (lambda k: gaussian_fourier(gap - k) * gaussian_fourier(gap + k)), pref, 0.0)
    if term in ("p_excite", "p_deexcite"):
        if thermal:
            radial = lambda k: 0.5 * (_chi2(gap + k) + _chi2(gap - k))
        elif term == "p_excite":
            radial = lambda k: _chi2(k + gap)
        else:
            radial = lambda k: _chi2(k - gap)
        return "plus_minus", None, radial, pref, gap
    raise ValueError(f"unknown term {term!r}")


def _run_oracle(pol, phase, radial, pref, centre, params, geom, state, n_theta, n_phi, rel_tol,
                k_power=3):
    separation = params.separation
    n_theta, n_phi = _grid_size(separation, n_theta, n_phi)
    if phase is None:
        ang_const = _AngularIntegral(pol, "cos", 0.0, geom, n_theta, n_phi)(np.zeros(1))[0]
        ang = lambda k: np.full(k.size, ang_const)
    else:
        ang = _AngularIntegral(pol, phase, separation, geom, n_theta, n_phi)
    beta = None
    if state is FieldState.THERMAL:
        if params.temperature == 0:
            return 0.0j
        beta = 1.0 / params.temperature

    # d^3k / |k| = |k| d|k| dOmega; polarisation sums carry another |k|^2
    def kernel(k):
        return k**k_power * radial(k) * ang(k)

    f = RadialIntegrand(kernel, beta=beta, center=centre)
    res = integrate_radial(f, tol=1e-16, rel_tol=rel_tol)
    return params.coupling**2 * pref * complex(res.unwrap("oracle radial integral"))


def oracle_em_term(term: str, params: SpinFieldParams, geom: SplitGeometry, state: FieldState,
                   n_theta: int | None = None, n_phi: int | None = None, rel_tol: float = 1e-11) -> complex:
    """Brute-force 3D momentum integral for one EM decoherence term.

    ``term`` is one of ``p_excite``, ``p_deexcite``, ``d_loc``, ``d_nl``,
    ``m_nl``.  For ``THERMAL`` the temperature-dependent part alone is
    returned.  ``d_loc`` is the same integral as ``d_nl`` with the two
    branches coincident.
    """
    params = as_validated(params)
    if term == "a_loc":
        return 0.5 * (oracle_em_term("p_excite", params, geom, state, n_theta, n_phi, rel_tol)
                      + oracle_em_term("p_deexcite", params, geom, state, n_theta, n_phi, rel_tol))
    pol, phase, radial, pref, centre = _em_spec(term, params.gap, state)
    if term == "d_loc":
        params = params.replace(separation=0.0)
    return _run_oracle(pol, phase, radial, pref, centre, params, geom, state, n_theta, n_phi, rel_tol)


def oracle_em_nonlocal(kind: str, params: SpinFieldParams, geom: SplitGeometry, state: FieldState,
                       n_theta: int | None = None, n_phi: int | None = None) -> complex:
    """Nonlocal term ``"d_nl"`` (phase damping) or ``"m_nl"`` (amplitude damping) by 3D quadrature."""
    if kind not in ("d_nl", "m_nl"):
        raise ValueError(f"kind must be 'd_nl' or 'm_nl', got {kind!r}")
    return oracle_em_term(kind, params, geom, state, n_theta, n_phi)


def oracle_transition_probability(params: SpinFieldParams, sign: int, state: FieldState) -> float:
    """Transition probability from the Fourier-space form.

    ``sign=+1`` is excitation (down -> up, |chi(|k| + gap)|^2), ``sign=-1``
    de-excitation.  For ``THERMAL`` the Bose-weighted part is returned,
    which is the same for both signs.
    """
    term = "p_excite" if sign > 0 else "p_deexcite"
    return oracle_em_term(term, params, SplitGeometry.z_split(), state).real


def _udw_spec(term: str, gap: float, state: FieldState):
    thermal = state is FieldState.THERMAL
    pref = 1.0 / (8 * math.pi**3) * (1.0 if thermal else 0.5)
    if term == "p_excite":
        if thermal:
            radial = lambda k: 0.5 * (_chi2(gap + k) + _chi2(gap - k))
        else:
            radial = lambda k: _chi2(k + gap)
        return "scalar", None, radial, pref, gap
    if term == "p_deexcite":
        if thermal:
            radial = lambda k: 0.5 * (_chi2(gap + k) + _chi2(gap - k))
        else:
            radial = lambda k: _chi2(k - gap)
        return "scalar", None, radial, pref, gap
    if term == "m_nl":
        return ("scalar", ("cos" if thermal else "minus"),
                (lambda k: gaussian_fourier(gap - k) * gaussian_fourier(gap + k)), pref, 0.0)
    raise ValueError(f"unknown term {term!r}")


def oracle_udw_term(term: str, params: SpinFieldParams, geom: SplitGeometry, state: FieldState,
                    n_theta: int | None = None, n_phi: int | None = None, rel_tol: float = 1e-11) -> complex:
    """Scalar-field (Unruh-DeWitt) analogue of :func:`oracle_em_term`.

    ``params.coupling`` plays the role of the dimensionless coupling lambda.
    """
    params = as_validated(params)
    pol, phase, radial, pref, centre = _udw_spec(term, params.gap, state)
    # scalar modes carry 1/sqrt(|k|) with no curl, so d^3k/|k| leaves a single power of |k|
    return _run_oracle(pol, phase, radial, pref, centre, params, geom, state, n_theta, n_phi,
                       rel_tol, k_power=1)
