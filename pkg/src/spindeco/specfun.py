"""Special functions for the Gaussian-switching closed forms.

The error-function family and Dawson's integral are thin wrappers over
``scipy.special`` (Cephes / Faddeeva implementations, accurate to a few
ulp).  Switching functions and their Fourier transforms live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "NyquistExceeded",
    "SwitchingFunction",
    "dawson",
    "erf",
    "erfc",
    "erfi",
    "gaussian_fourier",
    "gaussian_switching",
    "tabulated_fourier",
]

SQRT_2PI = math.sqrt(2 * math.pi)


def dawson(x):
    """Dawson function D+(x) = sqrt(pi)/2 exp(-x^2) erfi(x)."""
    return special.dawsn(x)


def erf(x):
    return special.erf(x)


def erfc(x):
    """Complementary error function, underflowing gracefully to 0 for large x."""
    return special.erfc(x)


def erfi(x):
    return special.erfi(x)


def gaussian_switching(tau):
    """chi(tau) = exp(-tau^2 / 2) with unit width."""
    tau = np.asarray(tau, dtype=float)
    return np.exp(-0.5 * tau * tau)


def gaussian_fourier(omega):
    """Fourier transform of the unit-width Gaussian switching, sqrt(2 pi) exp(-omega^2/2)."""
    omega = np.asarray(omega, dtype=float)
    out = SQRT_2PI * np.exp(-0.5 * omega * omega)
    return out if out.ndim else float(out)


class NyquistExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SwitchingFunction:
    """A switching function sampled on the uniform grid ``tau0 + n*dtau``.

    Use :meth:`gaussian` for the analytic Gaussian kind; tabulated
    switchings must decay below ``1e-12`` at both ends of the grid.
    """

    samples: np.ndarray | None = None
    tau0: float = 0.0
    dtau: float = 1.0
    kind: str = "tabulated"

    DECAY = 1e-12

    def __post_init__(self):
        if self.kind == "gaussian":
            return
        if self.kind != "tabulated":
            raise ValueError(f"unknown switching kind {self.kind!r}")
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size < 3:
            raise ValueError("tabulated switching needs a 1D array of >= 3 samples")
        if self.dtau <= 0:
            raise ValueError("dtau must be positive")
        if abs(samples[0]) > self.DECAY or abs(samples[-1]) > self.DECAY:
            raise ValueError("tabulated switching must decay below 1e-12 at both grid ends")
        object.__setattr__(self, "samples", samples)

    @classmethod
    def gaussian(cls) -> "SwitchingFunction":
        return cls(kind="gaussian")

    @classmethod
    def tabulate(cls, func, lo: float, hi: float, n: int) -> "SwitchingFunction":
        tau = np.linspace(lo, hi, n)
        return cls(np.asarray(func(tau), dtype=float), tau0=lo, dtau=tau[1] - tau[0])

    @property
    def tau(self) -> np.ndarray:
        return self.tau0 + self.dtau * np.arange(self.samples.size)

    def __call__(self, tau):
        if self.kind == "gaussian":
            return gaussian_switching(tau)
        return np.interp(tau, self.tau, self.samples, left=0.0, right=0.0)


def tabulated_fourier(chi: SwitchingFunction, omega: float) -> tuple[complex, float]:
    """Fourier integral of a tabulated switching at frequency ``omega``.

    Returns ``(value, error_estimate)``.  The value is the trapezoid rule on
    the sample grid; the error estimate is its difference from the rule on
    every other sample.

    Raises
    ------
    NyquistExceeded
        If ``|omega| > pi / dtau``.
    """
    if chi.kind == "gaussian":
        return complex(gaussian_fourier(omega)), 0.0
    if abs(omega) > math.pi / chi.dtau:
        raise NyquistExceeded(f"|omega|={abs(omega):g} exceeds the grid Nyquist bound {math.pi / chi.dtau:g}")
    f = chi.samples * np.exp(1j * omega * chi.tau)
    fine = chi.dtau * (f.sum() - 0.5 * (f[0] + f[-1]))
    coarse_f = f[::2]
    coarse = 2 * chi.dtau * (coarse_f.sum() - 0.5 * (coarse_f[0] + coarse_f[-1]))
    # even sample count leaves the last point off the coarse grid
    if f.size % 2 == 0:
        coarse += 0.5 * chi.dtau * (f[-2] + f[-1])
    return complex(fine), float(abs(fine - coarse))
