"""Dimensionless physical inputs shared by every formula in the package.

All quantities are expressed in units of the Gaussian switching width
sigma: ``coupling`` is mu_B/sigma, ``gap`` is Omega*sigma, ``separation`` is
L/sigma and ``temperature`` is T*sigma.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, fields

__all__ = [
    "PERTURBATIVE_THRESHOLD",
    "FieldState",
    "InPlaneSplit",
    "ZSplit",
    "as_validated",
    "InitialSpinState",
    "NegativeQuantity",
    "PerturbativityWarning",
    "SpinFieldParams",
    "SplitGeometry",
    "ValidatedParams",
    "validate",
]

PERTURBATIVE_THRESHOLD = 0.1


class NegativeQuantity(ValueError):
    """A physical input that must be non-negative was negative (or not finite)."""

    def __init__(self, field: str, value: float):
        self.field = field
        self.value = value
        super().__init__(f"{field} must be finite and >= 0, got {value!r}")


class PerturbativityWarning(UserWarning):
    """Coupling is large enough that second-order perturbation theory is suspect."""


class FieldState(enum.Enum):
    """Which part of the field correlator a term is evaluated in.

    ``VACUUM`` is the Minkowski vacuum contribution, ``THERMAL`` the
    temperature-dependent (Bose-weighted) part only.
    """

    VACUUM = "vacuum"
    THERMAL = "thermal"


@dataclass(frozen=True)
class SpinFieldParams:
    coupling: float
    gap: float = 0.0
    separation: float = 0.0
    temperature: float = 0.0

    def replace(self, **changes) -> "SpinFieldParams":
        values = {f.name: getattr(self, f.name) for f in fields(SpinFieldParams)}
        values.update(changes)
        return validate(SpinFieldParams(**values))


@dataclass(frozen=True)
class ValidatedParams(SpinFieldParams):
    """Parameters that passed :func:`validate`.

    ``perturbativity_warning`` is set when ``coupling >= 0.1``.
    """

    perturbativity_warning: bool = False


def validate(params: SpinFieldParams) -> ValidatedParams:
    """Check the domain invariants of ``params``.

    Returns a :class:`ValidatedParams`; validating an already validated
    instance returns it unchanged.

    Raises
    ------
    NegativeQuantity
        If any field is negative, NaN or infinite.
    """
    if isinstance(params, ValidatedParams):
        return params
    for name in ("coupling", "gap", "separation", "temperature"):
        value = float(getattr(params, name))
        if not math.isfinite(value) or value < 0:
            raise NegativeQuantity(name, value)
    flag = params.coupling >= PERTURBATIVE_THRESHOLD
    if flag:
        warnings.warn(
            f"coupling={params.coupling:g} >= {PERTURBATIVE_THRESHOLD}: "
            "outside the perturbative regime",
            PerturbativityWarning,
            stacklevel=2,
        )
    return ValidatedParams(
        coupling=float(params.coupling),
        gap=float(params.gap),
        separation=float(params.separation),
        temperature=float(params.temperature),
        perturbativity_warning=flag,
    )


def as_validated(params: SpinFieldParams) -> ValidatedParams:
    return params if isinstance(params, ValidatedParams) else validate(params)


def _wrap_angle(x: float) -> float:
    """Reduce an angle to [0, 2 pi)."""
    r = float(x) % (2 * math.pi)
    # a tiny negative input rounds up to exactly 2 pi
    return 0.0 if r == 2 * math.pi else r


@dataclass(frozen=True)
class SplitGeometry:
    """Direction of the spatial split.

    ``axis`` is ``"z"`` (split parallel to the quantization axis) or
    ``"inplane"`` (split in the x-y plane at ``angle`` from the x axis).
    """

    axis: str = "z"
    angle: float = 0.0

    def __post_init__(self):
        if self.axis not in ("z", "inplane"):
            raise ValueError(f"unknown split axis {self.axis!r}")
        if not math.isfinite(self.angle):
            raise ValueError("angle must be finite")
        if self.axis == "z":
            object.__setattr__(self, "angle", 0.0)
        else:
            object.__setattr__(self, "angle", _wrap_angle(self.angle))

    @classmethod
    def z_split(cls) -> "SplitGeometry":
        return cls("z")

    @classmethod
    def in_plane(cls, angle: float = 0.0) -> "SplitGeometry":
        return cls("inplane", angle)

    @property
    def is_z(self) -> bool:
        return self.axis == "z"

    def unit_vector(self) -> tuple[float, float, float]:
        """Unit displacement vector pointing from the up to the down branch."""
        if self.is_z:
            return (0.0, 0.0, 1.0)
        return (math.cos(self.angle), math.sin(self.angle), 0.0)


ZSplit = SplitGeometry.z_split
InPlaneSplit = SplitGeometry.in_plane


@dataclass(frozen=True)
class InitialSpinState:
    """Pure spin state alpha|up> + exp(i phase) sqrt(1 - alpha^2)|down>."""

    amplitude: float = 1 / math.sqrt(2)
    phase: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.amplitude <= 1.0:
            raise ValueError(f"amplitude must lie in [0, 1], got {self.amplitude!r}")
        if not math.isfinite(self.phase):
            raise ValueError("phase must be finite")
        object.__setattr__(self, "phase", _wrap_angle(self.phase))

    @property
    def population_up(self) -> float:
        return self.amplitude**2

    @property
    def population_down(self) -> float:
        return 1.0 - self.amplitude**2

    @property
    def coherence(self) -> complex:
        """Initial rho_14 = alpha sqrt(1 - alpha^2) exp(-i phase)."""
        a = self.amplitude
        return a * math.sqrt(max(0.0, 1.0 - a * a)) * complex(math.cos(self.phase), -math.sin(self.phase))
