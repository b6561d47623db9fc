"""Reduced parameter model shared by every evaluator.

All lengths are multiplied by the atomic transition frequency and the proper
acceleration is divided by it, so the whole library works in units where that
frequency equals one.  An infinite plate separation selects the single-mirror
model; infinite plate separation together with an infinite atom-plate distance
selects free space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class Orientation(Enum):
    """Direction of the line joining the two atoms relative to the plates."""

    PERPENDICULAR = "perpendicular"
    PARALLEL = "parallel"


class GeometryError(ValueError):
    """A geometry constraint was violated.  Carries the offending field."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


@dataclass(frozen=True)
class GeometryConfig:
    """Reduced geometry of the two-atom/two-plate system.

    d_r  : interatomic distance (> 0)
    z0_r : distance of the nearer atom from its adjacent plate (> 0,
           inf only in free space)
    L_r  : plate separation (> 0, inf for a single mirror or free space)
    a_r  : proper acceleration (>= 0)
    """

    orientation: Orientation
    d_r: float
    z0_r: float
    L_r: float
    a_r: float

    @property
    def finite_cavity(self) -> bool:
        return math.isfinite(self.L_r)


@dataclass(frozen=True)
class AtomState:
    """Entangled one-excitation state sin(theta)|g e> + cos(theta)|e g|.

    theta = 0, pi/2, pi are separable; pi/4 and 3*pi/4 are the maximally
    entangled symmetric / antisymmetric states.
    """

    theta: float
    lambda_c: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi) or math.isnan(self.theta):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not (self.lambda_c >= 0.0) or math.isinf(self.lambda_c):
            raise ValueError(f"coupling must be finite and >= 0, got {self.lambda_c}")

    @property
    def entanglement_factor(self) -> float:
        # the separable points are exact zeros, not sin(2 * float(pi/2)) ~ 1e-16
        if self.theta in (0.0, 0.5 * math.pi, math.pi):
            return 0.0
        return math.sin(2.0 * self.theta)


def _require(ok: bool, field: str, reason: str) -> None:
    if not ok:
        raise GeometryError(field, reason)


def validate(config: GeometryConfig) -> GeometryConfig:
    """Check every geometry invariant; return the config unchanged if valid.

    Total: any input either passes or raises GeometryError.  Atoms touching a
    plate are rejected rather than mapped to the (vanishing) contact limit.
    """
    d, z0, L, a = config.d_r, config.z0_r, config.L_r, config.a_r
    _require(isinstance(config.orientation, Orientation), "orientation",
             f"not an Orientation: {config.orientation!r}")
    _require(not math.isnan(d) and d > 0 and math.isfinite(d), "d_r",
             f"interatomic distance must be finite and > 0, got {d}")
    _require(not math.isnan(a) and a >= 0 and math.isfinite(a), "a_r",
             f"acceleration must be finite and >= 0, got {a}")
    _require(not math.isnan(z0) and z0 > 0, "z0_r",
             f"atom-plate distance must be > 0, got {z0}")
    _require(not math.isnan(L) and L > 0, "L_r",
             f"plate separation must be > 0, got {L}")

    if math.isinf(L):
        # single mirror (finite z0) or free space (infinite z0): both fine
        return config
    _require(math.isfinite(z0), "z0_r",
             "infinite atom-plate distance requires infinite plate separation")
    if config.orientation is Orientation.PERPENDICULAR:
        _require(z0 + d < L, "z0_r",
                 f"z0_r + d_r = {z0 + d} must be < L_r = {L}: "
                 "both atoms must lie strictly between the plates")
    else:
        _require(z0 < L, "z0_r",
                 f"z0_r = {z0} must be < L_r = {L}: atoms must lie strictly "
                 "between the plates")
    return config
