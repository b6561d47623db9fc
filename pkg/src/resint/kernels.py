"""Per-image oscillatory kernels.

Every sum in the library is built from
    kernel(z, a) = trig(T(z, a)) / (z * sqrt(1 + z^2 a^2 / 4)),
    T(z, a)      = (2/a) * asinh(z a / 2)          (a > 0)
                 = z                               (a = 0),
with cosine for energy shifts and sine for relaxation rates.  The inertial
branch is exact, not a small-a fallback, so the low-acceleration cross-checks
can rely on it bit-for-bit.
"""
from __future__ import annotations

import math
from enum import Enum

import numpy as np

# Below this product a*z the phase is evaluated through its Taylor form
#   z * (1 - (az)^2/24 + 3(az)^4/640);
# the truncation error at the switchover is ~ 5(az)^6/7168 < 1e-27 relative.
PHASE_TAYLOR_CUTOFF = 1e-4


class KernelKind(Enum):
    COSINE = "cosine"   # energy-shift sums
    SINE = "sine"       # relaxation-rate sums


def _check_domain(z: float, a: float) -> None:
    if math.isnan(z) or z <= 0.0:
        raise ValueError(f"reduced length must be > 0, got {z}")
    if math.isnan(a) or a < 0.0:
        raise ValueError(f"reduced acceleration must be >= 0, got {a}")


def phase(z: float, a: float) -> float:
    """Oscillation phase T(z, a); reduces to z at zero acceleration."""
    _check_domain(z, a)
    if a == 0.0:
        return z
    x = a * z
    if x <= PHASE_TAYLOR_CUTOFF:
        x2 = x * x
        return z * (1.0 - x2 / 24.0 + 3.0 * x2 * x2 / 640.0)
    return (2.0 / a) * math.asinh(0.5 * x)


def envelope(z: float, a: float) -> float:
    """Monotone amplitude 1/(z sqrt(1 + z^2 a^2/4)); bounds |kernel|."""
    _check_domain(z, a)
    x = a * z
    return 1.0 / (z * math.sqrt(1.0 + 0.25 * x * x))


def kernel(kind: KernelKind, z: float, a: float) -> float:
    t = phase(z, a)
    e = envelope(z, a)
    return math.cos(t) * e if kind is KernelKind.COSINE else math.sin(t) * e


# Vectorised versions used by the series engine.  Inputs are assumed valid
# (positive z array, scalar a >= 0); no domain checks in the hot path.

def phase_array(z: np.ndarray, a: float) -> np.ndarray:
    if a == 0.0:
        return z
    x = a * z
    x2 = x * x
    taylor = z * (1.0 - x2 / 24.0 + 3.0 * x2 * x2 / 640.0)
    direct = (2.0 / a) * np.arcsinh(0.5 * x)
    return np.where(x <= PHASE_TAYLOR_CUTOFF, taylor, direct)


def envelope_array(z: np.ndarray, a: float) -> np.ndarray:
    x = a * z
    return 1.0 / (z * np.sqrt(1.0 + 0.25 * x * x))


def kernel_array(kind: KernelKind, z: np.ndarray, a: float) -> np.ndarray:
    t = phase_array(z, a)
    e = envelope_array(z, a)
    return np.cos(t) * e if kind is KernelKind.COSINE else np.sin(t) * e
