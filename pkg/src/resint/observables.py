"""Physical observables: resonance energy shift and relaxation rate.

All series code returns bare bracketed sums in reduced units; the prefactors
(with their leading minus signs) live in one place, `physical_value`:

    shift = -(lambda^2 omega0   sin 2theta / 16 pi) * reduced_value
    rate  = -(lambda^2 omega0^2 sin 2theta /  8 pi) * reduced_value

so sign bookkeeping is testable in isolation.  `normalized_value` divides the
prefactor magnitude back out, which is the quantity the parameter studies
plot: -sin(2 theta) * reduced_value.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .geometry import AtomState, GeometryConfig, GeometryError, Orientation, validate
from .kernels import KernelKind, kernel
from .series import DEFAULT_CAP, DEFAULT_TOL, bilateral_sum, partial_sum

LOW_ACC_REGIME_LIMIT = 0.1  # warn when a_r * L_r exceeds this


class Quantity(Enum):
    SHIFT = "shift"
    RATE = "rate"


class BoundaryModel(Enum):
    TWO_MIRROR = "two-mirror"
    SINGLE_MIRROR = "single-mirror"
    FREE_SPACE = "free-space"
    LOW_ACCELERATION = "low-acc"


class PrefactorId(Enum):
    SHIFT_UNIT = "shift-unit"   # -lambda^2 omega0   sin(2 theta) / (16 pi)
    RATE_UNIT = "rate-unit"     # -lambda^2 omega0^2 sin(2 theta) / (8 pi)


@dataclass(frozen=True)
class Observable:
    quantity: Quantity
    model: BoundaryModel

    def __post_init__(self):
        if self.model is BoundaryModel.LOW_ACCELERATION and self.quantity is not Quantity.SHIFT:
            raise ValueError("the low-acceleration expansion is available for the shift only")


@dataclass(frozen=True)
class ObservableValue:
    reduced_value: float
    prefactor_id: PrefactorId
    tail_bound: float
    converged: bool = True


def kind_for(quantity: Quantity) -> KernelKind:
    return KernelKind.COSINE if quantity is Quantity.SHIFT else KernelKind.SINE


def _prefactor_id(quantity: Quantity) -> PrefactorId:
    return PrefactorId.SHIFT_UNIT if quantity is Quantity.SHIFT else PrefactorId.RATE_UNIT


def two_mirror(quantity: Quantity, config: GeometryConfig, tol: float = DEFAULT_TOL,
               n_cap: int = DEFAULT_CAP) -> ObservableValue:
    """Full two-mirror observable; reduced value is the bilateral image sum."""
    res = bilateral_sum(kind_for(quantity), config, tol=tol, n_cap=n_cap)
    return ObservableValue(reduced_value=res.value, prefactor_id=_prefactor_id(quantity),
                           tail_bound=res.tail_bound, converged=res.converged)


def single_mirror(quantity: Quantity, orientation: Orientation, d_r: float,
                  z0_r: float, a_r: float) -> ObservableValue:
    """Single-boundary limit: exact two-term expression, no truncation.

    The mirror-image distance is d + 2 z0 for the perpendicular orientation
    and sqrt(d^2 + 4 z0^2) for the parallel one.
    """
    if not (d_r > 0.0) or not (z0_r > 0.0):
        raise GeometryError("d_r" if not d_r > 0.0 else "z0_r", "must be > 0")
    if orientation is Orientation.PERPENDICULAR:
        D = d_r + 2.0 * z0_r
    else:
        D = math.hypot(d_r, 2.0 * z0_r)
    k = kind_for(quantity)
    value = kernel(k, d_r, a_r) - kernel(k, D, a_r)
    return ObservableValue(reduced_value=value, prefactor_id=_prefactor_id(quantity),
                           tail_bound=0.0)


def free_space(quantity: Quantity, d_r: float, a_r: float) -> ObservableValue:
    """No-boundary limit; identical for both orientations."""
    if not (d_r > 0.0):
        raise GeometryError("d_r", "must be > 0")
    value = kernel(kind_for(quantity), d_r, a_r)
    return ObservableValue(reduced_value=value, prefactor_id=_prefactor_id(quantity),
                           tail_bound=0.0)


# ------------------------------------------------- low-acceleration expansion

def _quadratic_family_term(x: float) -> float:
    # per-image quadratic coefficient: the a^2 factor of the kernel expansion
    return -(x * math.cos(x) - (x * x / 3.0) * math.sin(x)) / 8.0


def low_acc_quadratic_coefficient(d_r: float, z0_r: float, L_r: float) -> float:
    """Closed-form quadratic-in-acceleration coefficient of the perpendicular
    two-mirror shift sum.

    Written as image sums, the coefficient's terms grow linearly with the
    image index, so the truncated series has no limit; its Abel-regularized
    value is finite and equals d(sum)/d(a^2) at a = 0 (checked numerically in
    the test suite).  Geometric-series derivatives give it in closed form.
    """
    u = cmath.exp(2j * L_r)

    def family(psi: float, n0: int) -> float:
        s0 = u / (1.0 - u) if n0 == 1 else 1.0 / (1.0 - u)
        s1 = u / (1.0 - u) ** 2
        s2 = u * (1.0 + u) / (1.0 - u) ** 3
        e = cmath.exp(1j * psi)
        x1 = e * (2.0 * L_r * s1 + psi * s0)
        x2 = e * (4.0 * L_r * L_r * s2 + 4.0 * L_r * psi * s1 + psi * psi * s0)
        return x1.real - x2.imag / 3.0

    fam_first = family(-d_r, 1) + family(d_r, 0)
    fam_second = family(-(2.0 * z0_r + d_r), 1) + family(2.0 * z0_r + d_r, 0)
    return -(fam_first - fam_second) / 8.0


def low_acc_regime_ok(config: GeometryConfig) -> bool:
    return config.a_r * config.L_r < LOW_ACC_REGIME_LIMIT


def low_acceleration_shift(config: GeometryConfig, n_terms: int = 10**5,
                           quadratic: str = "closed-form") -> ObservableValue:
    """Perpendicular two-mirror shift expanded to second order in acceleration.

    The acceleration-independent part is the a = 0 image sum truncated at
    n_terms with compensated accumulation.  The quadratic part is handled in
    one of two ways:

    * quadratic="closed-form" (default): the Abel-regularized coefficient
      from `low_acc_quadratic_coefficient` times a^2.  tail_bound covers the
      constant part only (the quadratic coefficient is exact in this model).
    * quadratic="truncated": the quadratic image terms summed termwise to
      n_terms.  These terms grow with the image index, so the truncated
      value oscillates with n_terms and never settles; the mode exists to
      expose the expansion exactly as written, not for production use.

    Emits a RuntimeWarning outside the validity regime a_r * L_r < 0.1.
    """
    config = validate(config)
    if config.orientation is not Orientation.PERPENDICULAR:
        raise GeometryError("orientation",
                            "the low-acceleration expansion is derived for the "
                            "perpendicular orientation only")
    if not config.finite_cavity:
        raise GeometryError("L_r", "the low-acceleration expansion requires a finite cavity")
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    if quadratic not in ("closed-form", "truncated"):
        raise ValueError(f"unknown quadratic mode: {quadratic!r}")
    if not low_acc_regime_ok(config):
        warnings.warn(
            f"a_r * L_r = {config.a_r * config.L_r:.3g} >= {LOW_ACC_REGIME_LIMIT}: "
            "outside the low-acceleration regime", RuntimeWarning, stacklevel=2)

    d, z0, L, a = config.d_r, config.z0_r, config.L_r, config.a_r
    inertial = GeometryConfig(config.orientation, d, z0, L, 0.0)
    s0 = partial_sum(KernelKind.COSINE, inertial, n_terms)
    from .series import _a0_tail, _tail_bound_zero
    if quadratic == "closed-form":
        corr, resid = _a0_tail(KernelKind.COSINE, inertial, n_terms)
        s2 = low_acc_quadratic_coefficient(d, z0, L)
        value = (s0 + corr) + a * a * s2
        bound = resid
    else:
        tot = 0.0
        comp = 0.0
        sgn = (+1.0, -1.0)
        offs = (d, 2.0 * z0 + d)
        for i in (0, 1):
            psi = offs[i]
            for n in range(0, n_terms + 1):
                x_m = 2.0 * n * L - psi
                q = _quadratic_family_term(2.0 * n * L + psi)
                if n >= 1:
                    q += _quadratic_family_term(x_m)
                term = sgn[i] * q
                t = tot + term
                if abs(tot) >= abs(term):
                    comp += (tot - t) + term
                else:
                    comp += (term - t) + tot
                tot = t
        value = s0 + a * a * (tot + comp)
        bound = _tail_bound_zero(inertial, n_terms)
    return ObservableValue(reduced_value=value, prefactor_id=PrefactorId.SHIFT_UNIT,
                           tail_bound=bound)


# -------------------------------------------------------------- prefactors

def prefactor(prefactor_id: PrefactorId, state: AtomState, omega0: float) -> float:
    lam2 = state.lambda_c * state.lambda_c
    s2t = state.entanglement_factor
    if prefactor_id is PrefactorId.SHIFT_UNIT:
        return -lam2 * omega0 * s2t / (16.0 * math.pi)
    return -lam2 * omega0 * omega0 * s2t / (8.0 * math.pi)


def physical_value(obs: ObservableValue, state: AtomState, omega0: float) -> float:
    """Apply the prefactor: shift in the units of omega0, rate in omega0^2
    units (divide by hbar for a rate in energy per time)."""
    return prefactor(obs.prefactor_id, state, omega0) * obs.reduced_value


def normalized_value(obs: ObservableValue, state: AtomState) -> float:
    """Observable per unit prefactor magnitude: -sin(2 theta) * reduced."""
    return -state.entanglement_factor * obs.reduced_value
