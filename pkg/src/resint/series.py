"""Image-distance families and the bilateral sums over them.

Every boundary observable is a bilateral series
    S = sum_{n = -inf..inf} [ kernel(z_first(n)) - kernel(z_second(n)) ]
whose image distances grow linearly in |n|.  The engine below evaluates the
series with a fixed, deterministic accumulation order (n = 0, then both signs
of each |n| jointly, ascending) and stops at a truncation index chosen from a
*certified* bound on the dropped tail, never from the size of the last term.

Two bound families are used:

* a > 0: the bracket difference obeys
      |K(z1) - K(z2)| <= |z1 - z2| * B(z_min),
      B(z) = 1/(z s^2) + 2/(z^2 s),  s = sqrt(1 + z^2 a^2 / 4),
  by the mean value theorem (B is a decreasing majorant of |K'|), with
  |z1 - z2| <= 2 z0 for |n| >= 1 in both orientations.  Integral comparison
  of sum B(2nL - c) gives the closed form in `_tail_bound_pos`.

* a = 0: the summands only decay like 1/n and oscillate with arithmetic (or
  asymptotically arithmetic) phases, so absolute bounds diverge.  Summation
  by parts against the geometric sums of exp(2inL) gives a certified
  O(1/(N |sin L|)) bound on any truncated segment (`_tail_bound_zero`), and
  applying it twice yields closed-form corrections for the leading dropped
  tail plus an O(1/N^2) certified residual (`_a0_tail`), which is what lets
  tight tolerances converge at zero acceleration.  At plate separations where
  sin(L) = 0 the series genuinely diverges (the cavity is resonant with the
  atomic transition) and no finite bound exists.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numba
import numpy as np
from numba import njit, prange

# avoid the TBB version probe (and its warning) on hosts with older TBB;
# chunk results are order-independent, so any threading layer is fine
numba.config.THREADING_LAYER = "workqueue"

from .geometry import GeometryConfig, GeometryError, Orientation, validate
from .kernels import KernelKind, PHASE_TAYLOR_CUTOFF

DEFAULT_TOL = 1e-10
DEFAULT_CAP = 10**8

_CHUNK = 1 << 22  # fixed work unit; chunk sums are reduced in index order


class ConvergenceError(RuntimeError):
    """The certified tail bound cannot reach the tolerance within the cap."""

    def __init__(self, n_cap: int, best_bound: float, tol: float):
        self.n_cap = n_cap
        self.best_bound = best_bound
        self.tol = tol
        super().__init__(
            f"tail bound {best_bound:.3e} at n_max={n_cap} exceeds tol={tol:.3e}"
        )


@dataclass(frozen=True)
class ImagePair:
    n: int
    z_first: float
    z_second: float


@dataclass(frozen=True)
class SumResult:
    """Outcome of a bilateral sum.

    tail_bound is a certified upper bound on |true sum - value| at the
    truncation index n_max; converged means tail_bound <= the requested
    tolerance.  terms_evaluated counts bracket evaluations (2 n_max + 1).
    """

    value: float
    n_max: int
    tail_bound: float
    terms_evaluated: int
    converged: bool


def image_pair(config: GeometryConfig, n: int) -> ImagePair:
    """Image-distance pair for reflection index n (finite cavity only)."""
    config = validate(config)
    if not config.finite_cavity:
        raise GeometryError("L_r", "image pairs require a finite plate separation")
    d, z0, L = config.d_r, config.z0_r, config.L_r
    if config.orientation is Orientation.PERPENDICULAR:
        zf = abs(2.0 * n * L - d)
        zs = abs(2.0 * n * L - 2.0 * z0 - d)
    else:
        zf = math.hypot(d, 2.0 * n * L)
        zs = math.hypot(d, 2.0 * (n * L - z0))
    return ImagePair(n=n, z_first=zf, z_second=zs)


# ----------------------------------------------------------------- hot path

@njit(cache=True, inline="always")
def _kern(is_sine: bool, z: float, a: float) -> float:
    if a == 0.0:
        t = z
        e = 1.0 / z
    else:
        x = a * z
        if x <= PHASE_TAYLOR_CUTOFF:
            x2 = x * x
            t = z * (1.0 - x2 / 24.0 + 3.0 * x2 * x2 / 640.0)
        else:
            t = (2.0 / a) * math.asinh(0.5 * x)
        e = 1.0 / (z * math.sqrt(1.0 + 0.25 * x * x))
    return math.sin(t) * e if is_sine else math.cos(t) * e


@njit(cache=True)
def _chunk_sum(is_sine: bool, is_par: bool, d: float, z0: float, L: float,
               a: float, lo: int, hi: int) -> float:
    """Neumaier-compensated sum of paired brackets for n in [lo, hi]."""
    s = 0.0
    c = 0.0
    for n in range(lo, hi + 1):
        nf = float(n)
        if is_par:
            w1 = 2.0 * nf * L
            w2p = 2.0 * (nf * L - z0)
            w2m = 2.0 * (nf * L + z0)
            k1 = _kern(is_sine, math.sqrt(d * d + w1 * w1), a)  # same on both sides
            br = (k1 - _kern(is_sine, math.sqrt(d * d + w2p * w2p), a)) \
               + (k1 - _kern(is_sine, math.sqrt(d * d + w2m * w2m), a))
        else:
            t2 = 2.0 * nf * L
            z1p = abs(t2 - d)
            z2p = abs(t2 - 2.0 * z0 - d)
            br = (_kern(is_sine, z1p, a) - _kern(is_sine, z2p, a)) \
               + (_kern(is_sine, t2 + d, a) - _kern(is_sine, t2 + 2.0 * z0 + d, a))
        t = s + br
        if abs(s) >= abs(br):
            c += (s - t) + br
        else:
            c += (br - t) + s
        s = t
    return s + c


@njit(cache=True, parallel=True)
def _range_sums(is_sine: bool, is_par: bool, d: float, z0: float, L: float,
                a: float, n_max: int, chunk: int) -> np.ndarray:
    nchunks = (n_max + chunk - 1) // chunk
    out = np.empty(nchunks, dtype=np.float64)
    for ci in prange(nchunks):
        lo = 1 + ci * chunk
        hi = min(n_max, lo + chunk - 1)
        out[ci] = _chunk_sum(is_sine, is_par, d, z0, L, a, lo, hi)
    return out


def _bracket_zero(kind: KernelKind, config: GeometryConfig) -> float:
    p = image_pair(config, 0)
    from .kernels import kernel
    return kernel(kind, p.z_first, config.a_r) - kernel(kind, p.z_second, config.a_r)


def partial_sum(kind: KernelKind, config: GeometryConfig, n_max: int) -> float:
    """Plain symmetric partial sum over |n| <= n_max (no tail correction).

    Deterministic: n = 0 first, then each |n| ascending with both signs
    paired, accumulated in fixed chunks with compensated summation.
    """
    config = validate(config)
    if not config.finite_cavity:
        raise GeometryError("L_r", "bilateral sums require a finite plate separation")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    total = _bracket_zero(kind, config)
    if n_max == 0:
        return total
    sums = _range_sums(kind is KernelKind.SINE,
                       config.orientation is Orientation.PARALLEL,
                       config.d_r, config.z0_r, config.L_r, config.a_r,
                       int(n_max), _CHUNK)
    comp = 0.0
    for b in sums:
        b = float(b)
        t = total + b
        if abs(total) >= abs(b):
            comp += (total - t) + b
        else:
            comp += (b - t) + total
        total = t
    return float(total + comp)


# ------------------------------------------------------------ tail bounds

def _c_offset(config: GeometryConfig) -> float:
    return config.d_r + 2.0 * config.z0_r


def _tail_bound_pos(config: GeometryConfig, n_max: int) -> float:
    """Certified dropped-tail bound, a > 0 (also bounds any inner segment)."""
    d, z0, L, a = config.d_r, config.z0_r, config.L_r, config.a_r
    zeta = 2.0 * n_max * L - _c_offset(config)
    if zeta <= 0.0:
        return math.inf
    x = a * zeta
    t_osc = 0.5 * math.log1p(4.0 / (x * x))
    # exact rearrangement of 2 (sqrt(1 + x^2/4)/zeta - a/2): the direct form
    # cancels catastrophically (and can round negative) once x >> 1
    t_env = 2.0 / (zeta * (math.sqrt(1.0 + 0.25 * x * x) + 0.5 * x))
    return (2.0 * z0 / L) * (t_osc + t_env)


def _a0_families(config: GeometryConfig):
    """(sign, z(n), w_offset) per family; w(n) = 2(nL + off) is the linear
    part of the phase, exact for the perpendicular orientation."""
    d, z0, L = config.d_r, config.z0_r, config.L_r
    if config.orientation is Orientation.PERPENDICULAR:
        return [(+1.0, lambda n: 2.0 * n * L - d, None),
                (-1.0, lambda n: 2.0 * n * L - 2.0 * z0 - d, None),
                (+1.0, lambda n: 2.0 * n * L + d, None),
                (-1.0, lambda n: 2.0 * n * L + 2.0 * z0 + d, None)]
    return [(+1.0, lambda n: math.hypot(d, 2.0 * n * L), 0.0),
            (-1.0, lambda n: math.hypot(d, 2.0 * (n * L - z0)), -z0),
            (+1.0, lambda n: math.hypot(d, 2.0 * n * L), 0.0),
            (-1.0, lambda n: math.hypot(d, 2.0 * (n * L + z0)), z0)]


def _a0_floor(config: GeometryConfig) -> int:
    """Smallest index from which the a = 0 machinery is valid: positive,
    decreasing, convex envelopes in every family beyond it."""
    d, z0, L = config.d_r, config.z0_r, config.L_r
    if config.orientation is Orientation.PERPENDICULAR:
        return max(1, math.ceil(_c_offset(config) / (2.0 * L)) + 1)
    # parallel: need (n L - z0) > 0 and 2(nL - z0) >= d / sqrt(2)
    need = (z0 + d / (2.0 * math.sqrt(2.0))) / L
    return max(1, math.ceil(need) + 1)


def _tail_bound_zero(config: GeometryConfig, n_max: int) -> float:
    """Certified bound on any dropped segment at a = 0 (summation by parts)."""
    L = config.L_r
    sl = abs(math.sin(L))
    if sl == 0.0 or n_max < _a0_floor(config):
        return math.inf
    tot = 0.0
    for _sign, zf, off in _a0_families(config):
        z1 = zf(n_max + 1)
        g1 = 1.0 / z1
        if off is None:
            tot += g1
        else:
            w1 = 2.0 * ((n_max + 1) * L + off)
            tot += (1.0 + (z1 - w1)) * g1
    return tot / sl


def _a0_tail(kind: KernelKind, config: GeometryConfig, n_max: int):
    """Closed-form leading dropped tail at a = 0 plus certified residual.

    Two rounds of summation by parts: the boundary terms are evaluated
    exactly against the geometric sums of exp(2inL); what remains is bounded
    through the total variation of the twice-differenced envelopes.
    """
    L = config.L_r
    sl = abs(math.sin(L))
    if sl == 0.0 or n_max < _a0_floor(config):
        return 0.0, math.inf
    u = cmath.exp(2j * L)
    um1 = u - 1.0
    b1 = cmath.exp(2j * (n_max + 1) * L) / um1
    b2 = cmath.exp(2j * (n_max + 2) * L) / um1
    corr = 0.0
    resid = 0.0
    for sign, zf, off in _a0_families(config):
        z1 = zf(n_max + 1)
        z2 = zf(n_max + 2)
        g1 = 1.0 / z1
        dg = g1 - 1.0 / z2
        eps1 = z1 - 2.0 * (n_max + 1) * L  # full phase offset past the 2nL part
        if off is None:
            tve = 0.0
        else:
            tve = z1 - 2.0 * ((n_max + 1) * L + off)  # decays like d^2 / (4 n L)
        ph = cmath.exp(1j * eps1)
        sc = -b1 * ph * g1 - (b2 / um1) * ph * dg
        corr += sign * (sc.imag if kind is KernelKind.SINE else sc.real)
        resid += dg * (1.0 + tve) / (4.0 * sl * sl) + tve * g1 / (2.0 * sl)
    return corr, resid


def tail_bound(config: GeometryConfig, kind: KernelKind, n_max: int) -> float:
    """Certified upper bound on the magnitude of every dropped or inner
    segment of the plain partial sums beyond |n| = n_max.

    The bound is independent of the kernel kind (cosine and sine share the
    same envelopes); the argument is kept for interface symmetry.
    """
    config = validate(config)
    if not config.finite_cavity:
        raise GeometryError("L_r", "tail bounds require a finite plate separation")
    if n_max < 1:
        return math.inf
    if config.a_r == 0.0:
        return _tail_bound_zero(config, n_max)
    return _tail_bound_pos(config, n_max)


def _solve_min_n(bound, n_floor: int, tol: float, n_cap: int) -> int:
    """Smallest N in [n_floor, n_cap] with bound(N) <= tol (bound decreasing)."""
    if bound(n_cap) > tol:
        raise ConvergenceError(n_cap, bound(n_cap), tol)
    lo, hi = n_floor, n_cap
    if bound(lo) <= tol:
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) <= tol:
            hi = mid
        else:
            lo = mid
    return hi


def bilateral_sum(kind: KernelKind, config: GeometryConfig, tol: float = DEFAULT_TOL,
                  n_cap: int = DEFAULT_CAP) -> SumResult:
    """Evaluate the bilateral image sum to a certified tolerance.

    The truncation index is the smallest one whose certified bound meets
    tol; the series is then accumulated once in the fixed deterministic
    order.  At a = 0 the closed-form leading tail is added on top of the
    partial sum and the reported tail_bound is the (much smaller) residual
    bound; for a > 0 the reported bound is the dropped-tail bound itself.

    Raises ConvergenceError when no index up to n_cap certifies tol; this is
    reachable for extreme tolerances, very small nonzero accelerations, or
    resonant cavities (sin L = 0 at zero acceleration).
    """
    config = validate(config)
    if not config.finite_cavity:
        raise GeometryError("L_r", "bilateral sums require a finite plate separation")
    if not (tol > 0.0):
        raise ValueError(f"tol must be > 0, got {tol}")
    if n_cap < 1:
        raise ValueError("n_cap must be >= 1")

    if config.a_r == 0.0:
        floor = _a0_floor(config)
        n_star = _solve_min_n(lambda N: _a0_tail(kind, config, N)[1],
                              floor, tol, n_cap)
        s = partial_sum(kind, config, n_star)
        corr, resid = _a0_tail(kind, config, n_star)
        return SumResult(value=s + corr, n_max=n_star, tail_bound=resid,
                         terms_evaluated=2 * n_star + 1, converged=True)

    floor = max(1, math.ceil(_c_offset(config) / (2.0 * config.L_r)) + 1)
    n_star = _solve_min_n(lambda N: _tail_bound_pos(config, N), floor, tol, n_cap)
    s = partial_sum(kind, config, n_star)
    return SumResult(value=s, n_max=n_star, tail_bound=_tail_bound_pos(config, n_star),
                     terms_evaluated=2 * n_star + 1, converged=True)
