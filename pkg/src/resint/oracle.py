"""Slow, high-precision reference evaluations.

Everything here is deliberately independent of the fast path: kernels are
re-derived in software big-float arithmetic (MPFR via gmpy2, correctly
rounded, so results are bit-reproducible across hosts) and the bilateral sums
are evaluated by brute force with exact bracket pairing, no tail machinery.
Reports are cached on disk as self-describing text records keyed by a content
hash of their inputs; writes are serialized through an advisory lock.
"""
from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Sequence

import gmpy2
import numpy as np
from filelock import FileLock

from .geometry import GeometryConfig, GeometryError, Orientation, validate
from .kernels import KernelKind

DEFAULT_DIGITS = 60
DEFAULT_CACHE_DIR = Path("data/oracle_cache")
_GUARD_BITS = 24


class ResourceBudgetError(RuntimeError):
    pass


class OracleMethod(Enum):
    BRUTE_FORCE_SUM = "brute-force-sum"
    KERNEL = "kernel"


@dataclass(frozen=True)
class OracleReport:
    value: str               # decimal string, >= precision_digits significant digits
    n_max_used: int
    method: OracleMethod
    precision_digits: int

    @property
    def value_float(self) -> float:
        return float(gmpy2.mpfr(self.value))


def _context(digits: int) -> gmpy2.context:
    bits = int(math.ceil(digits * math.log2(10))) + _GUARD_BITS
    return gmpy2.context(precision=bits)


def _fmt(x, digits: int) -> str:
    """Scientific-notation decimal string with the requested significant digits
    (this gmpy2 build mis-handles format specs on mpfr, so build it by hand)."""
    m, e, _prec = gmpy2.mpfr(x).digits(10, digits)
    neg = m.startswith("-")
    if neg:
        m = m[1:]
    if m.strip("0") == "":
        return "0.0"
    s = f"{m[0]}.{m[1:]}e{e - 1:+d}"
    return "-" + s if neg else s


def _kernel_mp(is_sine: bool, z, a):
    if a == 0:
        t = z
        e = 1 / z
    else:
        x = a * z
        t = (2 / a) * gmpy2.asinh(x / 2)
        e = 1 / (z * gmpy2.sqrt(1 + x * x / 4))
    return gmpy2.sin(t) * e if is_sine else gmpy2.cos(t) * e


def kernel_oracle(kind: KernelKind, z: float, a: float,
                  precision_digits: int = 50) -> OracleReport:
    """Extended-precision kernel value (certifies the double-precision path)."""
    if not (z > 0.0) or a < 0.0:
        raise ValueError(f"need z > 0 and a >= 0, got z={z}, a={a}")
    with _context(precision_digits):
        val = _kernel_mp(kind is KernelKind.SINE, gmpy2.mpfr(z), gmpy2.mpfr(a))
        return OracleReport(value=_fmt(val, precision_digits), n_max_used=0,
                            method=OracleMethod.KERNEL,
                            precision_digits=precision_digits)


def phase_oracle(z: float, a: float, precision_digits: int = 50) -> OracleReport:
    if not (z > 0.0) or a < 0.0:
        raise ValueError(f"need z > 0 and a >= 0, got z={z}, a={a}")
    with _context(precision_digits):
        zm, am = gmpy2.mpfr(z), gmpy2.mpfr(a)
        val = zm if a == 0.0 else (2 / am) * gmpy2.asinh(zm * am / 2)
        return OracleReport(value=_fmt(val, precision_digits), n_max_used=0,
                            method=OracleMethod.KERNEL,
                            precision_digits=precision_digits)


# ------------------------------------------------------------------ caching

def cache_dir() -> Path:
    return Path(os.environ.get("RESINT_ORACLE_CACHE", str(DEFAULT_CACHE_DIR)))


def _cache_key(kind: KernelKind, config: GeometryConfig, n_max: int, digits: int) -> str:
    return "|".join([
        "brute-v1",
        kind.value,
        config.orientation.value,
        repr(config.d_r), repr(config.z0_r), repr(config.L_r), repr(config.a_r),
        str(n_max), str(digits),
    ])


def _cache_path(key: str, directory: Path) -> Path:
    h = hashlib.sha256(key.encode()).hexdigest()[:32]
    return directory / f"{h}.txt"


def _write_report(path: Path, key: str, report: OracleReport) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        f"key: {key}",
        f"method: {report.method.value}",
        f"n_max: {report.n_max_used}",
        f"precision_digits: {report.precision_digits}",
        f"value: {report.value}",
        "",
    ]
    lock = FileLock(str(path.parent / ".lock"))
    with lock:
        tmp = path.with_suffix(".tmp")
        tmp.write_text("\n".join(lines))
        tmp.replace(path)


def _read_report(path: Path, key: str) -> OracleReport | None:
    if not path.exists():
        return None
    fields = {}
    for line in path.read_text().splitlines():
        if ": " in line:
            k, v = line.split(": ", 1)
            fields[k] = v
    if fields.get("key") != key:
        return None
    return OracleReport(value=fields["value"], n_max_used=int(fields["n_max"]),
                        method=OracleMethod(fields["method"]),
                        precision_digits=int(fields["precision_digits"]))


# --------------------------------------------------------------- brute force

def brute_force_sum(kind: KernelKind, config: GeometryConfig, n_max: int,
                    precision_digits: int = DEFAULT_DIGITS,
                    directory: Path | None = None,
                    use_cache: bool = True,
                    max_brackets: int = 30_000_000) -> OracleReport:
    """Bilateral sum by direct extended-precision summation, exact pairing.

    Every bracket for |n| <= n_max is evaluated in big-float arithmetic and
    accumulated in index order (n = 0, then both signs per |n|).  No
    truncation corrections are applied: this is the plain partial sum the
    fast path is certified against.
    """
    config = validate(config)
    if not config.finite_cavity:
        raise GeometryError("L_r", "brute-force sums require a finite plate separation")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if precision_digits < 50:
        raise ValueError("precision_digits must be >= 50")
    if 2 * n_max + 1 > max_brackets:
        raise ResourceBudgetError(
            f"{2 * n_max + 1} brackets exceed the budget of {max_brackets}")

    directory = cache_dir() if directory is None else Path(directory)
    key = _cache_key(kind, config, n_max, precision_digits)
    path = _cache_path(key, directory)
    if use_cache:
        cached = _read_report(path, key)
        if cached is not None:
            return cached

    is_sine = kind is KernelKind.SINE
    is_par = config.orientation is Orientation.PARALLEL
    with _context(precision_digits):
        d = gmpy2.mpfr(config.d_r)
        z0 = gmpy2.mpfr(config.z0_r)
        L = gmpy2.mpfr(config.L_r)
        a = gmpy2.mpfr(config.a_r) if config.a_r != 0.0 else 0
        d2 = d * d
        twoL = 2 * L
        twoz0 = 2 * z0
        # n = 0 bracket
        if is_par:
            zs0 = gmpy2.sqrt(d2 + twoz0 * twoz0)
        else:
            zs0 = twoz0 + d
        acc = _kernel_mp(is_sine, d, a) - _kernel_mp(is_sine, zs0, a)
        w = gmpy2.mpfr(0)
        for n in range(1, n_max + 1):
            w = w + twoL
            if is_par:
                z1 = gmpy2.sqrt(d2 + w * w)
                wp = w - twoz0
                wm = w + twoz0
                br = (_kernel_mp(is_sine, z1, a)
                      - _kernel_mp(is_sine, gmpy2.sqrt(d2 + wp * wp), a)) \
                   + (_kernel_mp(is_sine, z1, a)
                      - _kernel_mp(is_sine, gmpy2.sqrt(d2 + wm * wm), a))
            else:
                br = (_kernel_mp(is_sine, abs(w - d), a)
                      - _kernel_mp(is_sine, abs(w - twoz0 - d), a)) \
                   + (_kernel_mp(is_sine, w + d, a)
                      - _kernel_mp(is_sine, w + twoz0 + d, a))
            acc = acc + br
        report = OracleReport(value=_fmt(acc, precision_digits), n_max_used=n_max,
                              method=OracleMethod.BRUTE_FORCE_SUM,
                              precision_digits=precision_digits)
    if use_cache:
        _write_report(path, key, report)
    return report


# ------------------------------------------------------------- probes

@dataclass(frozen=True)
class ProbeResult:
    exponent: float | None
    residual: float
    degenerate: bool


def linear_term_probe(value_at: Callable[[float], float],
                      a_grid: Sequence[float],
                      value_zero: float | None = None) -> ProbeResult:
    """Least-squares slope of log|value(a) - value(0)| against log a.

    A slope near 2 demonstrates the absence of a linear-in-acceleration
    term.  Degenerate when every difference vanishes (e.g. a geometry whose
    observable is identically zero); exponent is then None.
    """
    grid = [float(a) for a in a_grid]
    if len(grid) < 2 or any(a <= 0.0 for a in grid):
        raise ValueError("a_grid must contain at least two positive points")
    v0 = value_at(0.0) if value_zero is None else value_zero
    xs, ys = [], []
    for a in grid:
        diff = abs(value_at(a) - v0)
        if diff > 0.0:
            xs.append(math.log(a))
            ys.append(math.log(diff))
    if not xs:
        return ProbeResult(exponent=None, residual=0.0, degenerate=True)
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = float(np.sqrt(np.mean((np.polyval([slope, intercept], xs) - ys) ** 2)))
    return ProbeResult(exponent=float(slope), residual=resid, degenerate=False)


# -------------------------------------------------- certification panels

PANEL_SEED = 20260810


def _draw_config(rng: np.random.Generator, orientation: Orientation,
                 a_r: float) -> GeometryConfig:
    while True:
        L = float(rng.uniform(0.7, 3.0))
        if a_r == 0.0 and abs(math.sin(L)) < 0.35:
            continue  # resonant-adjacent cavities converge too slowly at a = 0
        if orientation is Orientation.PERPENDICULAR:
            z0 = float(rng.uniform(0.08, 0.42)) * L
            d = float(rng.uniform(0.1, 0.9)) * (L - z0)
            if z0 + d >= 0.97 * L:
                continue
        else:
            z0 = float(rng.uniform(0.1, 0.9)) * L
            d = float(rng.uniform(0.15, 2.0))
        return GeometryConfig(orientation, d, z0, L, a_r)


def certification_panel() -> list[tuple[KernelKind, GeometryConfig]]:
    """Twenty deterministic (kind, config) pairs spanning a_r in {0, 0.5, 4, 10},
    used for the cached 1e7-term oracle equivalence check."""
    rng = np.random.default_rng(PANEL_SEED)
    panel: list[tuple[KernelKind, GeometryConfig]] = [
        (KernelKind.COSINE,
         GeometryConfig(Orientation.PERPENDICULAR, 0.5, 0.3, 1.2, 4.0)),
        (KernelKind.SINE,
         GeometryConfig(Orientation.PARALLEL, 0.5, 0.3, 1.2, 4.0)),
    ]
    kinds = (KernelKind.COSINE, KernelKind.SINE)
    orients = (Orientation.PERPENDICULAR, Orientation.PARALLEL)
    i = 2
    for a_r in (0.0, 0.5, 4.0, 10.0):
        need = 5 if a_r not in (4.0,) else 3  # two a=4 slots already filled
        for _ in range(need):
            cfg = _draw_config(rng, orients[i % 2], a_r)
            panel.append((kinds[i % 2], cfg))
            i += 1
    return panel


def agreement_suite(count: int = 100, seed: int = PANEL_SEED + 1,
                    ) -> list[tuple[KernelKind, GeometryConfig]]:
    """Randomized oracle/fast-path agreement suite (light n_max)."""
    rng = np.random.default_rng(seed)
    kinds = (KernelKind.COSINE, KernelKind.SINE)
    orients = (Orientation.PERPENDICULAR, Orientation.PARALLEL)
    out = []
    for i in range(count):
        a_r = 0.0 if i % 10 == 0 else float(rng.uniform(0.05, 10.0))
        out.append((kinds[i % 2], _draw_config(rng, orients[(i // 2) % 2], a_r)))
    return out
