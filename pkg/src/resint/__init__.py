"""Resonance interaction of two entangled atoms accelerating between mirrors.

Reduced-unit evaluators for the resonance energy level shift and the
relaxation rate of an entangled two-atom system undergoing uniform proper
acceleration between two parallel perfect mirrors, with single-mirror,
free-space and low-acceleration limits, certified series truncation, an
extended-precision oracle, and a sweep CLI.
"""

__version__ = "0.1.0"

from .geometry import AtomState, GeometryConfig, GeometryError, Orientation, validate
from .kernels import KernelKind, envelope, kernel, phase
from .observables import (
    BoundaryModel,
    Observable,
    ObservableValue,
    PrefactorId,
    Quantity,
    free_space,
    low_acc_quadratic_coefficient,
    low_acceleration_shift,
    normalized_value,
    physical_value,
    prefactor,
    single_mirror,
    two_mirror,
)
from .oracle import (
    OracleReport,
    ProbeResult,
    brute_force_sum,
    kernel_oracle,
    linear_term_probe,
)
from .series import (
    ConvergenceError,
    ImagePair,
    SumResult,
    bilateral_sum,
    image_pair,
    partial_sum,
    tail_bound,
)
from .units import EstimateReport, PhysicalScenario, section4_estimate, to_reduced

__all__ = [
    "__version__",
    "AtomState", "GeometryConfig", "GeometryError", "Orientation", "validate",
    "KernelKind", "envelope", "kernel", "phase",
    "BoundaryModel", "Observable", "ObservableValue", "PrefactorId", "Quantity",
    "free_space", "low_acc_quadratic_coefficient", "low_acceleration_shift",
    "normalized_value", "physical_value", "prefactor", "single_mirror", "two_mirror",
    "OracleReport", "ProbeResult", "brute_force_sum", "kernel_oracle",
    "linear_term_probe",
    "ConvergenceError", "ImagePair", "SumResult", "bilateral_sum", "image_pair",
    "partial_sum", "tail_bound",
    "EstimateReport", "PhysicalScenario", "section4_estimate", "to_reduced",
]
