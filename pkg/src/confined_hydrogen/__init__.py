"""Hydrogen atom in an impenetrable sphere: exact truncation solutions,
certified Rayleigh-Ritz spectra and the studies built on them."""

from .analysis import (
    CriticalValue,
    CrossingRecord,
    SweepTable,
    conjecture1_study,
    critical_beta,
    energy_sweep,
    find_crossing,
)
from .errors import (
    ConfinedHydrogenError,
    EndpointIsRootError,
    ModelAnomalyError,
    NoSignChangeError,
    PrecisionError,
    ProbeOnEigenvalueError,
    ResourceError,
)
from .exact import BigFloat, ExactPolynomial, SturmSequence, SymmetricExactMatrix, inertia, isolate_real_roots
from .model import DimensionlessProblem, PhysicalConfig, QuantumNumbers, to_dimensionless
from .polysol import PolySolution, polysol_roots
from .rrm import RitzSpectrum, ritz_values, ritz_vector

__version__ = "0.1.0"
