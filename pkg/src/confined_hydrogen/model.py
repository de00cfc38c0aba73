"""Problem definitions, unit reduction and closed-form reference energies."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .exact import BigFloat, ExactScalar, Q


@dataclass(frozen=True)
class PhysicalConfig:
    """Hydrogen-like atom in a hard sphere, in arbitrary consistent units.

    All four quantities must be strictly positive.  They are stored exactly
    (floats are converted to the binary rational they represent).
    """

    electron_mass: object
    hbar: object
    coulomb_strength: object
    box_radius: object

    def __post_init__(self):
        for name in ("electron_mass", "hbar", "coulomb_strength", "box_radius"):
            value = Q(getattr(self, name))
            if value <= 0:
                raise ValueError(f"{name} must be > 0, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class DimensionlessProblem:
    """Radial eigenproblem ``-1/2 Laplacian - beta/r`` inside a sphere of radius ``r0``.

    ``beta`` may be given as an exact rational or a :class:`BigFloat`; the
    exact pipeline uses :attr:`beta_exact`, which for a ``BigFloat`` is the
    dyadic rational the float stores (no precision is lost).
    """

    l: int
    beta: object = field(default_factory=lambda: mpq(0))
    r0: object = field(default_factory=lambda: mpq(1))

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 0:
            raise ValueError("l must be a non-negative integer")
        object.__setattr__(self, "l", int(self.l))
        if not isinstance(self.beta, BigFloat):
            object.__setattr__(self, "beta", Q(self.beta))
        if self.beta_exact < 0:
            raise ValueError("beta must be >= 0")
        r0 = Q(self.r0)
        if r0 <= 0:
            raise ValueError("r0 must be > 0")
        object.__setattr__(self, "r0", r0)

    @property
    def beta_exact(self) -> ExactScalar:
        return Q(self.beta)


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """Radial (``n``, node count) and angular (``l``) quantum numbers."""

    n: int
    l: int

    def __post_init__(self):
        if self.n < 0 or self.l < 0:
            raise ValueError("quantum numbers must be non-negative")


def to_dimensionless(cfg: PhysicalConfig, l: int = 0) -> tuple[DimensionlessProblem, ExactScalar]:
    """Reduce to a unit box: ``beta = m r0 K / hbar^2`` and energy scale ``hbar^2 / (m r0^2)``.

    A physical eigenvalue equals ``energy_scale`` times the dimensionless one.
    """
    m, hbar, k, r0 = cfg.electron_mass, cfg.hbar, cfg.coulomb_strength, cfg.box_radius
    beta = m * r0 * k / hbar**2
    scale = hbar**2 / (m * r0**2)
    return DimensionlessProblem(l=l, beta=beta, r0=1), scale


def to_physical_energy(energy, energy_scale: ExactScalar):
    """Inverse of the reduction for a single eigenvalue."""
    if isinstance(energy, BigFloat):
        return BigFloat.from_exact(energy.exact() * energy_scale, energy.precision_bits)
    return Q(energy) * energy_scale


def scaling_partner(beta, l: int = 0) -> tuple[DimensionlessProblem, DimensionlessProblem, ExactScalar]:
    """Equivalent descriptions ``(r0=1, beta)`` and ``(r0=beta, coupling 1)``.

    Eigenvalues satisfy ``E(problem_a) = factor * E(problem_b)`` level by level,
    with ``factor = beta**2``.
    """
    b = Q(beta)
    if b <= 0:
        raise ValueError("beta must be > 0")
    a = DimensionlessProblem(l=l, beta=b, r0=1)
    other = DimensionlessProblem(l=l, beta=1, r0=b)
    return a, other, b * b


def free_atom_energy(q: QuantumNumbers) -> ExactScalar:
    """Unconfined hydrogen level ``-1 / (2 (n + l + 1)^2)``."""
    return mpq(-1, 2 * (q.n + q.l + 1) ** 2)
