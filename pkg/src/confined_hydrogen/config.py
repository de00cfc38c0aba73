"""Run configuration shared by the command line and the verification suite."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .exact import DEFAULT_DIGITS, DEFAULT_PRECISION_BITS
from .rrm import DEFAULT_BASIS_SIZE

PRECISION_ENV = "CONFINED_HYDROGEN_PRECISION_BITS"
FORMATS = ("csv", "json")


def default_precision_bits() -> int:
    """Precision default, overridable through the environment."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None or raw == "":
        return DEFAULT_PRECISION_BITS
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class RunConfig:
    digits: int = DEFAULT_DIGITS
    basis_size: int = DEFAULT_BASIS_SIZE
    precision_bits: int = DEFAULT_PRECISION_BITS
    output_path: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.basis_size < 5:
            raise ValueError("basis size must be >= 5")
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
