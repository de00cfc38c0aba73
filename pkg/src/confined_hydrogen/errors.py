"""Exception types shared across the package."""


class ConfinedHydrogenError(Exception):
    """Base class for all package errors."""


class EndpointIsRootError(ConfinedHydrogenError, ValueError):
    """An interval endpoint is itself a root; the caller must perturb it."""


class ProbeOnEigenvalueError(ConfinedHydrogenError, ValueError):
    """A spectral probe hit an eigenvalue exactly (zero inertia count)."""


class ModelAnomalyError(ConfinedHydrogenError):
    """The truncation polynomial does not have the expected real positive roots."""


class PrecisionError(ConfinedHydrogenError, ArithmeticError):
    """A sign or value could not be certified even after precision escalation."""


class ResourceError(ConfinedHydrogenError):
    """Basis-size escalation did not stabilize within the allowed limits."""


class NoSignChangeError(ConfinedHydrogenError, ValueError):
    """A bracket does not enclose a sign change."""

    def __init__(self, message, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right
