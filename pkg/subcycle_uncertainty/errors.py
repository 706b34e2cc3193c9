"""Exception hierarchy for the subcycle_uncertainty package.

Configuration problems derive from ``ConfigError`` (CLI exit code 1), numerical
convergence failures from ``ConvergenceError`` (CLI exit code 2).
"""


class SubcycleError(Exception):
    """Base class for all package errors."""


class ConfigError(SubcycleError, ValueError):
    """Invalid input parameters or configuration."""


class GridMismatchError(ConfigError):
    """Spectral functions sampled on different frequency grids."""


class CutoffError(ConfigError):
    """Frequency grid does not cover the spectral support of a mode."""


class ConvergenceError(SubcycleError):
    """A numerical procedure did not reach its tolerance."""


class CommutatorDefectError(ConvergenceError):
    """Discretized mode violates the canonical commutator beyond tolerance."""


class FockCutoffError(ConvergenceError):
    """Truncated-Fock moments changed when the cutoff was doubled."""


class StepConvergenceError(ConvergenceError):
    """Detector moments did not settle under time-step doubling."""


class SymplecticViolationError(ConvergenceError):
    """Accumulated phase-space map is not symplectic within tolerance."""


class ExtrapolationError(ConvergenceError):
    """Limit extrapolation residual exceeds tolerance."""


class InvalidStateError(SubcycleError):
    """Gaussian state has the wrong shape or violates the uncertainty relation."""
