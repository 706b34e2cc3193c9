"""Zero-mean Gaussian states of the detector and the discretized field.

Quadratures are ordered (q_0, p_0, q_1, p_1, ...) with mode 0 the detector.
The vacuum covariance is I/2 and [q_j, p_j] = i.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from subcycle_uncertainty.errors import InvalidStateError
from subcycle_uncertainty.models import MomentSet

logger = logging.getLogger(__name__)


def symplectic_form(n_modes: int) -> np.ndarray:
    """Symplectic form in interleaved quadrature ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def apply_symplectic_form(vectors: np.ndarray) -> np.ndarray:
    """Multiply interleaved phase-space vectors (along axis 0) by the form."""
    result = np.empty_like(vectors)
    result[0::2] = vectors[1::2]
    result[1::2] = -vectors[0::2]
    return result


def symplectic_defect(S: np.ndarray) -> float:
    """Largest entry of S Omega S^T - Omega."""
    omega = symplectic_form(S.shape[0] // 2)
    return float(np.max(np.abs(S @ omega @ S.T - omega)))



def _entry_scale(matrix: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(matrix))))


@dataclass(eq=False)
class GaussianState:
    """Gaussian state given by its quadrature mean and covariance."""

    mean: np.ndarray
    cov: np.ndarray

    @classmethod
    def vacuum(cls, n_modes: int) -> "GaussianState":
        return cls(mean=np.zeros(2 * n_modes), cov=0.5 * np.eye(2 * n_modes))

    @property
    def n_modes(self) -> int:
        return self.mean.shape[0] // 2

    def validate(self, tolerance: float = 1e-10) -> None:
        """Validate the state.

        Raises:
            InvalidStateError: For ill-shaped arrays, a non-symmetric covariance
                or a covariance violating the uncertainty relation
        """
        if self.mean.ndim != 1 or self.mean.shape[0] % 2:
            raise InvalidStateError(
                f"Invalid mean vector shape {self.mean.shape}; expected (2n,)."
            )
        expected = (self.mean.shape[0],) * 2
        if self.cov.shape != expected:
            raise InvalidStateError(
                f"Invalid covariance shape; "
                f"expected={expected}, actual={self.cov.shape}."
            )
        # Rounding grows with the covariance entries
        scale = _entry_scale(self.cov)
        if not np.allclose(self.cov, self.cov.T, rtol=0.0, atol=1e-12 * scale):
            raise InvalidStateError("The covariance matrix is not symmetric.")

        hermitian = self.cov + 0.5j * symplectic_form(self.n_modes)
        lowest = float(np.linalg.eigvalsh(hermitian)[0])
        if lowest < -tolerance * scale:
            raise InvalidStateError(
                "The covariance matrix violates the uncertainty relation "
                f"(lowest eigenvalue {lowest:.3g})."
            )

    def purity_defect(self) -> float:
        """Distance of the state from purity, zero for a pure state.

        A Gaussian state is pure exactly when (2 cov Omega)^2 = -I. Returns the
        largest entry of (2 cov Omega)^2 + I divided by the largest entry of
        2 cov: rounding contributes about eps |2 cov|, while a mixed state keeps
        a residual of order one under any symplectic map.

        Raises:
            InvalidStateError: If the covariance has a negative eigenvalue
        """
        scale = _entry_scale(2.0 * self.cov)
        if float(np.linalg.eigvalsh(self.cov)[0]) < -1e-12 * scale:
            raise InvalidStateError("The covariance matrix has a negative eigenvalue.")
        product = 2.0 * self.cov @ symplectic_form(self.n_modes)
        residual = product @ product + np.eye(product.shape[0])
        return float(np.max(np.abs(residual))) / scale

    def transformed(self, S: np.ndarray) -> "GaussianState":
        """State after the linear phase-space map xi -> S xi."""
        return GaussianState(mean=S @ self.mean, cov=S @ self.cov @ S.T)

    def reduced(self, modes: Sequence[int]) -> "GaussianState":
        """Marginal state of the given modes."""
        indices = np.array([[2 * k, 2 * k + 1] for k in modes], dtype=int).ravel()
        return GaussianState(
            mean=self.mean[indices].copy(),
            cov=self.cov[np.ix_(indices, indices)].copy(),
        )

    def moments(self, mode: int = 0) -> MomentSet:
        """Moments of the annihilation operator (q + i p)/sqrt(2) of one mode.

        Raises:
            InvalidStateError: If the mode is displaced
        """
        local = self.reduced([mode])
        if np.any(np.abs(local.mean) > 1e-12):
            raise InvalidStateError("moments are defined for zero-mean states only")
        return moments_from_covariance(local.cov)


def moments_from_covariance(cov: np.ndarray) -> MomentSet:
    """Single-mode moments from a 2x2 quadrature covariance of a zero-mean state."""
    vqq, vpp = float(cov[0, 0]), float(cov[1, 1])
    vqp = 0.5 * float(cov[0, 1] + cov[1, 0])
    n = 0.5 * (vqq + vpp - 1.0)
    m = complex(0.5 * (vqq - vpp), vqp)
    return MomentSet.from_wick(n, m)
