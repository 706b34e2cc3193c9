"""Truncated-Fock brute force for a handful of bosonic modes.

Operators are scipy sparse matrices on the tensor product of per-mode Fock
spaces |n_1, ..., n_M> with n_k < cutoff, mode 1 being the most significant
index.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import expm_multiply

from subcycle_uncertainty.errors import ConfigError, FockCutoffError
from subcycle_uncertainty.models import (
    DetectorParams,
    DiscretizedMode,
    FrequencyGrid,
    MomentSet,
)
from subcycle_uncertainty.oracles.symplectic import (
    coupling_vectors,
    exponential_schedule,
)
from subcycle_uncertainty.utils.constants import (
    DEFAULT_WINDOW_SIGMAS,
    FOCK_TOLERANCE,
    MAX_FOCK_CUTOFF,
    MAX_FOCK_DIMENSION,
    MAX_FOCK_FIELD_BINS,
    MAX_FOCK_MODES,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FockOperatorSet:
    """Annihilation operators b_k of several modes in a truncated Fock space."""

    mode_count: int
    cutoff: int
    annihilators: Tuple[sparse.csr_matrix, ...]

    @property
    def dimension(self) -> int:
        return self.cutoff**self.mode_count

    @property
    def creators(self) -> List[sparse.csr_matrix]:
        return [b.conj().T.tocsr() for b in self.annihilators]

    def vacuum(self) -> np.ndarray:
        state = np.zeros(self.dimension, dtype=complex)
        state[0] = 1.0
        return state

    def quadratures(self) -> List[sparse.csr_matrix]:
        """q_k = (b + b^dag)/sqrt(2) and p_k = -i (b - b^dag)/sqrt(2), interleaved."""
        operators = []
        for b, b_dag in zip(self.annihilators, self.creators):
            operators.append(((b + b_dag) / math.sqrt(2.0)).tocsr())
            operators.append((-1j * (b - b_dag) / math.sqrt(2.0)).tocsr())
        return operators

    def commutator_defect(self) -> float:
        """Largest deviation of [b_k, b_k^dag] from 1 below the cutoff edge."""
        shape = (self.cutoff,) * self.mode_count
        occupations = np.array(np.unravel_index(np.arange(self.dimension), shape))
        interior = np.all(occupations < self.cutoff - 1, axis=0)
        identity = np.eye(int(interior.sum()))
        defect = 0.0
        for b, b_dag in zip(self.annihilators, self.creators):
            commutator = (b @ b_dag - b_dag @ b).toarray()
            block = commutator[np.ix_(interior, interior)]
            defect = max(defect, float(np.max(np.abs(block - identity))))
        return defect


def build_fock_operators(mode_count: int, cutoff: int) -> FockOperatorSet:
    """Build sparse annihilation operators for ``mode_count`` modes.

    Raises:
        ConfigError: If the mode count, cutoff or total dimension is out of range
    """
    if not 1 <= mode_count <= MAX_FOCK_MODES:
        raise ConfigError(
            f"mode_count must be in [1, {MAX_FOCK_MODES}], got {mode_count}"
        )
    if not 2 <= cutoff <= MAX_FOCK_CUTOFF:
        raise ConfigError(f"cutoff must be in [2, {MAX_FOCK_CUTOFF}], got {cutoff}")
    if cutoff**mode_count > MAX_FOCK_DIMENSION:
        raise ConfigError(
            f"Fock dimension {cutoff}^{mode_count} exceeds {MAX_FOCK_DIMENSION}"
        )

    single = sparse.diags(np.sqrt(np.arange(1, cutoff, dtype=float)), offsets=1)
    identity = sparse.identity(cutoff, format="csr")

    annihilators = []
    for k in range(mode_count):
        operator = single if k == 0 else identity
        for j in range(1, mode_count):
            factor = single if j == k else identity
            operator = sparse.kron(operator, factor, format="csr")
        annihilators.append(sparse.csr_matrix(operator))

    return FockOperatorSet(
        mode_count=mode_count, cutoff=cutoff, annihilators=tuple(annihilators)
    )


def _moments_of(a: sparse.spmatrix, state: np.ndarray) -> MomentSet:
    a_state = a @ state
    number_state = a.conj().T @ a_state
    n = float(np.vdot(a_state, a_state).real)
    m = complex(np.vdot(state, a @ a_state))
    n2 = float(np.vdot(number_state, number_state).real)
    return MomentSet(n=n, m=m, n2=n2, var=n2 - n * n)


def _mode_operator(mode: DiscretizedMode, ops: FockOperatorSet) -> sparse.csr_matrix:
    a = sparse.csr_matrix((ops.dimension, ops.dimension), dtype=complex)
    terms = zip(mode.alpha, mode.beta, ops.annihilators, ops.creators)
    for alpha, beta, b, b_dag in terms:
        a = a + alpha * b + beta * b_dag
    return a


def _combine(
    coefficients: np.ndarray, operators: List[sparse.csr_matrix]
) -> sparse.csr_matrix:
    total = sparse.csr_matrix(operators[0].shape, dtype=complex)
    for coefficient, operator in zip(coefficients, operators):
        if coefficient != 0.0:
            total = total + coefficient * operator
    return total


def fock_moments(mode: DiscretizedMode, cutoff: int) -> MomentSet:
    """Vacuum moments of a discretized mode at a single cutoff."""
    ops = build_fock_operators(mode.mode_count, cutoff)
    return _moments_of(_mode_operator(mode, ops), ops.vacuum())


def fock_brute_force(
    mode: DiscretizedMode,
    cutoff: int = 4,
    tolerance: float = FOCK_TOLERANCE,
) -> MomentSet:
    """Vacuum moments of a mode over at most three bins by matrix algebra.

    The moments are computed at ``cutoff`` and at twice the cutoff and only
    accepted when both agree.

    Args:
        mode: Discretized mode over one to three bins
        cutoff: Fock cutoff per bin, at least 4
        tolerance: Largest accepted change under cutoff doubling

    Returns:
        MomentSet at the doubled cutoff

    Raises:
        ConfigError: If the mode has too many bins or the cutoff is below 4
        FockCutoffError: If the moments change under cutoff doubling
    """
    if mode.mode_count > MAX_FOCK_FIELD_BINS:
        raise ConfigError(
            f"brute force supports at most {MAX_FOCK_FIELD_BINS} bins, "
            f"got {mode.mode_count}"
        )
    if cutoff < 4:
        raise ConfigError(f"cutoff must be at least 4, got {cutoff}")

    coarse = fock_moments(mode, cutoff)
    fine = fock_moments(mode, 2 * cutoff)
    change = fine.max_difference(coarse)
    logger.debug(f"Fock moments change {change:.3g} when cutoff {cutoff} is doubled")
    if change > tolerance:
        raise FockCutoffError(
            f"moments changed by {change:.3g} when doubling cutoff {cutoff}"
        )
    return fine


def fock_evolve(
    d: DetectorParams,
    grid: FrequencyGrid,
    steps: int,
    cutoff: int = 6,
    scheme: str = "cf4",
    window_sigmas: float = DEFAULT_WINDOW_SIGMAS,
) -> MomentSet:
    """Evolve detector and up to three field bins as a state vector.

    Uses the same step exponentials as the symplectic engine, each applied as
    exp(-i H) with H = sum_j h_j s_j (c_j . xi)(d_j . xi).

    Returns:
        Detector MomentSet after the interaction
    """
    if grid.size > MAX_FOCK_FIELD_BINS:
        raise ConfigError(
            f"Fock evolution supports at most {MAX_FOCK_FIELD_BINS} bins, "
            f"got {grid.size}"
        )
    ops = build_fock_operators(grid.size + 1, cutoff)
    xi = ops.quadratures()
    times, weights = exponential_schedule(d, steps, scheme, window_sigmas)

    state = ops.vacuum()
    for sample_times, sample_weights in zip(times, weights):
        hamiltonian = sparse.csr_matrix((ops.dimension, ops.dimension), dtype=complex)
        for t, weight in zip(sample_times, sample_weights):
            c, field, strength = coupling_vectors(d, grid, float(t))
            if strength == 0.0:
                continue
            coupling = _combine(c, xi) @ _combine(field, xi)
            hamiltonian = hamiltonian + (weight * strength) * coupling
        state = expm_multiply(-1j * hamiltonian, state)

    return _moments_of(ops.annihilators[0], state)
