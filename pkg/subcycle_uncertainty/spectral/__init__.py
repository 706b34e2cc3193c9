"""Frequency grids and the spectral algebra of wavepacket modes."""

from subcycle_uncertainty.spectral.functions import (
    frequency_components,
    gram_matrices,
    inverse_expansion,
    mode_norm,
    signed_inner_product,
    symplectic_overlap,
    synthesize_momentum_profile,
    synthesize_profile,
)
from subcycle_uncertainty.spectral.quadrature import (
    build_grid,
    grid_for_mode,
    integrate,
)

__all__ = [
    "build_grid",
    "frequency_components",
    "grid_for_mode",
    "gram_matrices",
    "integrate",
    "inverse_expansion",
    "mode_norm",
    "signed_inner_product",
    "symplectic_overlap",
    "synthesize_momentum_profile",
    "synthesize_profile",
]
