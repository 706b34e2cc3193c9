"""Sweeps, convergence studies and artifact emission."""
