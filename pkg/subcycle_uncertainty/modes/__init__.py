"""Gaussian subcycle wavepacket modes."""
