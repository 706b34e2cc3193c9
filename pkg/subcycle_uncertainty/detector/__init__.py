"""Rapidly switched harmonic-oscillator detector."""
