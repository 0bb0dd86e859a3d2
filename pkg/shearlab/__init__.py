"""Harmonic shears of slit and polygon maps, with minimal-surface lifts."""

__version__ = "1.0.0"
