"""Test package for harmonic-shears."""
