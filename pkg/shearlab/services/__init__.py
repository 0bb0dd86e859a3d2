"""Numerical services: special functions, maps, shears, lifts, export."""

from shearlab.services.shear import evaluate_shear, shear_oracle, verify_shear
from shearlab.services.verify import run_verification

__all__ = ["evaluate_shear", "run_verification", "shear_oracle", "verify_shear"]
