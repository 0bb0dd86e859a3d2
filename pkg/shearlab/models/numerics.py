"""Quadrature and special-function parameter models."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field

from shearlab.core.config import get_settings


def is_nonpositive_integer(value: complex) -> bool:
    """Return True when value is 0, -1, -2, ... (within rounding)."""
    if abs(value.imag) > 0.0:
        return False
    re = value.real
    return re <= 0.0 and math.isclose(re, round(re), rel_tol=0.0, abs_tol=1e-14)


class QuadratureConfig(BaseModel):
    """Tolerances for the adaptive quadrature kernels."""

    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default=1e-12, gt=0, description="Relative tolerance")
    abs_tol: float = Field(default=1e-14, gt=0, description="Absolute tolerance")
    max_depth: int = Field(default=40, ge=1, description="Subdivision depth budget")

    @property
    def max_subintervals(self) -> int:
        """Subinterval budget handed to the adaptive integrator."""
        return 50 * self.max_depth

    @classmethod
    def from_settings(cls) -> QuadratureConfig:
        """Build the configuration from the cached application settings."""
        settings = get_settings()
        return cls(
            rel_tol=settings.rel_tol,
            abs_tol=settings.abs_tol,
            max_depth=settings.max_depth,
        )


class Gauss2F1Params(BaseModel):
    """Parameters (a, b; c) of the Gaussian hypergeometric function.

    c = 0, -1, -2, ... is a pole of the function; the evaluators reject it
    with ParamError.
    """

    model_config = ConfigDict(frozen=True)

    a: complex
    b: complex
    c: complex


class AppellF1Params(BaseModel):
    """Parameters (a, b1, b2; c) of the first Appell function."""

    model_config = ConfigDict(frozen=True)

    a: complex
    b1: complex
    b2: complex
    c: complex

    @property
    def euler_admissible(self) -> bool:
        """Whether Re c > Re a > 0 holds, so the Euler integral converges."""
        return self.c.real > self.a.real > 0.0
