"""Conformal-map catalog models: four-slit and regular n-gon maps."""

from __future__ import annotations

import cmath
import math
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


# cos(gamma) is never exactly 0 in floating point; |c| below this is the c = 0 map.
C_ZERO_TOL = 1e-12


class SlitDegeneracy(str, Enum):
    """Degenerate four-slit tags where the gamma form is singular."""

    C_MINUS_TWO = "c=-2"
    C_PLUS_TWO = "c=+2"


class SlitMapParams(BaseModel):
    """Parameters of phi(z) = A log((1+z)/(1-z)) + B z / (1 + c z + z^2).

    Either gamma in (0, pi) is set (c = -2 cos gamma), or the map is one
    of the degenerate tags c = -2 / c = +2. gamma_over_pi keeps gamma as an
    exact rational multiple of pi when the caller has one.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    A: float = Field(..., gt=0, description="Logarithmic weight")
    B: float = Field(..., gt=0, description="Rational weight")
    gamma: float | None = Field(default=None, gt=0, lt=math.pi)
    gamma_over_pi: Fraction | None = Field(default=None)
    degenerate: SlitDegeneracy | None = Field(default=None)

    @model_validator(mode="before")
    @classmethod
    def expand_shorthand(cls, data: Any) -> Any:
        """Accept c = -2 cos gamma, or gamma_over_pi alone, in place of gamma."""
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if "c" in data:
            c = float(data.pop("c"))
            if not -2.0 <= c <= 2.0:
                raise ValueError(f"c must lie in [-2, 2], got {c}")
            if c == -2.0:
                data["degenerate"] = SlitDegeneracy.C_MINUS_TWO
            elif c == 2.0:
                data["degenerate"] = SlitDegeneracy.C_PLUS_TWO
            elif abs(c) <= C_ZERO_TOL:
                data["gamma_over_pi"] = Fraction(1, 2)
            else:
                data["gamma"] = math.acos(-c / 2.0)
        ratio = data.get("gamma_over_pi")
        if ratio is not None and data.get("gamma") is None:
            data["gamma"] = float(Fraction(ratio)) * math.pi
        return data

    @model_validator(mode="after")
    def validate_branch(self) -> SlitMapParams:
        """Exactly one of gamma / degenerate must describe the map."""
        if (self.gamma is None) == (self.degenerate is None):
            raise ValueError("set exactly one of gamma or degenerate")
        if self.gamma_over_pi is not None:
            if self.gamma is None:
                raise ValueError("gamma_over_pi requires gamma")
            if not 0 < self.gamma_over_pi < 1:
                raise ValueError("gamma_over_pi must lie in (0, 1)")
        return self

    @classmethod
    def from_c(cls, A: float, B: float, c: float) -> SlitMapParams:
        """Build from c in [-2, 2]; c = +-2 select the degenerate tags."""
        return cls.model_validate({"A": A, "B": B, "c": c})

    @classmethod
    def from_gamma_fraction(cls, A: float, B: float, ratio: Fraction) -> SlitMapParams:
        """Build from gamma = ratio * pi with ratio an exact fraction."""
        ratio = Fraction(ratio)
        return cls(A=A, B=B, gamma=float(ratio) * math.pi, gamma_over_pi=ratio)

    @classmethod
    def corollary(cls, alpha: float) -> SlitMapParams:
        """Parameters A = sin^2(alpha)/2, B = cos^2(alpha), c = 0."""
        return cls.from_gamma_fraction(
            0.5 * math.sin(alpha) ** 2, math.cos(alpha) ** 2, Fraction(1, 2)
        )

    @property
    def c(self) -> float:
        """Coefficient c = -2 cos gamma of the quadratic denominator."""
        if self.degenerate is SlitDegeneracy.C_MINUS_TWO:
            return -2.0
        if self.degenerate is SlitDegeneracy.C_PLUS_TWO:
            return 2.0
        assert self.gamma is not None
        if self.gamma_over_pi == Fraction(1, 2):
            return 0.0
        c = -2.0 * math.cos(self.gamma)
        return 0.0 if abs(c) <= C_ZERO_TOL else c

    @property
    def eta(self) -> complex:
        """Pole direction e^{i gamma}."""
        if self.gamma is None:
            raise ValueError("degenerate slit maps have no pole direction")
        return cmath.exp(1j * self.gamma)


class NGonParams(BaseModel):
    """Regular n-gon map phi(z) = int_0^z (1 - s^n)^(-2/n) ds."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=3, description="Number of polygon vertices")


class FourSlitMap(BaseModel):
    """Catalog entry for the four-slit map."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["four_slit"] = "four_slit"
    params: SlitMapParams


class RegularNGonMap(BaseModel):
    """Catalog entry for the regular n-gon map."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["ngon"] = "ngon"
    params: NGonParams


ConformalMapSpec = Annotated[FourSlitMap | RegularNGonMap, Field(discriminator="kind")]


class HalfLine(BaseModel):
    """Horizontal half-line omitted from a slit-map image."""

    model_config = ConfigDict(frozen=True)

    anchor: complex = Field(..., description="Finite endpoint")
    direction: Literal[1, -1] = Field(..., description="+1 towards +inf, -1 towards -inf")
