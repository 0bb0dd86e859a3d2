"""Minimal-surface models."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, computed_field


class SurfaceSample(BaseModel):
    """Point (u, v, w) = (Re f, Im f, 2 Im psi) of the lifted surface over z."""

    model_config = ConfigDict(frozen=True)

    source: complex
    u: float
    v: float
    w: float


class WeierstrassTriple(BaseModel):
    """Values of the Weierstrass-Enneper functions phi1, phi2, phi3 at a point."""

    model_config = ConfigDict(frozen=True)

    phi1: complex
    phi2: complex
    phi3: complex

    @computed_field  # type: ignore[prop-decorator]
    @property
    def isothermal_residual(self) -> float:
        """|phi1^2 + phi2^2 + phi3^2| relative to |phi1|^2 + |phi2|^2 + |phi3|^2."""
        scale = abs(self.phi1) ** 2 + abs(self.phi2) ** 2 + abs(self.phi3) ** 2
        if scale == 0.0:
            return 0.0
        return abs(self.phi1**2 + self.phi2**2 + self.phi3**2) / scale
