"""Polar grid and render job models."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from shearlab.models.maps import ConformalMapSpec
from shearlab.models.numerics import QuadratureConfig
from shearlab.models.shear import MonomialDilatation

OutputFormat = Literal["svg", "csv", "obj"]
RenderTarget = Literal["shear", "map"]


class DiskGrid(BaseModel):
    """Rays and concentric circles covering the disk |z| <= r_max."""

    model_config = ConfigDict(frozen=True)

    n_rays: int = Field(default=16, ge=1, description="Number of radial segments")
    n_circles: int = Field(default=12, ge=0, description="Number of concentric circles")
    r_max: float = Field(default=0.98, gt=0, lt=1, description="Outer radius")
    samples_per_curve: int = Field(default=256, ge=16, description="Points per curve")


@dataclass(frozen=True)
class GridCurve:
    """One discretised grid curve; kind is "ray" or "circle"."""

    curve_id: int
    kind: Literal["ray", "circle"]
    index: int
    points: np.ndarray


class RenderJob(BaseModel):
    """Everything needed to render one image or mesh."""

    model_config = ConfigDict(frozen=True)

    map: ConformalMapSpec
    dilatation: MonomialDilatation = Field(default_factory=lambda: MonomialDilatation(m=0))
    grid: DiskGrid = Field(default_factory=DiskGrid)
    format: OutputFormat = "svg"
    target: RenderTarget = "shear"
    out: Path | None = None
    rel_tol: float | None = Field(default=None, gt=0)
    abs_tol: float | None = Field(default=None, gt=0)
    max_depth: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def validate_liftable_mesh(self) -> RenderJob:
        """Surface meshes need omega = q^2."""
        if self.format == "obj" and not self.dilatation.liftable:
            raise ValueError(
                f"obj export needs an even dilatation power, got m={self.dilatation.m}"
            )
        return self

    def quadrature(self) -> QuadratureConfig:
        """Settings-based quadrature configuration with this job's overrides."""
        base = QuadratureConfig.from_settings()
        overrides = {
            key: value
            for key, value in (
                ("rel_tol", self.rel_tol),
                ("abs_tol", self.abs_tol),
                ("max_depth", self.max_depth),
            )
            if value is not None
        }
        return base.model_copy(update=overrides) if overrides else base
