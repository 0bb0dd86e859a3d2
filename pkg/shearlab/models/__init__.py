"""Data models for maps, shears, surfaces and render jobs."""

from shearlab.models.grid import DiskGrid, GridCurve, RenderJob
from shearlab.models.maps import (
    ConformalMapSpec,
    FourSlitMap,
    HalfLine,
    NGonParams,
    RegularNGonMap,
    SlitDegeneracy,
    SlitMapParams,
)
from shearlab.models.numerics import AppellF1Params, Gauss2F1Params, QuadratureConfig
from shearlab.models.shear import MonomialDilatation, ShearEvaluation, SlitClosedFormTerms
from shearlab.models.surface import SurfaceSample, WeierstrassTriple

__all__ = [
    # Numerics
    "AppellF1Params",
    "Gauss2F1Params",
    "QuadratureConfig",
    # Maps
    "ConformalMapSpec",
    "FourSlitMap",
    "HalfLine",
    "NGonParams",
    "RegularNGonMap",
    "SlitDegeneracy",
    "SlitMapParams",
    # Shears and surfaces
    "MonomialDilatation",
    "ShearEvaluation",
    "SlitClosedFormTerms",
    "SurfaceSample",
    "WeierstrassTriple",
    # Rendering
    "DiskGrid",
    "GridCurve",
    "RenderJob",
]
