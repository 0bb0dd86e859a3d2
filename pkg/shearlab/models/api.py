"""Request and response models of the HTTP API."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from shearlab.models.grid import DiskGrid
from shearlab.models.maps import ConformalMapSpec, HalfLine, SlitMapParams
from shearlab.models.shear import MonomialDilatation, ShearEvaluation
from shearlab.models.surface import SurfaceSample


class ComplexPoint(BaseModel):
    """A complex number as its real and imaginary parts."""

    re: float
    im: float = 0.0

    @classmethod
    def of(cls, value: complex) -> ComplexPoint:
        value = complex(value)
        return cls(re=value.real, im=value.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class ShearEvaluateRequest(BaseModel):
    """Points at which to evaluate the shear of a catalog map."""

    map: ConformalMapSpec
    dilatation: MonomialDilatation
    points: list[ComplexPoint] = Field(..., min_length=1, max_length=1000)
    route: Literal["closed", "oracle"] = Field(
        default="closed", description="Closed form when available, or quadrature only"
    )


class ShearPointResponse(BaseModel):
    """One evaluated point of a shear."""

    z: ComplexPoint
    h: ComplexPoint
    g: ComplexPoint
    f: ComplexPoint
    h_prime: ComplexPoint
    g_prime: ComplexPoint
    jacobian: float

    @classmethod
    def of(cls, ev: ShearEvaluation) -> ShearPointResponse:
        return cls(
            z=ComplexPoint.of(ev.z),
            h=ComplexPoint.of(ev.h),
            g=ComplexPoint.of(ev.g),
            f=ComplexPoint.of(ev.f),
            h_prime=ComplexPoint.of(ev.h_prime),
            g_prime=ComplexPoint.of(ev.g_prime),
            jacobian=ev.jacobian,
        )


class ShearEvaluateResponse(BaseModel):
    """Shear values in request order."""

    closed_form: bool = Field(description="Whether a closed form produced the values")
    results: list[ShearPointResponse]


class SurfacePointResponse(BaseModel):
    """One lifted surface point."""

    source: ComplexPoint
    u: float
    v: float
    w: float

    @classmethod
    def of(cls, sample: SurfaceSample) -> SurfacePointResponse:
        return cls(source=ComplexPoint.of(sample.source), u=sample.u, v=sample.v, w=sample.w)


class SurfaceEvaluateRequest(BaseModel):
    """Points at which to sample the lifted surface."""

    map: ConformalMapSpec
    dilatation: MonomialDilatation
    points: list[ComplexPoint] = Field(..., min_length=1, max_length=1000)


class SurfaceEvaluateResponse(BaseModel):
    """Surface samples in request order."""

    samples: list[SurfacePointResponse]


class HalfLineResponse(BaseModel):
    """Omitted half-line with the traced boundary value at its endpoint."""

    anchor: ComplexPoint
    direction: Literal[1, -1]
    traced: ComplexPoint

    @classmethod
    def of(cls, line: HalfLine, traced: complex) -> HalfLineResponse:
        return cls(
            anchor=ComplexPoint.of(line.anchor),
            direction=line.direction,
            traced=ComplexPoint.of(traced),
        )


class HalfLinesRequest(BaseModel):
    """Slit-map parameters plus the tracing radius."""

    params: SlitMapParams
    r: float = Field(default=0.9999, gt=0, lt=1)


class HalfLinesResponse(BaseModel):
    """Omitted half-lines of a slit map."""

    halflines: list[HalfLineResponse]
    consistent: bool = Field(description="Traced endpoints agree with the formulas")


class RenderSvgRequest(BaseModel):
    """Planar render request; the SVG is returned in the response body."""

    map: ConformalMapSpec
    dilatation: MonomialDilatation = Field(default_factory=lambda: MonomialDilatation(m=0))
    grid: DiskGrid = Field(default_factory=lambda: DiskGrid(samples_per_curve=64))
    target: Literal["shear", "map"] = "shear"

