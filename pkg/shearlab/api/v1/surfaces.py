"""Minimal-surface sampling endpoints."""

from fastapi import APIRouter

from shearlab.models.api import (
    SurfaceEvaluateRequest,
    SurfaceEvaluateResponse,
    SurfacePointResponse,
)
from shearlab.models.numerics import QuadratureConfig
from shearlab.services.minsurf import surface_point

router = APIRouter(prefix="/surfaces", tags=["Surfaces"])


@router.post(
    "/evaluate",
    response_model=SurfaceEvaluateResponse,
    summary="Sample a lifted surface",
)
def evaluate(request: SurfaceEvaluateRequest) -> SurfaceEvaluateResponse:
    """(u, v, w) = (Re f, Im f, 2 Im psi) at each point."""
    cfg = QuadratureConfig.from_settings()
    samples = [
        SurfacePointResponse.of(
            surface_point(request.map, request.dilatation, p.to_complex(), cfg)
        )
        for p in request.points
    ]
    return SurfaceEvaluateResponse(samples=samples)
