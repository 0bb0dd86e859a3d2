"""Shear evaluation endpoints."""

from fastapi import APIRouter

from shearlab.models.api import (
    ShearEvaluateRequest,
    ShearEvaluateResponse,
    ShearPointResponse,
)
from shearlab.models.numerics import QuadratureConfig
from shearlab.services.shear import closed_form_shear, shear_oracle

router = APIRouter(prefix="/shears", tags=["Shears"])


@router.post(
    "/evaluate",
    response_model=ShearEvaluateResponse,
    summary="Evaluate a shear",
    description="h, g, f = h + conj(g) and the derivatives at each point.",
)
def evaluate(request: ShearEvaluateRequest) -> ShearEvaluateResponse:
    """Evaluate from the closed form when one exists, else by quadrature."""
    cfg = QuadratureConfig.from_settings()
    results = []
    closed_form = request.route == "closed"
    for point in request.points:
        z = point.to_complex()
        ev = closed_form_shear(request.map, request.dilatation, z, cfg) if closed_form else None
        if ev is None:
            closed_form = False
            ev = shear_oracle(request.map, request.dilatation, z, cfg)
        results.append(ShearPointResponse.of(ev))
    return ShearEvaluateResponse(closed_form=closed_form, results=results)
