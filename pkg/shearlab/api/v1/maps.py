"""Slit-map geometry endpoints."""

from fastapi import APIRouter

from shearlab.models.api import HalfLineResponse, HalfLinesRequest, HalfLinesResponse
from shearlab.services.maps import check_halfline_anchors, slit_omitted_halflines

router = APIRouter(prefix="/maps", tags=["Maps"])


@router.post(
    "/halflines",
    response_model=HalfLinesResponse,
    summary="Omitted half-lines of a slit map",
    description="Endpoint formulas for c in {-2, 0, 2}, with traced boundary values.",
)
def halflines(request: HalfLinesRequest) -> HalfLinesResponse:
    """Half-lines omitted from the image of the disk."""
    lines = slit_omitted_halflines(request.params)
    check = check_halfline_anchors(request.params, request.r)
    return HalfLinesResponse(
        halflines=[
            HalfLineResponse.of(line, traced)
            for line, traced in zip(lines, check.traced, strict=True)
        ],
        consistent=check.success,
    )
