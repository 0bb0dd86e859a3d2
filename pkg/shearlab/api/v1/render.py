"""Planar render endpoint."""

from fastapi import APIRouter, Response

from shearlab.models.api import RenderSvgRequest
from shearlab.models.grid import RenderJob
from shearlab.services.render import render_map

router = APIRouter(prefix="/render", tags=["Render"])


@router.post(
    "/svg",
    response_class=Response,
    summary="Render the polar grid image as SVG",
    responses={200: {"content": {"image/svg+xml": {}}}},
)
def render_svg(request: RenderSvgRequest) -> Response:
    """Image of the polar grid under f or phi."""
    job = RenderJob(
        map=request.map,
        dilatation=request.dilatation,
        grid=request.grid,
        format="svg",
        target=request.target,
    )
    return Response(content=render_map(job), media_type="image/svg+xml")
