"""API v1 router aggregator."""

from fastapi import APIRouter

from shearlab.api.v1.health import router as health_router
from shearlab.api.v1.maps import router as maps_router
from shearlab.api.v1.render import router as render_router
from shearlab.api.v1.shears import router as shears_router
from shearlab.api.v1.surfaces import router as surfaces_router

api_router = APIRouter()

api_router.include_router(health_router)
api_router.include_router(shears_router)
api_router.include_router(surfaces_router)
api_router.include_router(maps_router)
api_router.include_router(render_router)
