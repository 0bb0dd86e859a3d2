"""FastAPI application entry point."""

import logging
from collections.abc import AsyncGenerator
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request, status
from fastapi.responses import JSONResponse

from shearlab.api.v1.router import api_router
from shearlab.core.config import get_settings
from shearlab.core.exceptions import NumericalError, ShearLabError

logger = logging.getLogger(__name__)

settings = get_settings()


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncGenerator[None, None]:
    """Application lifespan manager for startup and shutdown events."""
    logger.info(f"{settings.app_name} {settings.app_version} starting")
    yield


def create_application() -> FastAPI:
    """Application factory for creating FastAPI instance."""
    application = FastAPI(
        title=settings.app_name,
        version=settings.app_version,
        debug=settings.debug,
        lifespan=lifespan,
        docs_url="/docs" if settings.debug else None,
        redoc_url="/redoc" if settings.debug else None,
    )

    # Include API routers
    application.include_router(api_router, prefix=settings.api_v1_prefix)

    return application


app = create_application()


@app.exception_handler(ShearLabError)
async def shearlab_exception_handler(request: Request, exc: ShearLabError) -> JSONResponse:
    """Map numerical failures to 503 and invalid inputs to 422."""
    if isinstance(exc, NumericalError):
        logger.warning(f"numerical failure on {request.url.path}: {exc}")
        code = status.HTTP_503_SERVICE_UNAVAILABLE
    else:
        code = status.HTTP_422_UNPROCESSABLE_ENTITY
    return JSONResponse(
        status_code=code,
        content={"detail": str(exc), "error": type(exc).__name__},
    )


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError) -> JSONResponse:
    """Reject parameters that fail model validation inside a handler."""
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": str(exc), "error": type(exc).__name__},
    )
