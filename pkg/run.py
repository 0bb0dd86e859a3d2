"""Development server runner."""

import uvicorn

from shearlab.core.config import get_settings

if __name__ == "__main__":
    settings = get_settings()
    uvicorn.run(
        "shearlab.main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.debug,
        log_level=settings.log_level.lower(),
    )
