from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
import logging

from shellscatter.api import routes_scattering, routes_spectral, routes_threshold
from shellscatter.core.config import settings
from shellscatter.core.errors import ConfigError, ShellScatterError


# Configure application logging
logging.basicConfig(
    level=settings.log_level.upper(),
    format='%(levelname)s:     %(name)s - %(message)s'
)
logger = logging.getLogger(__name__)


app = FastAPI(title="shellscatter")

app.include_router(routes_scattering.router)
app.include_router(routes_threshold.router)
app.include_router(routes_spectral.router)


@app.exception_handler(ShellScatterError)
async def shellscatter_error_handler(request: Request, exc: ShellScatterError):
    """Invalid configs are 422; numerical conditions are 409."""
    status_code = 422 if isinstance(exc, ConfigError) else 409
    logger.info("%s on %s: %s", type(exc).__name__, request.url.path, exc)
    return JSONResponse(
        status_code=status_code,
        content={"detail": str(exc), "error": type(exc).__name__},
    )


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy"}
