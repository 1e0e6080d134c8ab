"""
QHam Implosion Engine API
FastAPI 앱: 루트 시스템 조합론, implosion 층 분해, 수치 검증 라우터를 묶습니다.
"""
import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from contextlib import asynccontextmanager

# Import settings
from config.settings import get_settings, load_tolerance_config
from config.logging import setup_logging

# Import routers
from app.routers import groups, checks, verify, moduli

# Import middleware
from app.middleware import RequestLoggingMiddleware

# Engine metadata for the root endpoint
from app.engine.rootsys import RANK_BOUNDS
from app.engine.spaces import MODEL_KINDS

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Lifespan context manager for FastAPI
    Handles startup and shutdown events
    """
    # Startup: Setup logging
    settings = get_settings()
    setup_logging(
        log_dir=settings.LOG_DIR,
        log_level=settings.LOG_LEVEL,
        app_name="qham",
        log_to_file=settings.LOG_TO_FILE,
    )

    tolerances = load_tolerance_config()["tolerances"]
    logger.info(f"🚀 Starting {settings.APP_NAME} ({len(tolerances)} identity tolerances loaded)")
    if settings.QHAM_TOL is not None:
        logger.info(f"QHAM_TOL override active: {settings.QHAM_TOL:.1e}")

    yield
    logger.info(f"👋 Shutting down {settings.APP_NAME}...")


app = FastAPI(
    title="QHam Implosion Engine API",
    description="Alcove combinatorics, implosion strata and quasi-Hamiltonian numeric checks",
    version="0.1.0",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=False,
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)

# Add request logging middleware (timing + status)
app.add_middleware(RequestLoggingMiddleware)


# Root endpoints
@app.get("/")
async def root():
    settings = get_settings()
    return {
        "service": settings.APP_NAME,
        "version": settings.APP_VERSION,
        "status": "running",
        "types": {label: {"minRank": lo, "maxRank": hi} for label, (lo, hi) in RANK_BOUNDS.items()},
        "models": list(MODEL_KINDS),
        "defaults": {"samples": settings.QHAM_SAMPLES, "seed": settings.QHAM_SEED, "tol": settings.QHAM_TOL},
    }


@app.get("/health")
async def health():
    return {"status": "healthy"}


# Include routers
app.include_router(groups.router)
app.include_router(checks.router)
app.include_router(verify.router)
app.include_router(moduli.router)


if __name__ == "__main__":
    import uvicorn

    settings = get_settings()
    uvicorn.run(app, host=settings.HOST, port=settings.PORT)
