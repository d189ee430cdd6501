from contextlib import asynccontextmanager

from fastapi import FastAPI

from pmnn.bench.router import router as bench_router
from pmnn.exception_handlers import register_exception_handlers
from pmnn.logging_config import setup_logging


@asynccontextmanager
async def lifespan(app: FastAPI):
    setup_logging()
    yield


app = FastAPI(
    title="PMNN Bench",
    description="Neural and finite-difference solvers for time-fractional equations",
    version="0.1.0",
    lifespan=lifespan,
)

register_exception_handlers(app)

app.include_router(bench_router, prefix="/api/v1", tags=["bench"])


@app.get("/api/v1/health")
async def health():
    return {"status": "healthy"}
