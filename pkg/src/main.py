"""
FastAPI application entry point.
"""
from fastapi import FastAPI

from src.routers import checks, theorems, transforms

app = FastAPI(
    title="addilope",
    description="Super-additive and sub-additive transforms of aggregation functions on grids, property checkers with witnesses, and theorem scenarios.",
    version="1.0.0",
)

app.include_router(transforms.router)
app.include_router(checks.router)
app.include_router(theorems.router)
