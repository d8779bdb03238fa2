"""
API routes for super-additive and sub-additive transforms.
"""
import logging
from typing import Literal

from fastapi import APIRouter, File, HTTPException, Query, UploadFile

from src import config
from src.schemas import ClosureResultModel, HealthResponse, TransformRequest, closure_result_model
from src.services.funcspec import FuncSpec, describe
from src.services.transforms import transform_with_refinement
from src.utils.validation import (
    build_grid,
    function_from_source,
    load_pl_document,
    require_exact_admissible,
)

logger = logging.getLogger(__name__)

router = APIRouter()


def _run(fn: FuncSpec, n: int, step, count, levels: int, kind: str, exact: bool) -> ClosureResultModel:
    spec = build_grid(n, step, count)
    if exact:
        require_exact_admissible(fn)
    result = transform_with_refinement(fn, spec, levels, kind, exact=exact, label=describe(fn))
    return closure_result_model(result)


@router.post(
    "/transform",
    summary="Transform a function",
    description="Super-additive or sub-additive closure on a grid and its refinements.",
    response_model=ClosureResultModel,
    tags=["Transforms"],
)
def transform(request: TransformRequest) -> ClosureResultModel:
    try:
        fn = function_from_source(request.function, request.grid.n)
        logger.info(f"POST /transform {request.kind} of {describe(fn)}")
        return _run(fn, request.grid.n, request.grid.step, request.grid.count, request.levels, request.kind, request.exact)
    except HTTPException:
        raise
    except ValueError as e:
        logger.warning(f"Validation error: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing transform: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail="Internal server error. Please check the logs for details.")


@router.post(
    "/transform/pl",
    summary="Transform an uploaded piecewise-linear function",
    description="Upload a PL JSON document {knots, tail_slope} and receive the closure summary.",
    response_model=ClosureResultModel,
    tags=["Transforms"],
)
async def transform_pl(
    file: UploadFile = File(..., description="Piecewise-linear JSON spec", media_type="application/json"),
    kind: Literal["super", "sub"] = Query("super"),
    step: str = Query("1", description="Grid step"),
    count: int = Query(40, ge=1, description="Number of grid steps"),
    levels: int = Query(1, ge=1),
    exact: bool = Query(True, description="Rational arithmetic"),
) -> ClosureResultModel:
    try:
        if not file.filename or not file.filename.lower().endswith(".json"):
            raise HTTPException(status_code=400, detail="Only JSON files are supported. Please upload a .json file.")
        content = await file.read()
        fn = load_pl_document(content)
        logger.info(f"POST /transform/pl {kind} of {describe(fn)}")
        return _run(fn, 1, step, count, levels, kind, exact)
    except HTTPException:
        raise
    except ValueError as e:
        logger.warning(f"Validation error: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error processing file: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail="Internal server error. Please check the logs for details.")


@router.get("/health", response_model=HealthResponse)
def health_check() -> HealthResponse:
    """
    Report the service health and configured limits.
    """
    return HealthResponse(
        status="healthy",
        service="addilope",
        max_grid_points=config.MAX_GRID_POINTS,
        divergence_growth=config.DIVERGENCE_GROWTH,
        tolerance_factor=config.TOLERANCE_FACTOR,
    )
