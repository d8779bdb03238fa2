"""
API routes for grid property checks.
"""
import logging

from fastapi import APIRouter, HTTPException

from src.schemas import CheckReportModel, CheckRequest, check_report_model
from src.services.funcspec import describe
from src.services.grid import sample
from src.services.props import run_check
from src.utils.validation import build_grid, function_from_source, require_exact_admissible

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post(
    "/check",
    summary="Check a property",
    description="Run one property checker on a sampled function; a failing verdict carries a witness.",
    response_model=CheckReportModel,
    tags=["Checks"],
)
def check(request: CheckRequest) -> CheckReportModel:
    try:
        fn = function_from_source(request.function, request.grid.n)
        spec = build_grid(request.grid.n, request.grid.step, request.grid.count)
        if request.exact:
            require_exact_admissible(fn)
        grid_fn = sample(fn, spec, exact=request.exact)
        logger.info(f"POST /check {request.property} on {describe(fn)}")
        report = run_check(grid_fn, request.property, strict=request.strict, tau=request.tau, ray=request.ray)
        return check_report_model(report)
    except HTTPException:
        raise
    except ValueError as e:
        logger.warning(f"Validation error: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error running check: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail="Internal server error. Please check the logs for details.")
