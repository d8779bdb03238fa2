"""
API routes for theorem scenarios and their DOCX reports.
"""
import io
import logging
from typing import Optional, Union

from fastapi import APIRouter, Body, HTTPException
from fastapi.responses import StreamingResponse

from src.schemas import ScreenerReportModel, TheoremReportModel, VerifyRequest, scenario_model
from src.services.report_builder import report_docx
from src.services.theorems import SCENARIOS, run_scenario
from src.utils.filename import build_report_filename
from src.utils.validation import build_grid, function_from_source, require_exact_admissible

logger = logging.getLogger(__name__)

router = APIRouter()

DOCX_MEDIA_TYPE = "application/vnd.openxmlformats-officedocument.wordprocessingml.document"


def _execute(scenario: str, request: VerifyRequest) -> Union[TheoremReportModel, ScreenerReportModel]:
    if scenario not in SCENARIOS:
        raise HTTPException(status_code=404, detail=f"Unknown scenario {scenario!r}. Known: {', '.join(SCENARIOS)}")
    spec = None
    n = 1
    if request.grid is not None:
        n = request.grid.n
        spec = build_grid(n, request.grid.step, request.grid.count)
    fn = function_from_source(request.function, n) if request.function is not None else None
    f = function_from_source(request.f, n) if request.f is not None else None
    g = function_from_source(request.g, n) if request.g is not None else None
    if request.exact:
        for source in (fn, f, g):
            if source is not None:
                require_exact_admissible(source)
    logger.info(f"Running scenario {scenario}")
    report = run_scenario(
        scenario,
        fn=fn,
        f=f,
        g=g,
        spec=spec,
        levels=request.levels,
        exact=request.exact,
        tau=request.tau,
        lift_extent=request.lift_extent,
    )
    return scenario_model(report)


@router.post(
    "/verify/{scenario}",
    summary="Run a theorem scenario",
    description="Scenarios: example1, fixed-point, linear-dual, lemmas, screen.",
    response_model=Union[TheoremReportModel, ScreenerReportModel],
    tags=["Theorems"],
)
def verify(scenario: str, request: Optional[VerifyRequest] = Body(None)) -> Union[TheoremReportModel, ScreenerReportModel]:
    try:
        return _execute(scenario, request or VerifyRequest())
    except HTTPException:
        raise
    except ValueError as e:
        logger.warning(f"Validation error: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error running scenario {scenario}: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail="Internal server error. Please check the logs for details.")


@router.post(
    "/verify/{scenario}/report",
    summary="Run a theorem scenario and download the report",
    description="Same inputs as /verify/{scenario}; the report is returned as a DOCX attachment.",
    response_description="DOCX file with the scenario report",
    tags=["Theorems"],
)
def verify_report(scenario: str, request: Optional[VerifyRequest] = Body(None)) -> StreamingResponse:
    try:
        model = _execute(scenario, request or VerifyRequest())
        docx_bytes = report_docx(model)
        response = StreamingResponse(io.BytesIO(docx_bytes), media_type=DOCX_MEDIA_TYPE)
        response.headers["Content-Disposition"] = f'attachment; filename="{build_report_filename(scenario)}"'
        response.headers["X-Verdict"] = model.conclusion if isinstance(model, ScreenerReportModel) else model.verdict
        return response
    except HTTPException:
        raise
    except ValueError as e:
        logger.warning(f"Validation error: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error building report for {scenario}: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail="Internal server error. Please check the logs for details.")
