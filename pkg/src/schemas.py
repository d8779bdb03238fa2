"""
Pydantic models for every JSON document (responses and request bodies),
and converters from the service dataclasses.
"""
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field

from src.services.grid import GridSpec
from src.services.props import CheckReport, Witness
from src.services.theorems import ConsequenceCheck, ScreenerReport, TheoremReport
from src.services.transforms import ClosureResult, SlopeEstimate
from src.utils.serialization import json_number

Num = Union[float, int, str]


# ---------------------------------------------------------------------------
# Responses
# ---------------------------------------------------------------------------

class HealthResponse(BaseModel):
    status: str
    service: str
    max_grid_points: int
    divergence_growth: float
    tolerance_factor: float


class WitnessModel(BaseModel):
    kind: str
    indices: List[List[int]]
    points: List[List[Num]]
    values: List[Num]
    slack: Num
    relation: str


class CheckReportModel(BaseModel):
    property: str
    strict: bool
    verdict: Literal["holds", "fails"]
    tolerance: Num
    margin: Optional[Num] = None
    evaluated: int = 0
    witness: Optional[WitnessModel] = None
    fitted: Optional[List[Num]] = None
    notes: List[str] = Field(default_factory=list)


class GridLevelModel(BaseModel):
    steps: List[Num]
    counts: List[int]
    points: int
    corner_input: Num
    corner_output: Num


class SlopeEstimateModel(BaseModel):
    nabla: List[Num]
    extrapolated: List[Num]
    unbounded: List[bool]
    non_increasing: List[bool]
    traces: List[List[List[Num]]]


class ClosureResultModel(BaseModel):
    kind: Literal["super", "sub"]
    label: str
    exact: bool
    levels: List[GridLevelModel]
    deltas: List[Num]
    corner_trace: List[Num]
    growth: List[Optional[Num]]
    divergence_flag: bool
    refinement_monotone: bool
    slopes: Optional[SlopeEstimateModel] = None


class ConsequenceModel(BaseModel):
    name: str
    holds: bool
    deviation: Optional[Num] = None
    bound: Optional[Num] = None
    point: Optional[List[Num]] = None
    detail: str = ""


class TheoremReportModel(BaseModel):
    theorem: str
    subject: str
    verdict: Literal["consistent", "inconsistent", "hypotheses-not-met"]
    hypotheses: Dict[str, CheckReportModel]
    consequences: List[ConsequenceModel]
    values: Dict[str, Any]
    notes: List[str]


class ScreenerReportModel(BaseModel):
    subject: str
    conclusion: Literal["obstruction-found", "no-theorem-obstruction"]
    branch: Optional[str] = None
    hypotheses: Dict[str, CheckReportModel]
    branches: Dict[str, Dict[str, bool]]
    notes: List[str]


# ---------------------------------------------------------------------------
# Requests
# ---------------------------------------------------------------------------

class FunctionSource(BaseModel):
    """Exactly one of expression, catalog or pl."""
    expression: Optional[str] = Field(None, description="Expression in x1..xn, e.g. 'x1^2 + x2'")
    catalog: Optional[str] = Field(None, description="Catalog name, e.g. 'power(2)'")
    params: Dict[str, str] = Field(default_factory=dict, description="Catalog parameters by name")
    pl: Optional[Dict[str, Any]] = Field(None, description="Piecewise-linear spec document")


class GridRequest(BaseModel):
    n: int = Field(1, ge=1)
    step: Union[str, float, List[Union[str, float]]] = "1"
    count: Union[int, List[int]] = 8


class TransformRequest(BaseModel):
    function: FunctionSource
    grid: GridRequest
    kind: Literal["super", "sub"] = "super"
    levels: int = Field(1, ge=1)
    exact: bool = False


class CheckRequest(BaseModel):
    function: FunctionSource
    grid: GridRequest
    property: str
    strict: bool = False
    tau: Optional[float] = Field(None, ge=0)
    ray: str = "axis:1"
    exact: bool = False


class VerifyRequest(BaseModel):
    function: Optional[FunctionSource] = None
    f: Optional[FunctionSource] = None
    g: Optional[FunctionSource] = None
    grid: Optional[GridRequest] = None
    levels: int = Field(3, ge=1)
    exact: bool = False
    tau: Optional[float] = Field(None, ge=0)
    lift_extent: int = Field(24, ge=1)


# ---------------------------------------------------------------------------
# Converters
# ---------------------------------------------------------------------------

def _numbers(values) -> List[Num]:
    return [json_number(v) for v in values]


def witness_model(witness: Witness) -> WitnessModel:
    return WitnessModel(
        kind=witness.kind,
        indices=[list(p) for p in witness.points],
        points=[_numbers(c) for c in witness.coordinates],
        values=_numbers(witness.values),
        slack=json_number(witness.slack),
        relation=witness.relation,
    )


def check_report_model(report: CheckReport) -> CheckReportModel:
    return CheckReportModel(
        property=report.property,
        strict=report.strict,
        verdict=report.verdict,
        tolerance=json_number(report.tolerance),
        margin=json_number(report.margin),
        evaluated=report.evaluated,
        witness=witness_model(report.witness) if report.witness else None,
        fitted=_numbers(report.fitted) if report.fitted is not None else None,
        notes=list(report.notes),
    )


def slope_model(slopes: SlopeEstimate) -> SlopeEstimateModel:
    return SlopeEstimateModel(
        nabla=_numbers(slopes.nabla),
        extrapolated=_numbers(slopes.extrapolated),
        unbounded=list(slopes.unbounded),
        non_increasing=list(slopes.non_increasing),
        traces=[[_numbers(pair) for pair in trace] for trace in slopes.traces],
    )


def _grid_level(spec: GridSpec, corner_input, corner_output) -> GridLevelModel:
    return GridLevelModel(
        steps=_numbers(spec.steps),
        counts=list(spec.counts),
        points=spec.point_count(),
        corner_input=json_number(corner_input),
        corner_output=json_number(corner_output),
    )


def closure_result_model(result: ClosureResult) -> ClosureResultModel:
    levels = [
        _grid_level(level.spec, level.input.at(level.spec.corner), level.output.at(level.spec.corner))
        for level in result.levels
    ]
    return ClosureResultModel(
        kind=result.kind,
        label=result.label,
        exact=result.exact,
        levels=levels,
        deltas=_numbers(result.deltas),
        corner_trace=_numbers(result.corner_trace),
        growth=_numbers(result.growth),
        divergence_flag=result.divergence_flag,
        refinement_monotone=result.refinement_monotone,
        slopes=slope_model(result.slopes) if result.slopes else None,
    )


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, str) or value is None:
        return value
    return json_number(value)


def _consequence_model(check: ConsequenceCheck) -> ConsequenceModel:
    return ConsequenceModel(
        name=check.name,
        holds=check.holds,
        deviation=json_number(check.deviation),
        bound=json_number(check.bound),
        point=_numbers(check.point) if check.point is not None else None,
        detail=check.detail,
    )


def theorem_report_model(report: TheoremReport) -> TheoremReportModel:
    return TheoremReportModel(
        theorem=report.theorem,
        subject=report.subject,
        verdict=report.verdict,
        hypotheses={name: check_report_model(r) for name, r in report.hypotheses.items()},
        consequences=[_consequence_model(c) for c in report.consequences],
        values=_plain(report.values),
        notes=list(report.notes),
    )


def screener_report_model(report: ScreenerReport) -> ScreenerReportModel:
    return ScreenerReportModel(
        subject=report.subject,
        conclusion=report.conclusion,
        branch=report.branch,
        hypotheses={name: check_report_model(r) for name, r in report.hypotheses.items()},
        branches=report.branches,
        notes=list(report.notes),
    )


def scenario_model(report: Union[TheoremReport, ScreenerReport]) -> Union[TheoremReportModel, ScreenerReportModel]:
    if isinstance(report, ScreenerReport):
        return screener_report_model(report)
    return theorem_report_model(report)
