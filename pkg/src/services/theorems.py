"""
Scenario harness: testable consequences of the fixed-point and linear-dual
results, the (f, g) feasibility screener, the worked piecewise-linear
example and the implication suites relating convexity notions.

Every scenario returns a report with its hypothesis CheckReports, the
consequence checks it scored, and a verdict:

    consistent          hypotheses hold on the grid and every consequence holds
    inconsistent        hypotheses hold and some consequence is violated
    hypotheses-not-met  the result does not apply on this grid
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src import config
from src.services import props
from src.services.catalog import AGGREGATION_SAMPLES, EXAMPLE1_A, EXAMPLE1_F, EXAMPLE1_G, catalog_get
from src.services.funcspec import FuncSpec, LiftedSpec, Number, describe, evaluate, is_rational_spec
from src.services.grid import (
    GridFn,
    GridSpec,
    MultiIndex,
    make_grid_spec,
    max_abs_diff,
    refine,
    sample,
)
from src.services.props import CheckReport
from src.services.transforms import axis_slope_estimate, subadditive_closure, superadditive_closure
from src.utils.errors import AddilopeError

logger = logging.getLogger(__name__)

SCENARIOS = ("example1", "fixed-point", "linear-dual", "lemmas", "screen")

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
NOT_MET = "hypotheses-not-met"

OBSTRUCTION = "obstruction-found"
NO_OBSTRUCTION = "no-theorem-obstruction"

SUB_TRANSFORM_READING = (
    "dual consequence scored under strict directional concavity of the "
    "sub-additive transform (not of the super-additive one)"
)


@dataclass
class ConsequenceCheck:
    name: str
    holds: bool
    deviation: Optional[Number] = None
    bound: Optional[Number] = None
    point: Optional[Tuple[Number, ...]] = None
    detail: str = ""


@dataclass
class TheoremReport:
    theorem: str
    verdict: str
    hypotheses: Dict[str, CheckReport] = field(default_factory=dict)
    consequences: List[ConsequenceCheck] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    subject: str = ""
    # grids behind the report (not serialized), keyed by CSV column name
    grids: Dict[str, GridFn] = field(default_factory=dict)


@dataclass
class ScreenerReport:
    conclusion: str
    branch: Optional[str]
    hypotheses: Dict[str, CheckReport] = field(default_factory=dict)
    branches: Dict[str, Dict[str, bool]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    subject: str = ""

    @property
    def verdict(self) -> str:
        return self.conclusion


def _verdict(hypotheses_hold: bool, consequences: Sequence[ConsequenceCheck]) -> str:
    if not hypotheses_hold:
        return NOT_MET
    return CONSISTENT if all(c.holds for c in consequences) else INCONSISTENT


def _first_difference(a: GridFn, b: GridFn, tolerance: Number) -> Optional[MultiIndex]:
    for index in a.spec.indices():
        left, right = a.at(index), b.at(index)
        if left.is_infinite or right.is_infinite:
            if left.is_infinite != right.is_infinite:
                return index
            continue
        if abs(left.value - right.value) > tolerance:
            return index
    return None


def _equality(name: str, left: GridFn, right: GridFn, tolerance: Number) -> ConsequenceCheck:
    deviation = max_abs_diff(left, right)
    first = _first_difference(left, right, tolerance)
    point = left.spec.point_of(first, left.exact) if first is not None else None
    return ConsequenceCheck(
        name=name,
        holds=first is None,
        deviation=deviation.as_float() if deviation.is_infinite else deviation.value,
        bound=tolerance,
        point=point,
        detail="" if first is None else f"first difference at index {first}",
    )


def _pointwise_chain(name: str, chain: Sequence[GridFn], tolerance: Number) -> ConsequenceCheck:
    for lower, upper in zip(chain, chain[1:]):
        report = props.check_pointwise_le(lower, upper, tolerance)
        if not report.holds:
            index = report.witness.points[0]
            return ConsequenceCheck(
                name=name,
                holds=False,
                deviation=report.witness.slack,
                bound=tolerance,
                point=lower.spec.point_of(index, lower.exact),
                detail=report.witness.relation,
            )
    return ConsequenceCheck(name=name, holds=True, bound=tolerance)


# ---------------------------------------------------------------------------
# Fixed points
# ---------------------------------------------------------------------------

def verify_fixed_point(
    fn: FuncSpec, spec: GridSpec, exact: bool = False, tau: Optional[Number] = None
) -> TheoremReport:
    """
    A strictly directionally convex super-additive transform coincides with
    the function itself; dually a strictly directionally concave sub-additive
    transform does.

    Each direction is scored only when its strict hypothesis holds on the
    grid.
    """
    a = sample(fn, spec, exact=exact)
    upper = superadditive_closure(a)
    lower = subadditive_closure(a)
    tolerance = props.resolve_tolerance(a, tau)

    hypotheses: Dict[str, CheckReport] = {}
    notes = [SUB_TRANSFORM_READING]
    consequences = []
    scored = False
    if upper.infinite.any():
        notes.append("super transform is infinite on part of the grid; convex direction not evaluated")
    else:
        convex = props.check_directionally_convex(upper, True, tau)
        hypotheses["super transform strictly directionally convex"] = convex
        if convex.holds:
            scored = True
            consequences.append(_equality("A = A^*", upper, a, tolerance))
    concave = props.check_directionally_concave(lower, True, tau)
    hypotheses["sub transform strictly directionally concave"] = concave
    if concave.holds:
        scored = True
        consequences.append(_equality("A = A_*", lower, a, tolerance))

    report = TheoremReport(
        theorem="fixed-point",
        verdict=_verdict(scored, consequences),
        hypotheses=hypotheses,
        consequences=consequences,
        values={"n": spec.n, "grid": spec.describe(), "tolerance": tolerance},
        notes=notes,
        subject=describe(fn),
    )
    logger.info(f"fixed-point on {report.subject}: {report.verdict}")
    return report


# ---------------------------------------------------------------------------
# Linear sub-additive transform
# ---------------------------------------------------------------------------

def _axis_ratio(fn: FuncSpec, n: int, axis: int, step: Number, exact: bool) -> Number:
    point = [0] * n
    point[axis] = step
    return evaluate(fn, point, exact=exact) / step


def verify_linear_dual(
    fn: FuncSpec,
    spec: GridSpec,
    levels: int = 3,
    exact: bool = False,
    tau: Optional[Number] = None,
) -> TheoremReport:
    """
    When the super-additive transform is strictly directionally convex, the
    sub-additive transform is the linear map x -> nabla . x.

    Args:
        fn: Aggregation function.
        spec: Base grid; `levels - 1` refinements follow.
        levels: Number of grids, at least 2 for the gap-ratio consequence.
        exact: Rational pipeline.
        tau: Absolute tolerance override.

    Returns:
        TheoremReport: Per-level gaps max(C - nabla . x), the constant K of
        the chain bound C <= nabla . x + K h, and the gap ratios.
    """
    if levels < 1:
        raise AddilopeError(f"levels must be at least 1, got {levels}")
    base = sample(fn, spec, exact=exact)
    upper = superadditive_closure(base)
    notes = [SUB_TRANSFORM_READING]
    if upper.infinite.any():
        hypothesis = None
        notes.append("super transform is infinite on part of the grid")
    else:
        hypothesis = props.check_directionally_convex(upper, True, tau)
    linear = props.check_linear(base)

    slopes = axis_slope_estimate(fn, spec, levels, exact=exact, declared_convex=True)
    nabla = slopes.extrapolated
    extent = spec.extent if exact else tuple(float(x) for x in spec.extent)

    specs = [spec]
    for _ in range(levels - 1):
        specs.append(refine(specs[-1]))

    gaps: List[Number] = []
    lows: List[Number] = []
    k_levels: List[Number] = []
    steps: List[Number] = []
    tolerance = None
    for level_spec in specs:
        a = base if level_spec is spec else sample(fn, level_spec, exact=exact)
        closure = subadditive_closure(a)
        if tolerance is None:
            tolerance = props.resolve_tolerance(a, tau)
        h = max(level_spec.steps) if exact else float(max(level_spec.steps))
        k_level = sum(
            (
                x * (_axis_ratio(fn, spec.n, axis, level_spec.steps[axis] if exact else float(level_spec.steps[axis]), exact) - nabla[axis])
                for axis, x in enumerate(extent)
            ),
            0 * h,
        ) / h
        gap = None
        low = None
        for index in level_spec.indices():
            point = level_spec.point_of(index, exact)
            linear_value = sum((c * x for c, x in zip(nabla, point)), 0 * h)
            value = closure.at(index)
            difference = float("inf") if value.is_infinite else value.value - linear_value
            gap = difference if gap is None or difference > gap else gap
            low = difference if low is None or difference < low else low
        gaps.append(gap)
        lows.append(low)
        k_levels.append(k_level)
        steps.append(h)
        logger.debug(f"linear-dual level {level_spec.describe()}: gap={gap} K_h={k_level}")

    constant = max(k_levels)
    consequences = [
        ConsequenceCheck(
            name="nabla . x <= A_*",
            holds=all(low >= -tolerance for low in lows),
            deviation=min(lows),
            bound=tolerance,
        ),
        ConsequenceCheck(
            name="A_* <= nabla . x + K h",
            holds=all(gap <= constant * h + tolerance for gap, h in zip(gaps, steps)),
            deviation=max(gap - constant * h for gap, h in zip(gaps, steps)),
            bound=tolerance,
        ),
    ]
    ratios = [
        (0 * cur if cur <= tolerance else cur / prev) if prev > tolerance else None
        for prev, cur in zip(gaps, gaps[1:])
    ]
    scored_ratios = [r for r in ratios if r is not None]
    if scored_ratios:
        low_side = config.GAP_RATIO_MIN - min(scored_ratios)
        high_side = max(scored_ratios) - config.GAP_RATIO_MAX
        consequences.append(
            ConsequenceCheck(
                name="gap shrinks by about half per level",
                holds=all(config.GAP_RATIO_MIN <= r <= config.GAP_RATIO_MAX for r in scored_ratios),
                deviation=min(scored_ratios) if low_side > high_side else max(scored_ratios),
                bound=config.GAP_RATIO_MIN if low_side > high_side else config.GAP_RATIO_MAX,
            )
        )

    hypotheses: Dict[str, CheckReport] = {"input is linear": linear}
    if hypothesis is not None:
        hypotheses["super transform strictly directionally convex"] = hypothesis
    holds = hypothesis is not None and hypothesis.holds and not linear.holds
    if linear.holds:
        notes.append("linear input: the transforms coincide with the input, strict hypothesis cannot hold")
    if any(slopes.unbounded):
        notes.append("axis ratio trace grows without bound")

    report = TheoremReport(
        theorem="linear-dual",
        verdict=_verdict(holds, consequences),
        hypotheses=hypotheses,
        consequences=consequences,
        values={
            "nabla": list(nabla),
            "K": constant,
            "gaps": gaps,
            "gap_ratios": ratios,
            "steps": steps,
            "ratio_non_increasing": slopes.non_increasing,
        },
        notes=notes,
        subject=describe(fn),
    )
    logger.info(f"linear-dual on {report.subject}: {report.verdict}")
    return report


# ---------------------------------------------------------------------------
# Screener
# ---------------------------------------------------------------------------

def screen_grids(f: GridFn, g: GridFn, tau: Optional[Number] = None) -> ScreenerReport:
    """
    Check whether some aggregation function with sub-additive transform f
    and super-additive transform g is ruled out.

    Branch concave-f: f strictly directionally concave, g super-additive and
    not linear. Branch convex-g: f sub-additive and not linear, g strictly
    directionally convex. Both need f(0) = g(0) = 0 and f <= g.
    """
    hypotheses: Dict[str, CheckReport] = {
        "f(0) = 0": props.check_origin_zero(f),
        "g(0) = 0": props.check_origin_zero(g),
        "f <= g": props.check_pointwise_le(f, g, tau),
    }
    common = all(report.holds for report in hypotheses.values())
    notes: List[str] = []
    branches: Dict[str, Dict[str, bool]] = {}

    if f.infinite.any() or g.infinite.any():
        notes.append("infinite values on the grid: branch hypotheses not evaluated")
        return ScreenerReport(NO_OBSTRUCTION, None, hypotheses, branches, notes)

    hypotheses["f strictly directionally concave"] = props.check_directionally_concave(f, True, tau)
    hypotheses["g super-additive"] = props.check_superadditive(g, False, tau)
    hypotheses["g linear"] = props.check_linear(g)
    hypotheses["f sub-additive"] = props.check_subadditive(f, False, tau)
    hypotheses["f linear"] = props.check_linear(f)
    hypotheses["g strictly directionally convex"] = props.check_directionally_convex(g, True, tau)

    branches["concave-f"] = {
        "common": common,
        "f strictly directionally concave": hypotheses["f strictly directionally concave"].holds,
        "g super-additive": hypotheses["g super-additive"].holds,
        "g not linear": not hypotheses["g linear"].holds,
    }
    branches["convex-g"] = {
        "common": common,
        "f sub-additive": hypotheses["f sub-additive"].holds,
        "f not linear": not hypotheses["f linear"].holds,
        "g strictly directionally convex": hypotheses["g strictly directionally convex"].holds,
    }
    branch = next((name for name, conditions in branches.items() if all(conditions.values())), None)
    if branch is None:
        notes.append("no obstruction does not imply that a realizing aggregation function exists")
    conclusion = OBSTRUCTION if branch else NO_OBSTRUCTION
    logger.info(f"screen: {conclusion} (branch {branch})")
    return ScreenerReport(conclusion, branch, hypotheses, branches, notes)


def screen_pair(
    f: FuncSpec, g: FuncSpec, spec: GridSpec, exact: bool = False, tau: Optional[Number] = None
) -> ScreenerReport:
    report = screen_grids(sample(f, spec, exact=exact), sample(g, spec, exact=exact), tau)
    report.subject = f"f = {describe(f)}, g = {describe(g)}"
    return report


# ---------------------------------------------------------------------------
# Worked piecewise-linear example
# ---------------------------------------------------------------------------

def reproduce_example1(
    h: Any = 1, M: Optional[int] = None, lift_extent: int = 24, exact: bool = True
) -> TheoremReport:
    """
    Closures of the three-piece function A: the super-additive closure equals
    g and the sub-additive closure equals f at every grid point, and the
    same holds for the lift A(x1) + x2 on a square grid of side lift_extent.

    Args:
        h: Grid step; 1/h must be an integer.
        M: Number of steps; defaults to 40/h, and M*h must reach 40.
        lift_extent: Side of the two-dimensional box (multiple of h).
        exact: Rational pipeline (floating runs compare within tolerance).
    """
    step = Fraction(str(h)) if not isinstance(h, Fraction) else h
    if step <= 0 or (1 / step).denominator != 1:
        raise AddilopeError(f"Step must divide 1 exactly, got {h}")
    count = int(M) if M is not None else int(40 / step)
    if count * step < 40:
        raise AddilopeError(f"Grid must reach x = 40, got M*h = {count * step}")
    lift_count = Fraction(lift_extent) / step
    if lift_count.denominator != 1 or lift_count < 1:
        raise AddilopeError(f"lift_extent must be a positive multiple of the step, got {lift_extent}")

    spec = make_grid_spec(step, count, 1)
    a = sample(EXAMPLE1_A, spec, exact=exact)
    f = sample(EXAMPLE1_F, spec, exact=exact)
    g = sample(EXAMPLE1_G, spec, exact=exact)
    upper = superadditive_closure(a)
    lower = subadditive_closure(a)
    tolerance = props.resolve_tolerance(a, None)

    consequences = [
        _equality("A^* = g", upper, g, tolerance),
        _equality("A_* = f", lower, f, tolerance),
        _pointwise_chain("f <= A_* <= A <= A^* <= g", [f, lower, a, upper, g], tolerance),
    ]

    lift_spec = make_grid_spec(step, int(lift_count), 2)
    lifted_a = sample(LiftedSpec(EXAMPLE1_A, 2), lift_spec, exact=exact)
    lifted_upper = superadditive_closure(lifted_a)
    lifted_lower = subadditive_closure(lifted_a)
    consequences.append(_equality("lifted A^* = lifted g", lifted_upper, sample(LiftedSpec(EXAMPLE1_G, 2), lift_spec, exact=exact), tolerance))
    consequences.append(_equality("lifted A_* = lifted f", lifted_lower, sample(LiftedSpec(EXAMPLE1_F, 2), lift_spec, exact=exact), tolerance))

    values: Dict[str, Any] = {"grid": spec.describe(), "lift_grid": lift_spec.describe()}
    for label, grid_fn, x in (("A^*(8)", upper, 8), ("A^*(30)", upper, 30), ("A_*(14)", lower, 14), ("A_*(5)", lower, 5)):
        index = Fraction(x) / step
        if index.denominator == 1 and index <= count:
            values[label] = grid_fn.at((int(index),)).value
    corner = (int(8 / step), int(4 / step))
    if all(i <= lift_count for i in corner):
        values["lifted A^*(8, 4)"] = lifted_upper.at(corner).value

    report = TheoremReport(
        theorem="example1",
        verdict=_verdict(True, consequences),
        consequences=consequences,
        values=values,
        subject=describe(EXAMPLE1_A),
        grids={"A": a, "Asub": lower, "Astar": upper, "f": f, "g": g},
    )
    if report.verdict == INCONSISTENT:
        failed = [c.name for c in consequences if not c.holds]
        logger.warning(f"example1 equalities violated: {failed}")
    logger.info(f"example1 on {spec.describe()}: {report.verdict}")
    return report


# ---------------------------------------------------------------------------
# Implication suites
# ---------------------------------------------------------------------------

def lemma_suite(
    names: Optional[Sequence[Tuple[str, Optional[Sequence[Any]]]]] = None,
    step: Any = "0.5",
    count: int = 6,
    exact: bool = False,
) -> TheoremReport:
    """
    Implications between convexity notions on catalog functions.

    Per function: one-dimensional directional convexity agrees with segment
    convexity; directional convexity (strict) with a(0) = 0 implies
    super-additivity (strict); directional convexity implies monotone ratios
    a(t d)/t along every axis ray and the diagonal. Two separations close the
    suite: product_minus_one is directionally convex but not convex along
    the anti-diagonal, and skew_quadratic is convex but not super-additive.
    """
    samples = list(names) if names is not None else list(AGGREGATION_SAMPLES)
    hypotheses: Dict[str, CheckReport] = {}
    consequences: List[ConsequenceCheck] = []
    for name, parameters in samples:
        entry = catalog_get(name, parameters)
        label = name if not parameters else f"{name}{tuple(parameters)}"
        spec = make_grid_spec(step, count, entry.arity)
        a = sample(entry.body, spec, exact=exact and is_rational_spec(entry.body))
        if a.infinite.any():
            continue
        origin = props.check_origin_zero(a).holds
        convex = props.check_directionally_convex(a)
        strict_convex = props.check_directionally_convex(a, strict=True)
        hypotheses[f"{label}: directionally convex"] = convex

        if spec.n == 1:
            segment = props.check_segment_convex(a)
            consequences.append(
                ConsequenceCheck(
                    name=f"{label}: directional convexity = convexity",
                    holds=segment.verdict == convex.verdict,
                    detail=f"{convex.verdict} / {segment.verdict}",
                )
            )
        if convex.holds and origin:
            superadditive = props.check_superadditive(a)
            consequences.append(
                ConsequenceCheck(
                    name=f"{label}: directionally convex => super-additive",
                    holds=superadditive.holds,
                    detail=superadditive.witness.relation if superadditive.witness else "",
                )
            )
            rays = [f"axis:{i + 1}" for i in range(spec.n)] + (["diagonal"] if spec.n > 1 else [])
            for ray in rays:
                ratio = props.check_ratio_monotone(a, ray)
                consequences.append(
                    ConsequenceCheck(
                        name=f"{label}: directionally convex => ratio monotone on {ray}",
                        holds=ratio.holds,
                        detail=ratio.witness.relation if ratio.witness else "",
                    )
                )
        if strict_convex.holds and origin:
            strict_super = props.check_superadditive(a, strict=True)
            consequences.append(
                ConsequenceCheck(
                    name=f"{label}: strictly directionally convex => strictly super-additive",
                    holds=strict_super.holds,
                    detail=strict_super.witness.relation if strict_super.witness else "",
                )
            )

    separation = make_grid_spec(1, 4, 2)
    product = sample(catalog_get("product_minus_one").body, separation, exact=True)
    product_convex = props.check_directionally_convex(product)
    anti_diagonal = props.check_segment_midpoint_convex(product, (0, 2), (2, 0))
    hypotheses["product_minus_one: directionally convex"] = product_convex
    hypotheses["product_minus_one: midpoint convex on (0,2)-(2,0)"] = anti_diagonal
    consequences.append(
        ConsequenceCheck(
            name="directional convexity does not imply convexity",
            holds=product_convex.holds and not anti_diagonal.holds,
            deviation=anti_diagonal.witness.slack if anti_diagonal.witness else None,
            detail=anti_diagonal.witness.relation if anti_diagonal.witness else "",
        )
    )

    skew = sample(catalog_get("skew_quadratic").body, separation, exact=True)
    skew_convex = props.check_segment_convex(skew)
    skew_super = props.check_superadditive(skew)
    hypotheses["skew_quadratic: convex"] = skew_convex
    hypotheses["skew_quadratic: super-additive"] = skew_super
    consequences.append(
        ConsequenceCheck(
            name="convexity does not imply super-additivity",
            holds=skew_convex.holds and not skew_super.holds,
            deviation=skew_super.witness.slack if skew_super.witness else None,
            detail=skew_super.witness.relation if skew_super.witness else "",
        )
    )

    report = TheoremReport(
        theorem="lemmas",
        verdict=_verdict(True, consequences),
        hypotheses=hypotheses,
        consequences=consequences,
        values={"functions": [name for name, _ in samples], "step": str(step), "count": count},
        subject="catalog",
    )
    logger.info(f"lemma suite over {len(samples)} functions: {report.verdict}")
    return report


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def run_scenario(
    scenario: str,
    fn: Optional[FuncSpec] = None,
    f: Optional[FuncSpec] = None,
    g: Optional[FuncSpec] = None,
    spec: Optional[GridSpec] = None,
    levels: int = 3,
    exact: bool = False,
    tau: Optional[Number] = None,
    lift_extent: int = 24,
):
    """
    Run one scenario by id (example1 | fixed-point | linear-dual | lemmas | screen).

    Raises:
        AddilopeError: Unknown scenario or missing inputs.
    """
    if scenario not in SCENARIOS:
        raise AddilopeError(f"Unknown scenario {scenario!r}, expected one of {', '.join(SCENARIOS)}")
    if scenario == "example1":
        step = spec.steps[0] if spec is not None else 1
        count = spec.counts[0] if spec is not None else None
        return reproduce_example1(step, count, lift_extent=lift_extent, exact=exact)
    if scenario == "lemmas":
        if spec is None:
            return lemma_suite(exact=exact)
        return lemma_suite(step=spec.steps[0], count=spec.counts[0], exact=exact)
    if spec is None:
        raise AddilopeError(f"Scenario {scenario!r} needs a grid")
    if scenario == "screen":
        if f is None or g is None:
            raise AddilopeError("Scenario 'screen' needs both f and g")
        return screen_pair(f, g, spec, exact=exact, tau=tau)
    if fn is None:
        raise AddilopeError(f"Scenario {scenario!r} needs a function")
    if scenario == "fixed-point":
        return verify_fixed_point(fn, spec, exact=exact, tau=tau)
    return verify_linear_dual(fn, spec, levels=levels, exact=exact, tau=tau)


def summary_rows(reports: Sequence[Any]) -> List[Dict[str, Any]]:
    """One row per report for the scenario summary CSV."""
    rows = []
    for report in reports:
        if isinstance(report, ScreenerReport):
            rows.append({
                "scenario": "screen",
                "subject": report.subject,
                "verdict": report.conclusion,
                "hypotheses_held": sum(1 for r in report.hypotheses.values() if r.holds),
                "hypotheses_total": len(report.hypotheses),
                "consequences_held": "",
                "consequences_total": "",
                "branch": report.branch or "",
            })
            continue
        rows.append({
            "scenario": report.theorem,
            "subject": report.subject,
            "verdict": report.verdict,
            "hypotheses_held": sum(1 for r in report.hypotheses.values() if r.holds),
            "hypotheses_total": len(report.hypotheses),
            "consequences_held": sum(1 for c in report.consequences if c.holds),
            "consequences_total": len(report.consequences),
            "branch": "",
        })
    return rows
