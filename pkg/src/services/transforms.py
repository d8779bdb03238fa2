"""
Super-additive and sub-additive closures of grid functions.

The closure of an aggregation function `a` on a grid is the optimum, over
every multiset of nonzero grid points summing exactly to m, of the sum of
a-values. It is computed by the binary-split recurrence

    B[m] = opt(a[m], opt_{0 < k < m} B[k] + B[m - k])

over indices in non-decreasing coordinate sum. Exact sums suffice for the
infimum over covers because inputs are required to be non-decreasing.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src import config
from src.services import props
from src.services.funcspec import FuncSpec, Number, evaluate
from src.services.grid import (
    ExtValue,
    GridFn,
    GridSpec,
    MultiIndex,
    ensure_size,
    max_abs_diff,
    refine,
    restrict,
    sample,
)
from src.utils.errors import AddilopeError, NotAggregationError

logger = logging.getLogger(__name__)

KINDS = ("super", "sub")

# Scaled-integer DP stays in int64 while every partial sum is below this bound
_INT64_SAFE = 2 ** 62


@dataclass
class ClosureLevel:
    spec: GridSpec
    input: GridFn
    output: GridFn


@dataclass
class SlopeEstimate:
    """Per-axis ratios A(h e_i)/h for a halving sequence of steps h."""
    nabla: List[ExtValue]
    traces: List[List[Tuple[Number, Number]]]
    unbounded: List[bool]
    non_increasing: List[bool]
    extrapolated: List[Number]
    declared_convex: bool = False


@dataclass
class ClosureResult:
    kind: str
    levels: List[ClosureLevel]
    deltas: List[ExtValue]
    corner_trace: List[ExtValue]
    growth: List[Optional[float]]
    divergence_flag: bool
    refinement_monotone: bool
    slopes: Optional[SlopeEstimate] = None
    exact: bool = False
    label: str = ""

    @property
    def final(self) -> GridFn:
        return self.levels[-1].output


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise AddilopeError(f"Unknown transform kind {kind!r}, expected one of {KINDS}")


def _require_aggregation(a: GridFn) -> None:
    report = props.check_aggregation(a)
    if report.verdict != "holds":
        logger.warning(f"Closure input rejected: {report.witness.relation if report.witness else 'not aggregation'}")
        raise NotAggregationError(report)


def wavefront_order(spec: GridSpec) -> List[MultiIndex]:
    """Multi-indices sorted by coordinate sum, lexicographic within one sum."""
    flat_sums = np.indices(spec.shape).reshape(spec.n, -1).sum(axis=0)
    order = np.argsort(flat_sums, kind="stable")
    return [tuple(int(i) for i in np.unravel_index(flat, spec.shape)) for flat in order]


def _working_values(a: GridFn) -> Tuple[np.ndarray, Optional[int]]:
    """
    Values the DP runs on: float64 for floating grids; for exact grids the
    values scaled by their common denominator (int64 when safe, Python ints
    otherwise). Returns (array, denominator or None).
    """
    if not a.exact:
        return a.values.astype(float), None
    finite = [Fraction(v) for v in a.values[~a.infinite].ravel()]
    denominator = 1
    for value in finite:
        denominator = math.lcm(denominator, value.denominator)
    scaled = np.empty(a.spec.shape, dtype=object)
    for index in np.ndindex(*a.spec.shape):
        scaled[index] = 0 if a.infinite[index] else int(Fraction(a.values[index]) * denominator)
    largest = max((abs(v) for v in scaled.ravel()), default=0)
    bound = 2 * (sum(a.spec.counts) + 1) * largest
    if bound < _INT64_SAFE:
        return scaled.astype(np.int64), denominator
    logger.debug("Scaled values exceed int64 range, running exact DP on Python integers")
    return scaled, denominator


def _from_working(a: GridFn, values: np.ndarray, infinite: np.ndarray, denominator: Optional[int]) -> GridFn:
    if denominator is None:
        return GridFn(spec=a.spec, values=values, infinite=infinite, exact=False)
    out = np.empty(a.spec.shape, dtype=object)
    for index in np.ndindex(*a.spec.shape):
        out[index] = Fraction(0) if infinite[index] else Fraction(int(values[index]), denominator)
    return GridFn(spec=a.spec, values=out, infinite=infinite, exact=True)


def _closure(a: GridFn, kind: str) -> GridFn:
    _check_kind(kind)
    _require_aggregation(a)
    ensure_size(a.spec)
    maximize = kind == "super"

    values, denominator = _working_values(a)
    infinite = a.infinite.copy()
    for index in wavefront_order(a.spec)[1:]:
        block = tuple(slice(0, i + 1) for i in index)
        # pairs (k, m - k) for every 0 <= k <= m; k = 0 and k = m give a[m]
        pair_values = values[block] + np.flip(values[block])
        pair_infinite = infinite[block] | np.flip(infinite[block])
        if maximize:
            if pair_infinite.any():
                infinite[index] = True
            else:
                values[index] = pair_values.max()
        else:
            finite = ~pair_infinite
            if finite.any():
                values[index] = pair_values[finite].min()
                infinite[index] = False
            else:
                infinite[index] = True
    return _from_working(a, values, infinite, denominator)


def superadditive_closure(a: GridFn) -> GridFn:
    """
    Least super-additive grid function dominating `a` (grid decompositions).

    Raises:
        NotAggregationError: Input is not zero at the origin and non-decreasing.
        GridSizeError: Grid larger than the configured cap.
    """
    result = _closure(a, "super")
    logger.debug(f"Super-additive closure computed on {a.spec.describe()}")
    return result


def subadditive_closure(a: GridFn) -> GridFn:
    """
    Greatest sub-additive grid minorant of `a` (grid decompositions).

    Raises:
        NotAggregationError: Input is not zero at the origin and non-decreasing.
        GridSizeError: Grid larger than the configured cap.
    """
    result = _closure(a, "sub")
    logger.debug(f"Sub-additive closure computed on {a.spec.describe()}")
    return result


def closure(a: GridFn, kind: str) -> GridFn:
    _check_kind(kind)
    return superadditive_closure(a) if kind == "super" else subadditive_closure(a)


# ---------------------------------------------------------------------------
# Exhaustive oracle
# ---------------------------------------------------------------------------

def enumerate_decompositions(
    target: Sequence[int], largest: Optional[MultiIndex] = None
) -> Iterator[Tuple[MultiIndex, ...]]:
    """
    Every multiset of nonzero multi-indices summing to `target`, parts listed
    in non-increasing lexicographic order (each multiset exactly once).
    """
    target = tuple(int(t) for t in target)
    if not any(target):
        yield ()
        return
    ranges = [range(t, -1, -1) for t in target]
    for part in itertools.product(*ranges):
        if not any(part):
            continue
        if largest is not None and part > largest:
            continue
        rest = tuple(t - p for t, p in zip(target, part))
        for tail in enumerate_decompositions(rest, part):
            yield (part,) + tail


def brute_force_closure(a: GridFn, kind: str) -> GridFn:
    """Closure by exhaustive enumeration of all multiset decompositions."""
    _check_kind(kind)
    numeric = a.numeric()
    zero = Fraction(0) if a.exact else 0.0
    values = np.empty(a.spec.shape, dtype=object if a.exact else float)
    infinite = np.zeros(a.spec.shape, dtype=bool)
    for index in a.spec.indices():
        best = None
        for parts in enumerate_decompositions(index):
            total = sum((numeric[p] for p in parts), zero)
            if best is None or (total > best if kind == "super" else total < best):
                best = total
        if best == math.inf:
            infinite[index] = True
            values[index] = zero
        else:
            values[index] = best
    return GridFn(spec=a.spec, values=values, infinite=infinite, exact=a.exact)


# ---------------------------------------------------------------------------
# Refinement driver and slope estimation
# ---------------------------------------------------------------------------

def _growth(previous: ExtValue, current: ExtValue) -> Optional[float]:
    if previous.is_infinite or current.is_infinite:
        return None
    if previous.value == 0:
        return 1.0 if current.value == 0 else math.inf
    return float(current.value) / float(previous.value)


def _diverges(corner_trace: List[ExtValue], growth: List[Optional[float]]) -> bool:
    if any(value.is_infinite for value in corner_trace):
        return True
    if len(growth) < 2:
        return False
    return all(g is not None and g >= config.DIVERGENCE_GROWTH for g in growth[-2:])


def _monotone_across(coarse: GridFn, fine: GridFn, kind: str) -> bool:
    restricted = restrict(fine, coarse.spec)
    for index in coarse.spec.indices():
        before, after = coarse.at(index), restricted.at(index)
        if kind == "super" and after < before:
            return False
        if kind == "sub" and before < after:
            return False
    return True


def transform_with_refinement(
    fn: FuncSpec,
    base: GridSpec,
    levels: int,
    kind: str,
    exact: bool = False,
    label: str = "",
) -> ClosureResult:
    """
    Run the closure on `base` and on `levels - 1` successive refinements.

    Args:
        fn: Aggregation function to transform.
        base: Coarsest grid.
        levels: Number of grids (base included), at least 1.
        kind: "super" or "sub".
        exact: Run the whole pipeline on Fractions.
        label: Name recorded in the result.

    Returns:
        ClosureResult: Per-level grids, deltas on shared points, corner
        trace, growth factors and the divergence flag.
    """
    _check_kind(kind)
    if levels < 1:
        raise AddilopeError(f"levels must be at least 1, got {levels}")

    computed: List[ClosureLevel] = []
    spec = base
    for level in range(levels):
        if level:
            spec = refine(spec)
        a = sample(fn, spec, exact=exact)
        computed.append(ClosureLevel(spec=spec, input=a, output=closure(a, kind)))
        logger.info(f"{kind} closure level {level + 1}/{levels} on {spec.describe()}")

    deltas = [max_abs_diff(prev.output, cur.output) for prev, cur in zip(computed, computed[1:])]
    corner_trace = [lvl.output.at(lvl.spec.corner) for lvl in computed]
    growth = [_growth(prev, cur) for prev, cur in zip(corner_trace, corner_trace[1:])]
    divergence_flag = _diverges(corner_trace, growth)
    monotone = all(_monotone_across(prev.output, cur.output, kind) for prev, cur in zip(computed, computed[1:]))
    if divergence_flag:
        logger.warning(f"{kind} transform of {label or 'function'} appears unbounded: corner growth {growth}")
    if not monotone:
        logger.warning("Refinement monotonicity violated across levels")

    return ClosureResult(
        kind=kind,
        levels=computed,
        deltas=deltas,
        corner_trace=corner_trace,
        growth=growth,
        divergence_flag=divergence_flag,
        refinement_monotone=monotone,
        slopes=axis_slope_estimate(fn, base, levels, exact=exact),
        exact=exact,
        label=label,
    )


def axis_slope_estimate(
    fn: FuncSpec,
    spec: GridSpec,
    levels: int,
    exact: bool = False,
    declared_convex: bool = False,
) -> SlopeEstimate:
    """
    Estimate nabla_i = lim_{t -> 0+} A(t e_i)/t from the ratios at the base
    step of each axis and `levels - 1` halvings.

    For directionally convex functions vanishing at the origin the ratios
    are non-increasing as the step halves, so the finest ratio is the best
    available estimate from above.
    """
    if levels < 1:
        raise AddilopeError(f"levels must be at least 1, got {levels}")
    origin = evaluate(fn, (0,) * spec.n, exact=exact)
    if origin != 0:
        raise AddilopeError(f"Slope estimation needs A(0) = 0, got {origin}")
    tolerance = 0 if exact else config.TOLERANCE_FACTOR

    nabla: List[ExtValue] = []
    traces: List[List[Tuple[Number, Number]]] = []
    unbounded: List[bool] = []
    non_increasing: List[bool] = []
    extrapolated: List[Number] = []
    for axis in range(spec.n):
        trace: List[Tuple[Number, Number]] = []
        step = spec.steps[axis]
        for _ in range(levels):
            t = step if exact else float(step)
            point = [0] * spec.n
            point[axis] = t
            trace.append((t, evaluate(fn, point, exact=exact) / t))
            step = step / 2
        ratios = [r for _, r in trace]
        growth = [
            cur / prev if prev else (1 if cur == 0 else math.inf)
            for prev, cur in zip(ratios, ratios[1:])
        ]
        decreasing = all(cur <= prev + tolerance * (1 + abs(prev)) for prev, cur in zip(ratios, ratios[1:]))
        flagged = len(growth) >= 2 and all(g >= config.DIVERGENCE_GROWTH for g in growth[-2:])
        if len(ratios) >= 2:
            guess = 2 * ratios[-1] - ratios[-2]
            guess = min(max(guess, 0 * guess), ratios[-1])
        else:
            guess = ratios[-1]
        if declared_convex and not decreasing:
            logger.warning(f"Axis {axis + 1}: ratio trace is not non-increasing for a declared convex input")
        nabla.append(ExtValue(ratios[-1]))
        traces.append(trace)
        unbounded.append(flagged)
        non_increasing.append(decreasing)
        extrapolated.append(guess)
    return SlopeEstimate(
        nabla=nabla,
        traces=traces,
        unbounded=unbounded,
        non_increasing=non_increasing,
        extrapolated=extrapolated,
        declared_convex=declared_convex,
    )
