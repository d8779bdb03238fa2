"""
Grid-level property checkers.

Each checker scans the defining inequalities of a property on a grid
function and returns a CheckReport: a verdict, the tolerance used, the
smallest slack seen and, on failure, a Witness whose points and values
reproduce the reported violation.

Strict verdicts are grid evidence: every evaluated discrete inequality
clears the tolerance. They say nothing beyond the grid.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src import config
from src.services.funcspec import Number
from src.services.grid import GridFn, MultiIndex
from src.utils.errors import AddilopeError

logger = logging.getLogger(__name__)

PROPERTIES = (
    "aggregation",
    "super",
    "sub",
    "cconvex",
    "supermod",
    "dirconvex",
    "dirconcave",
    "linear",
    "ratio",
    "segconvex",
)


@dataclass
class Witness:
    """
    Points and values of a violated inequality.

    slack = sum(weights[i] * values[i]) + offset; a positive slack means the
    defining inequality "lhs <= rhs" is violated by that amount.
    """
    kind: str
    points: Tuple[MultiIndex, ...]
    values: Tuple[Number, ...]
    weights: Tuple[Number, ...]
    offset: Number
    slack: Number
    relation: str
    coordinates: Tuple[Tuple[Number, ...], ...] = ()

    def recompute(self) -> Number:
        return _weighted(self.values, self.weights, self.offset)


@dataclass
class CheckReport:
    property: str
    strict: bool
    verdict: str  # holds | fails
    tolerance: Number
    witness: Optional[Witness] = None
    margin: Optional[Number] = None
    evaluated: int = 0
    notes: List[str] = field(default_factory=list)
    fitted: Optional[List[Number]] = None

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


def _weighted(values: Sequence[Number], weights: Sequence[Number], offset: Number) -> Number:
    total = offset
    for value, weight in zip(values, weights):
        total = total + weight * value
    return total


def _witness(grid: GridFn, kind: str, points, values, weights, relation: str, offset: Number = 0) -> Witness:
    points = tuple(tuple(int(i) for i in p) for p in points)
    values = tuple(values)
    slack = _weighted(values, weights, offset)
    coordinates = tuple(grid.spec.point_of(p, grid.exact) for p in points)
    return Witness(kind, points, values, tuple(weights), offset, slack, relation, coordinates)


def default_tolerance(a: GridFn) -> Number:
    """0 on exact grids, factor * (1 + max|a|) on floating grids."""
    if a.exact:
        return Fraction(0)
    return config.TOLERANCE_FACTOR * (1.0 + float(a.finite_max()))


def resolve_tolerance(a: GridFn, tau: Optional[Number]) -> Number:
    if tau is None:
        return default_tolerance(a)
    if tau < 0:
        raise AddilopeError(f"Tolerance must be non-negative, got {tau}")
    return Fraction(tau) if a.exact and not isinstance(tau, float) else tau


def _report(prop: str, strict: bool, tolerance, witness=None, margin=None, evaluated=0, notes=None, fitted=None):
    verdict = "fails" if witness is not None else "holds"
    report = CheckReport(
        property=prop,
        strict=strict,
        verdict=verdict,
        tolerance=tolerance,
        witness=witness,
        margin=margin,
        evaluated=evaluated,
        notes=list(notes or []),
        fitted=fitted,
    )
    logger.debug(f"check {prop} (strict={strict}) -> {verdict}, margin={margin}")
    return report


def _require_finite(a: GridFn, prop: str) -> np.ndarray:
    if a.infinite.any():
        raise AddilopeError(f"Property {prop!r} needs finite grid values")
    return a.values


def _unit(n: int, axis: int) -> Tuple[int, ...]:
    return tuple(1 if i == axis else 0 for i in range(n))


def _add(p: Sequence[int], q: Sequence[int]) -> MultiIndex:
    return tuple(int(x) + int(y) for x, y in zip(p, q))


def _min_of(current, candidate):
    if candidate is None:
        return current
    return candidate if current is None or candidate < current else current


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------

def check_origin_zero(a: GridFn) -> CheckReport:
    origin = (0,) * a.spec.n
    value = a.numeric()[origin]
    if value != 0:
        witness = _witness(a, "origin", [origin], [value], [1], "a(0) = 0 violated")
        return _report("origin", False, Fraction(0), witness=witness, evaluated=1)
    return _report("origin", False, Fraction(0), evaluated=1)


def check_aggregation(a: GridFn) -> CheckReport:
    """Holds iff a[0] = 0 and a is non-decreasing along every axis step."""
    origin_report = check_origin_zero(a)
    if not origin_report.holds:
        origin_report.property = "aggregation"
        return origin_report
    values = a.numeric()
    n = a.spec.n
    candidates = []
    evaluated = 0
    for axis in range(n):
        lower = values[tuple(slice(0, -1) if i == axis else slice(None) for i in range(n))]
        upper = values[tuple(slice(1, None) if i == axis else slice(None) for i in range(n))]
        drops = np.argwhere(np.asarray(upper < lower, dtype=bool))
        evaluated += lower.size
        if len(drops):
            m = tuple(int(i) for i in drops[0])
            candidates.append((m, _add(m, _unit(n, axis))))
    if not candidates:
        return _report("aggregation", False, Fraction(0), evaluated=evaluated)
    m, step = min(candidates)
    witness = _witness(
        a,
        "axis-pair",
        [m, step],
        [values[m], values[step]],
        [1, -1],
        f"a{m} <= a{step} violated",
    )
    return _report("aggregation", False, Fraction(0), witness=witness, evaluated=evaluated)


# ---------------------------------------------------------------------------
# Additivity
# ---------------------------------------------------------------------------

def _lex_le_mask(shape: Tuple[int, ...], p: MultiIndex) -> np.ndarray:
    grids = np.indices(shape)
    less = np.zeros(shape, dtype=bool)
    equal = np.ones(shape, dtype=bool)
    for axis, coordinate in enumerate(p):
        less |= equal & (grids[axis] < coordinate)
        equal &= grids[axis] == coordinate
    return less | equal


def _pair_scan(a: GridFn, prop: str, superadditive: bool, strict: bool, tau) -> CheckReport:
    tolerance = resolve_tolerance(a, tau)
    values = a.numeric()
    spec = a.spec
    n = spec.n
    margin = None
    evaluated = 0
    for p in spec.indices():
        block = tuple(slice(0, m - i + 1) for m, i in zip(spec.counts, p))
        shifted = tuple(slice(i, m + 1) for m, i in zip(spec.counts, p))
        q_values = values[block]
        sums = values[shifted]
        pairs = _lex_le_mask(q_values.shape, p)
        if not pairs.any():
            continue
        # slack > 0 means the inequality is violated
        if superadditive:
            slack = (values[p] + q_values) - sums
        else:
            slack = sums - values[p] - q_values
        eligible = pairs.copy()
        eligible[(0,) * n] = False
        if not any(p):
            eligible[...] = False
        if n == 1 and p[0] < eligible.shape[0]:
            eligible[p] = False
        evaluated += int(pairs.sum())

        violated = pairs & np.asarray(slack > tolerance, dtype=bool)
        if strict:
            violated |= eligible & np.asarray(slack >= -tolerance, dtype=bool)
        if eligible.any():
            margin = _min_of(margin, (-slack[eligible]).min())
        hits = np.argwhere(violated)
        if len(hits):
            q = tuple(int(i) for i in hits[0])
            s = _add(p, q)
            if superadditive:
                weights, relation = [1, 1, -1], f"a{p} + a{q} <= a{s}"
            else:
                weights, relation = [-1, -1, 1], f"a{s} <= a{p} + a{q}"
            if strict and not slack[q] > tolerance:
                relation = relation.replace("<=", "<") + " (strict)"
            witness = _witness(a, "pair", [p, q, s], [values[p], values[q], values[s]], weights, f"{relation} violated")
            return _report(prop, strict, tolerance, witness=witness, margin=margin, evaluated=evaluated)
    return _report(prop, strict, tolerance, margin=margin, evaluated=evaluated)


def check_superadditive(a: GridFn, strict: bool = False, tau: Optional[Number] = None) -> CheckReport:
    """
    Scan all pairs (p, q) with p + q on the grid, each unordered pair once
    with the lexicographically larger point first.

    Non-strict: a[p] + a[q] <= a[p+q] + tau. Strict additionally requires
    a[p] + a[q] < a[p+q] - tau for nonzero p, q (distinct in one dimension).
    """
    return _pair_scan(a, "super", True, strict, tau)


def check_subadditive(a: GridFn, strict: bool = False, tau: Optional[Number] = None) -> CheckReport:
    """Dual of check_superadditive: a[p+q] <= a[p] + a[q] + tau."""
    return _pair_scan(a, "sub", False, strict, tau)


# ---------------------------------------------------------------------------
# Second differences
# ---------------------------------------------------------------------------

def _quadruple_witness(a: GridFn, values, u, v, x, y, concave: bool, label: str) -> Witness:
    # convex: a[x] + a[y] <= a[u] + a[v]; concave reverses
    weights = [-1, -1, 1, 1] if not concave else [1, 1, -1, -1]
    relation = (
        f"a{x} + a{y} <= a{u} + a{v}" if not concave else f"a{u} + a{v} <= a{x} + a{y}"
    )
    return _witness(
        a,
        "quadruple",
        [u, v, x, y],
        [values[u], values[v], values[x], values[y]],
        weights,
        f"{relation} violated ({label})",
    )


def _axis_second_differences(a: GridFn, prop: str, strict: bool, tolerance, concave: bool):
    values = _require_finite(a, prop)
    n = a.spec.n
    notes: List[str] = []
    candidates = []
    margin = None
    evaluated = 0
    for axis in range(n):
        if a.spec.counts[axis] < 2:
            notes.append(f"axis {axis + 1} not evaluable (fewer than 2 steps)")
            continue
        def cut(start, stop):
            return tuple(slice(start, stop) if i == axis else slice(None) for i in range(n))
        second = values[cut(2, None)] - 2 * values[cut(1, -1)] + values[cut(0, -2)]
        oriented = -second if concave else second
        evaluated += oriented.size
        margin = _min_of(margin, oriented.min())
        if strict:
            bad = np.asarray(oriented <= tolerance, dtype=bool)
        else:
            bad = np.asarray(oriented < -tolerance, dtype=bool)
        hits = np.argwhere(bad)
        if len(hits):
            u = tuple(int(i) for i in hits[0])
            e = _unit(n, axis)
            x = _add(u, e)
            v = _add(x, e)
            candidates.append((u, v, x, x))
    witness = None
    if candidates:
        u, v, x, y = min(candidates)
        witness = _quadruple_witness(a, values, u, v, x, y, concave, "axis second difference")
    return witness, margin, evaluated, notes


def _mixed_second_differences(a: GridFn, prop: str, strict: bool, tolerance, concave: bool):
    values = _require_finite(a, prop)
    n = a.spec.n
    candidates = []
    margin = None
    evaluated = 0
    for i, j in itertools.combinations(range(n), 2):
        def cut(di, dj):
            slices = []
            for axis in range(n):
                if axis == i:
                    slices.append(slice(di, values.shape[axis] - 1 + di))
                elif axis == j:
                    slices.append(slice(dj, values.shape[axis] - 1 + dj))
                else:
                    slices.append(slice(None))
            return tuple(slices)
        mixed = values[cut(1, 1)] - values[cut(1, 0)] - values[cut(0, 1)] + values[cut(0, 0)]
        oriented = -mixed if concave else mixed
        evaluated += oriented.size
        margin = _min_of(margin, oriented.min())
        if strict:
            bad = np.asarray(oriented <= tolerance, dtype=bool)
        else:
            bad = np.asarray(oriented < -tolerance, dtype=bool)
        hits = np.argwhere(bad)
        if len(hits):
            u = tuple(int(k) for k in hits[0])
            x = _add(u, _unit(n, i))
            y = _add(u, _unit(n, j))
            v = _add(x, _unit(n, j))
            candidates.append((u, v, x, y))
    witness = None
    if candidates:
        u, v, x, y = min(candidates)
        witness = _quadruple_witness(a, values, u, v, x, y, concave, "mixed second difference")
    return witness, margin, evaluated


def check_coordinatewise_convex(a: GridFn, strict: bool = False, tau: Optional[Number] = None) -> CheckReport:
    """Every axis second difference a[m+2e] - 2a[m+e] + a[m] >= -tau (strict: > tau)."""
    tolerance = resolve_tolerance(a, tau)
    witness, margin, evaluated, notes = _axis_second_differences(a, "cconvex", strict, tolerance, False)
    return _report("cconvex", strict, tolerance, witness, margin, evaluated, notes)


def check_supermodular(a: GridFn, strict: bool = False, tau: Optional[Number] = None) -> CheckReport:
    """Every mixed second difference a[m+ei+ej] - a[m+ei] - a[m+ej] + a[m] >= -tau (strict: > tau)."""
    tolerance = resolve_tolerance(a, tau)
    if a.spec.n == 1:
        return _report("supermod", strict, tolerance, notes=["vacuously holds: no pair of distinct axes"])
    witness, margin, evaluated = _mixed_second_differences(a, "supermod", strict, tolerance, False)
    return _report("supermod", strict, tolerance, witness, margin, evaluated)


def quadruple_count(a: GridFn) -> int:
    """Number of (u, v, x) triples with u <= x <= v on the grid."""
    return math.prod(math.comb(m + 3, 3) for m in a.spec.counts)


def quadruple_oracle(
    a: GridFn, strict: bool = False, tau: Optional[Number] = None, concave: bool = False
) -> CheckReport:
    """
    Exhaustive scan of u <= x, y <= v with u + v = x + y.

    Configurations with {x, y} = {u, v} are skipped. Non-strict convexity
    requires a[x] + a[y] <= a[u] + a[v] + tau; strict requires
    a[x] + a[y] < a[u] + a[v] - tau. Concave reverses both.
    """
    tolerance = resolve_tolerance(a, tau)
    values = _require_finite(a, "quadruple")
    spec = a.spec
    prop = "dirconcave-oracle" if concave else "dirconvex-oracle"
    margin = None
    evaluated = 0
    points = list(spec.indices())
    for u in points:
        for v in points:
            if any(ui > vi for ui, vi in zip(u, v)):
                continue
            for x in itertools.product(*(range(ui, vi + 1) for ui, vi in zip(u, v))):
                y = tuple(ui + vi - xi for ui, vi, xi in zip(u, v, x))
                if {x, y} == {u, v}:
                    continue
                evaluated += 1
                gap = values[u] + values[v] - values[x] - values[y]
                if concave:
                    gap = -gap
                margin = _min_of(margin, gap)
                if gap < -tolerance or (strict and gap <= tolerance):
                    witness = _quadruple_witness(a, values, u, v, x, y, concave, "quadruple scan")
                    return _report(prop, strict, tolerance, witness, margin, evaluated)
    return _report(prop, strict, tolerance, margin=margin, evaluated=evaluated)


def _directional(a: GridFn, strict: bool, tau, concave: bool) -> CheckReport:
    prop = "dirconcave" if concave else "dirconvex"
    tolerance = resolve_tolerance(a, tau)
    witness, margin, evaluated, notes = _axis_second_differences(a, prop, strict, tolerance, concave)
    if a.spec.n > 1:
        mixed_witness, mixed_margin, mixed_count = _mixed_second_differences(a, prop, strict, tolerance, concave)
        margin = _min_of(margin, mixed_margin)
        evaluated += mixed_count
        if witness is None:
            witness = mixed_witness
    report = _report(prop, strict, tolerance, witness, margin, evaluated, notes)

    count = quadruple_count(a)
    if count <= config.ORACLE_QUADRUPLE_LIMIT:
        oracle = quadruple_oracle(a, strict=strict, tau=tolerance, concave=concave)
        if oracle.verdict == report.verdict:
            report.notes.append(f"quadruple scan agrees ({oracle.evaluated} quadruples)")
        else:
            logger.warning(f"{prop}: second differences say {report.verdict}, quadruple scan says {oracle.verdict}")
            report.notes.append(f"quadruple scan disagrees: {oracle.verdict}")
    return report


def check_directionally_convex(a: GridFn, strict: bool = False, tau: Optional[Number] = None) -> CheckReport:
    """Coordinatewise convexity and supermodularity (the grid form of ultramodularity)."""
    return _directional(a, strict, tau, concave=False)


def check_directionally_concave(a: GridFn, strict: bool = False, tau: Optional[Number] = None) -> CheckReport:
    """Exact dual of check_directionally_convex."""
    return _directional(a, strict, tau, concave=True)


# ---------------------------------------------------------------------------
# Linearity, ratios, segments
# ---------------------------------------------------------------------------

def check_linear(a: GridFn, tau: Optional[Number] = None) -> CheckReport:
    """
    Fit nabla_i = a[e_i] / h_i and compare with nabla . x everywhere.

    Holds iff max |a - nabla . x| <= tau * (1 + max|a|); tau is the relative
    factor (default ADDILOPE_TOLERANCE, 0 on exact grids).
    """
    values = _require_finite(a, "linear")
    spec = a.spec
    n = spec.n
    if tau is None:
        factor = Fraction(0) if a.exact else config.TOLERANCE_FACTOR
    else:
        factor = Fraction(tau) if a.exact and not isinstance(tau, float) else tau
    scale = a.finite_max()
    tolerance = factor * (1 + scale)
    fitted = []
    for axis in range(n):
        step = spec.steps[axis] if a.exact else float(spec.steps[axis])
        fitted.append(values[_unit(n, axis)] / step)
    worst = None
    witness = None
    for index in spec.indices():
        point = spec.point_of(index, a.exact)
        predicted = sum((c * x for c, x in zip(fitted, point)), 0 * fitted[0])
        deviation = abs(values[index] - predicted)
        if worst is None or deviation > worst:
            worst = deviation
        if witness is None and deviation > tolerance:
            witness = _witness(
                a,
                "point",
                [index],
                [values[index]],
                [1],
                f"a{index} = nabla . x = {predicted} violated",
                offset=-predicted,
            )
    return _report("linear", False, tolerance, witness, margin=worst, evaluated=spec.point_count(), fitted=fitted)


def ray_indices(a: GridFn, ray: str) -> List[Tuple[MultiIndex, Number]]:
    """Points (index, parameter t) along an axis ray "axis:i" (1-based) or the diagonal."""
    spec = a.spec
    if ray == "diagonal":
        if len(set(spec.steps)) > 1:
            raise AddilopeError(f"Diagonal ray needs equal steps on every axis, got {spec.describe()}")
        length = min(spec.counts)
        step = spec.steps[0] if a.exact else float(spec.steps[0])
        return [((k,) * spec.n, k * step) for k in range(length + 1)]
    name, _, raw_axis = ray.partition(":")
    if name != "axis" or not raw_axis.isdigit() or not 1 <= int(raw_axis) <= spec.n:
        raise AddilopeError(f"Ray must be 'diagonal' or 'axis:i' with 1 <= i <= {spec.n}, got {ray!r}")
    axis = int(raw_axis) - 1
    step = spec.steps[axis] if a.exact else float(spec.steps[axis])
    return [
        (tuple(k if i == axis else 0 for i in range(spec.n)), k * step)
        for k in range(spec.counts[axis] + 1)
    ]


def check_ratio_monotone(a: GridFn, ray: str = "axis:1", tau: Optional[Number] = None) -> CheckReport:
    """
    a[m] / t(m) must be non-decreasing along the ray (t the ray parameter;
    the diagonal uses t = k * h at multi-index (k, ..., k) and needs one
    common step h). The point t = 0 is skipped.
    """
    tolerance = resolve_tolerance(a, tau)
    values = _require_finite(a, "ratio")
    if values[(0,) * a.spec.n] != 0:
        raise AddilopeError("Ratio monotonicity needs a(0) = 0")
    points = [(m, t) for m, t in ray_indices(a, ray) if t != 0]
    notes = [f"ray {ray}"]
    margin = None
    for (m1, t1), (m2, t2) in zip(points, points[1:]):
        r1, r2 = values[m1] / t1, values[m2] / t2
        margin = _min_of(margin, r2 - r1)
        if r2 < r1 - tolerance:
            witness = _witness(
                a,
                "pair",
                [m1, m2],
                [values[m1], values[m2]],
                [1 / t1, -1 / t2],
                f"a{m1}/{t1} <= a{m2}/{t2} violated",
            )
            return _report("ratio", False, tolerance, witness, margin, len(points), notes)
    return _report("ratio", False, tolerance, margin=margin, evaluated=max(len(points) - 1, 0), notes=notes)


def check_segment_midpoint_convex(
    a: GridFn, p: Sequence[int], q: Sequence[int], tau: Optional[Number] = None
) -> CheckReport:
    """Midpoint convexity a[(p+q)/2] <= (a[p] + a[q]) / 2 for one segment with grid midpoint."""
    tolerance = resolve_tolerance(a, tau)
    values = _require_finite(a, "segconvex")
    p = tuple(int(i) for i in p)
    q = tuple(int(i) for i in q)
    if any((x + y) % 2 for x, y in zip(p, q)):
        raise AddilopeError(f"Midpoint of {p} and {q} is not a grid point")
    mid = tuple((x + y) // 2 for x, y in zip(p, q))
    half = Fraction(1, 2) if a.exact else 0.5
    gap = half * values[p] + half * values[q] - values[mid]
    if gap < -tolerance:
        witness = _witness(
            a,
            "triple",
            [p, q, mid],
            [values[p], values[q], values[mid]],
            [-half, -half, 1],
            f"a{mid} <= (a{p} + a{q}) / 2 violated",
        )
        return _report("segconvex", False, tolerance, witness, gap, 1)
    return _report("segconvex", False, tolerance, margin=gap, evaluated=1)


def check_segment_convex(a: GridFn, strict: bool = False, tau: Optional[Number] = None) -> CheckReport:
    """
    Midpoint convexity over every pair of grid points whose midpoint is a
    grid point (p listed before q lexicographically, p != q).
    """
    tolerance = resolve_tolerance(a, tau)
    values = _require_finite(a, "segconvex")
    half = Fraction(1, 2) if a.exact else 0.5
    points = list(a.spec.indices())
    margin = None
    evaluated = 0
    for position, p in enumerate(points):
        for q in points[position + 1:]:
            if any((x + y) % 2 for x, y in zip(p, q)):
                continue
            mid = tuple((x + y) // 2 for x, y in zip(p, q))
            gap = half * values[p] + half * values[q] - values[mid]
            evaluated += 1
            margin = _min_of(margin, gap)
            if gap < -tolerance or (strict and gap <= tolerance):
                witness = _witness(
                    a,
                    "triple",
                    [p, q, mid],
                    [values[p], values[q], values[mid]],
                    [-half, -half, 1],
                    f"a{mid} <= (a{p} + a{q}) / 2 violated",
                )
                return _report("segconvex", strict, tolerance, witness, margin, evaluated)
    return _report("segconvex", strict, tolerance, margin=margin, evaluated=evaluated)


def check_pointwise_le(f: GridFn, g: GridFn, tau: Optional[Number] = None) -> CheckReport:
    """f <= g + tau at every grid point (same grid)."""
    if f.spec != g.spec:
        raise AddilopeError("Pointwise comparison needs identical grids")
    tolerance = resolve_tolerance(g, tau) if tau is not None else max(default_tolerance(f), default_tolerance(g))
    left, right = f.numeric(), g.numeric()
    margin = None
    for index in f.spec.indices():
        gap = right[index] - left[index] if not (math.isinf(right[index]) and math.isinf(left[index])) else 0
        margin = _min_of(margin, gap)
        if gap < -tolerance:
            witness = _witness(
                f,
                "pair", [index, index], [left[index], right[index]], [1, -1], f"f{index} <= g{index} violated"
            )
            return _report("pointwise-le", False, tolerance, witness, margin, f.spec.point_count())
    return _report("pointwise-le", False, tolerance, margin=margin, evaluated=f.spec.point_count())


def run_check(a: GridFn, prop: str, strict: bool = False, tau: Optional[Number] = None, ray: str = "axis:1") -> CheckReport:
    """Dispatch by property id (the CLI / HTTP vocabulary)."""
    if prop == "aggregation":
        return check_aggregation(a)
    if prop == "super":
        return check_superadditive(a, strict, tau)
    if prop == "sub":
        return check_subadditive(a, strict, tau)
    if prop == "cconvex":
        return check_coordinatewise_convex(a, strict, tau)
    if prop == "supermod":
        return check_supermodular(a, strict, tau)
    if prop == "dirconvex":
        return check_directionally_convex(a, strict, tau)
    if prop == "dirconcave":
        return check_directionally_concave(a, strict, tau)
    if prop == "linear":
        return check_linear(a, tau)
    if prop == "ratio":
        return check_ratio_monotone(a, ray, tau)
    if prop == "segconvex":
        return check_segment_convex(a, strict, tau)
    raise AddilopeError(f"Unknown property {prop!r}, expected one of {', '.join(PROPERTIES)}")
