"""
Regular grids on boxes [0, X1] x ... x [0, Xn], grid functions with
extended non-negative values, sampling, refinement and comparison.

Values live in a dense numpy array; infinity is tracked by a separate
boolean mask, never by a float sentinel. Exact grids hold Fractions in an
object array, floating grids hold float64.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Any, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from src import config
from src.services.funcspec import FuncSpec, Number, evaluate
from src.utils.errors import AddilopeError, GridSizeError, IncompatibleGridError

logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]


@total_ordering
@dataclass(frozen=True)
class ExtValue:
    """Element of [0, inf]: a finite non-negative number, or infinity (value None)."""
    value: Optional[Number] = None

    def __post_init__(self) -> None:
        if self.value is not None:
            if isinstance(self.value, float) and math.isnan(self.value):
                raise AddilopeError("ExtValue cannot be NaN")
            if isinstance(self.value, float) and math.isinf(self.value):
                raise AddilopeError("Use ExtValue.infinity() for infinite values")
            if self.value < 0:
                raise AddilopeError(f"ExtValue must be non-negative, got {self.value}")

    @classmethod
    def infinity(cls) -> "ExtValue":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: "ExtValue") -> "ExtValue":
        if self.is_infinite or other.is_infinite:
            return ExtValue.infinity()
        return ExtValue(self.value + other.value)

    def __lt__(self, other: "ExtValue") -> bool:
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self.value)

    def as_float(self) -> float:
        return math.inf if self.is_infinite else float(self.value)


@dataclass(frozen=True)
class GridSpec:
    """Grid with per-axis step h_i and index range 0..M_i (coordinate = index * h_i)."""
    steps: Tuple[Fraction, ...]
    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.steps) != len(self.counts) or not self.steps:
            raise AddilopeError("Grid needs one step and one count per axis, arity >= 1")
        if any(h <= 0 for h in self.steps):
            raise AddilopeError(f"All grid steps must be positive, got {[str(h) for h in self.steps]}")
        if any(int(m) != m or m < 1 for m in self.counts):
            raise AddilopeError(f"All grid counts must be integers >= 1, got {list(self.counts)}")

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(m + 1 for m in self.counts)

    @property
    def extent(self) -> Tuple[Fraction, ...]:
        return tuple(h * m for h, m in zip(self.steps, self.counts))

    @property
    def corner(self) -> MultiIndex:
        return tuple(self.counts)

    def point_count(self) -> int:
        return math.prod(self.shape)

    def point_of(self, index: Sequence[int], exact: bool = False) -> Tuple[Number, ...]:
        if exact:
            return tuple(h * i for h, i in zip(self.steps, index))
        return tuple(float(h * i) for h, i in zip(self.steps, index))

    def indices(self) -> Iterator[MultiIndex]:
        """All multi-indices in lexicographic order."""
        return np.ndindex(*self.shape)

    def describe(self) -> str:
        steps = ",".join(str(h) for h in self.steps)
        counts = ",".join(str(m) for m in self.counts)
        return f"n={self.n} h=({steps}) M=({counts})"


def make_grid_spec(
    steps: Union[Any, Sequence[Any]],
    counts: Union[int, Sequence[int]],
    n: Optional[int] = None,
) -> GridSpec:
    """
    Build a GridSpec, broadcasting a single step or count to all axes.

    Steps may be ints, decimal strings, Fractions or floats (floats are
    converted through their shortest repr, so 0.1 becomes 1/10).
    """
    step_list = list(steps) if isinstance(steps, (list, tuple)) else [steps]
    count_list = list(counts) if isinstance(counts, (list, tuple)) else [counts]
    arity = n or max(len(step_list), len(count_list))
    if len(step_list) == 1:
        step_list = step_list * arity
    if len(count_list) == 1:
        count_list = count_list * arity
    if len(step_list) != arity or len(count_list) != arity:
        raise AddilopeError(
            f"Expected {arity} steps and counts, got {len(step_list)} steps and {len(count_list)} counts"
        )
    return GridSpec(
        steps=tuple(_as_fraction(h) for h in step_list),
        counts=tuple(int(m) for m in count_list),
    )


def _as_fraction(raw: Any) -> Fraction:
    if isinstance(raw, Fraction):
        return raw
    try:
        return Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError):
        raise AddilopeError(f"Invalid grid step {raw!r}")


def ensure_size(spec: GridSpec, max_points: Optional[int] = None) -> None:
    limit = max_points if max_points is not None else config.MAX_GRID_POINTS
    total = spec.point_count()
    if total > limit:
        raise GridSizeError(f"Grid {spec.describe()} has {total} points, limit is {limit}")


@dataclass(frozen=True, eq=False)
class GridFn:
    spec: GridSpec
    values: np.ndarray
    infinite: np.ndarray
    exact: bool = False

    def __post_init__(self) -> None:
        if self.values.shape != self.spec.shape or self.infinite.shape != self.spec.shape:
            raise AddilopeError(
                f"Value array shape {self.values.shape} does not match grid shape {self.spec.shape}"
            )
        self.values.flags.writeable = False
        self.infinite.flags.writeable = False

    def at(self, index: Sequence[int]) -> ExtValue:
        index = tuple(index)
        if self.infinite[index]:
            return ExtValue.infinity()
        return ExtValue(self.values[index])

    def numeric(self) -> np.ndarray:
        """Values with infinity as float inf (object array for exact grids)."""
        if not self.infinite.any():
            return self.values
        out = self.values.copy() if not self.exact else self.values.astype(object)
        out[self.infinite] = math.inf
        return out

    def finite_max(self) -> Number:
        finite = self.values[~self.infinite]
        if finite.size == 0:
            return Fraction(0) if self.exact else 0.0
        return max(abs(v) for v in finite.ravel()) if self.exact else float(np.max(np.abs(finite)))

    def with_values(self, values: np.ndarray, infinite: Optional[np.ndarray] = None) -> "GridFn":
        mask = infinite if infinite is not None else np.zeros(self.spec.shape, dtype=bool)
        return GridFn(spec=self.spec, values=values, infinite=mask, exact=self.exact)

    def to_float(self) -> "GridFn":
        if not self.exact:
            return self
        values = np.array([float(v) for v in self.values.ravel()], dtype=float).reshape(self.spec.shape)
        return GridFn(spec=self.spec, values=values, infinite=self.infinite.copy(), exact=False)


def grid_from_values(
    spec: GridSpec,
    values: Any,
    exact: bool = False,
    infinite: Optional[Any] = None,
) -> GridFn:
    """Build a GridFn from a dense array-like indexed by multi-index."""
    if exact:
        array = np.empty(spec.shape, dtype=object)
        source = np.asarray(values, dtype=object)
        if source.shape != spec.shape:
            raise AddilopeError(f"Value array shape {source.shape} does not match grid shape {spec.shape}")
        for index in np.ndindex(*spec.shape):
            array[index] = Fraction(source[index])
    else:
        array = np.array(values, dtype=float)
    mask = np.zeros(spec.shape, dtype=bool) if infinite is None else np.array(infinite, dtype=bool)
    if not exact:
        mask = mask | np.isinf(array)
        array = np.where(np.isinf(array), 0.0, array)
        if np.isnan(array).any():
            raise AddilopeError("Grid values must not be NaN")
    else:
        for index in zip(*np.nonzero(mask)):
            array[index] = Fraction(0)
    if any(v < 0 for v in array[~mask].ravel()):
        raise AddilopeError("Grid values must be non-negative")
    return GridFn(spec=spec, values=array, infinite=mask, exact=exact)


def sample(fn: FuncSpec, spec: GridSpec, exact: bool = False, max_points: Optional[int] = None) -> GridFn:
    """
    Evaluate a function at every point of a grid.

    Args:
        fn: Function specification with arity equal to the grid arity.
        spec: Grid to sample on.
        exact: Evaluate on Fractions.
        max_points: Size cap override (defaults to ADDILOPE_MAX_GRID).

    Returns:
        GridFn: values[m] = fn(point_of(m)).

    Raises:
        EvaluationDomainError: Propagated from evaluation, carrying the point.
        GridSizeError: Grid larger than the cap.
    """
    if fn.arity != spec.n:
        raise AddilopeError(f"Function arity {fn.arity} does not match grid arity {spec.n}")
    ensure_size(spec, max_points)
    values = np.empty(spec.shape, dtype=object if exact else float)
    for index in spec.indices():
        values[index] = evaluate(fn, spec.point_of(index, exact), exact=exact)
    logger.debug(f"Sampled {spec.point_count()} points on {spec.describe()} (exact={exact})")
    return GridFn(spec=spec, values=values, infinite=np.zeros(spec.shape, dtype=bool), exact=exact)


def refine(spec: GridSpec, max_points: Optional[int] = None) -> GridSpec:
    """Halve every step and double every count; the input grid is a subgrid of the output."""
    refined = GridSpec(
        steps=tuple(h / 2 for h in spec.steps),
        counts=tuple(m * 2 for m in spec.counts),
    )
    ensure_size(refined, max_points)
    return refined


def subgrid_strides(coarse: GridSpec, fine: GridSpec) -> Optional[Tuple[int, ...]]:
    """Per-axis index stride mapping coarse points into the fine grid, or None."""
    if coarse.n != fine.n:
        return None
    strides = []
    for hc, hf, mc, mf in zip(coarse.steps, fine.steps, coarse.counts, fine.counts):
        ratio = hc / hf
        if ratio.denominator != 1 or ratio.numerator * mc > mf:
            return None
        strides.append(ratio.numerator)
    return tuple(strides)


def restrict(fine: GridFn, coarse: GridSpec) -> GridFn:
    """Values of `fine` at the points of `coarse`."""
    strides = subgrid_strides(coarse, fine.spec)
    if strides is None:
        raise IncompatibleGridError(f"Grid {coarse.describe()} is not a subgrid of {fine.spec.describe()}")
    view = tuple(slice(0, m * s + 1, s) for m, s in zip(coarse.counts, strides))
    return GridFn(
        spec=coarse,
        values=fine.values[view].copy(),
        infinite=fine.infinite[view].copy(),
        exact=fine.exact,
    )


def max_abs_diff(a: GridFn, b: GridFn) -> ExtValue:
    """
    Maximum of |a - b| over the points of a's grid (which must be points of b's grid).

    Infinity when exactly one side is infinite at a shared point; points where
    both are infinite contribute 0.
    """
    if subgrid_strides(a.spec, b.spec) is not None:
        b_view = restrict(b, a.spec)
        a_view = a
    elif subgrid_strides(b.spec, a.spec) is not None:
        a_view = restrict(a, b.spec)
        b_view = b
    else:
        raise IncompatibleGridError(f"Grids {a.spec.describe()} and {b.spec.describe()} do not nest")

    if (a_view.infinite != b_view.infinite).any():
        return ExtValue.infinity()
    finite = ~a_view.infinite
    if not finite.any():
        return ExtValue(Fraction(0) if a.exact and b.exact else 0.0)
    if a.exact and b.exact:
        diffs = [abs(x - y) for x, y in zip(a_view.values[finite].ravel(), b_view.values[finite].ravel())]
        return ExtValue(max(diffs))
    left = a_view.to_float().values[finite]
    right = b_view.to_float().values[finite]
    return ExtValue(float(np.max(np.abs(left - right))))
