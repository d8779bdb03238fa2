"""
Input validation shared by the CLI and the HTTP routes: function sources,
grid arguments, piecewise-linear documents and the exact-mode admission rule.
"""
import json
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from src.services.catalog import catalog_get
from src.services.funcspec import FuncSpec, PL1DSpec, is_rational_spec, load_pl_spec, parse_expr
from src.services.grid import GridSpec, ensure_size, make_grid_spec
from src.utils.errors import AddilopeError, ExactArithmeticError

logger = logging.getLogger(__name__)


def _split(raw: Union[str, int, float, Sequence[Any]]) -> List[Any]:
    if isinstance(raw, str):
        parts = [part.strip() for part in raw.split(",")]
        if not all(parts):
            raise AddilopeError(f"Empty entry in list {raw!r}")
        return parts
    if isinstance(raw, (list, tuple)):
        return list(raw)
    return [raw]


def build_grid(
    n: int,
    step: Union[str, float, Sequence[Any]],
    count: Union[str, int, Sequence[Any]],
    max_points: Optional[int] = None,
) -> GridSpec:
    """
    Build and size-check a grid from user arguments.

    Args:
        n: Arity.
        step: One step for all axes or one per axis ("0.5" or "0.5,0.25").
        count: One count for all axes or one per axis ("6" or "4,8").
        max_points: Override of ADDILOPE_MAX_GRID.

    Raises:
        AddilopeError: Malformed numbers or mismatched axis counts.
        GridSizeError: Too many points.
    """
    if n < 1:
        raise AddilopeError(f"Arity must be at least 1, got {n}")
    steps = _split(step)
    counts = []
    for raw in _split(count):
        try:
            counts.append(int(str(raw)))
        except ValueError:
            raise AddilopeError(f"Grid count must be an integer, got {raw!r}")
    if len(steps) not in (1, n) or len(counts) not in (1, n):
        raise AddilopeError(f"Give one step and one count, or {n} of each")
    spec = make_grid_spec(steps, counts, n)
    ensure_size(spec, max_points)
    return spec


def load_pl_document(content: Union[str, bytes]) -> PL1DSpec:
    """Parse a piecewise-linear JSON document."""
    try:
        document = json.loads(content)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise AddilopeError(f"Invalid JSON: {e}")
    return load_pl_spec(document)


def resolve_function(
    n: int,
    expression: Optional[str] = None,
    catalog: Optional[str] = None,
    params: Optional[Mapping[str, Any]] = None,
    pl: Optional[Union[PL1DSpec, Dict[str, Any]]] = None,
) -> FuncSpec:
    """
    Turn exactly one function source into a specification of arity n.

    A lifted catalog entry without an explicit n takes the grid arity.
    """
    given = [source for source in (expression, catalog, pl) if source is not None]
    if len(given) != 1:
        raise AddilopeError("Give exactly one function source: expression, catalog name or piecewise-linear spec")
    if expression is not None:
        if not expression.strip():
            raise AddilopeError("Expression is empty")
        return parse_expr(expression, n)
    if pl is not None:
        spec = pl if isinstance(pl, PL1DSpec) else load_pl_spec(pl)
        if n != 1:
            raise AddilopeError(f"Piecewise-linear specs are one-dimensional, grid arity is {n}")
        return spec
    parameters: Optional[Dict[str, Any]] = dict(params) if params else None
    if catalog.strip().startswith("lifted") and not parameters:
        parameters = {"n": n}
    entry = catalog_get(catalog, parameters)
    if entry.arity != n:
        raise AddilopeError(f"Catalog function {catalog!r} has arity {entry.arity}, grid arity is {n}")
    return entry.body


def require_exact_admissible(fn: FuncSpec) -> None:
    """Exact mode is refused for powers with non-integer exponents."""
    if not is_rational_spec(fn):
        raise ExactArithmeticError("Exact mode needs integer exponents; the function has a non-rational power")


def function_from_source(source: Any, n: int) -> FuncSpec:
    """resolve_function for a request body carrying expression / catalog / params / pl."""
    if source is None:
        raise AddilopeError("A function source is required")
    return resolve_function(
        n,
        expression=source.expression,
        catalog=source.catalog,
        params=source.params,
        pl=source.pl,
    )
