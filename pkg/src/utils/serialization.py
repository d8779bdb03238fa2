"""
Number formatting and grid CSV export.
"""
import csv
import io
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from src.services.grid import ExtValue, GridFn
from src.utils.errors import IncompatibleGridError

logger = logging.getLogger(__name__)

JsonNumber = Union[float, int, str]


def format_number(value: Any) -> str:
    """CSV form: num/den for rationals, 17 significant digits for floats, inf for infinity."""
    if isinstance(value, ExtValue):
        return "inf" if value.is_infinite else format_number(value.value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    number = float(value)
    if math.isinf(number):
        return "inf"
    return f"{number:.17g}"


def json_number(value: Any) -> Optional[JsonNumber]:
    """JSON form: rationals as "p/q" strings, floats as numbers, infinity as "inf"."""
    if value is None:
        return None
    if isinstance(value, ExtValue):
        return "inf" if value.is_infinite else json_number(value.value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    number = float(value)
    if math.isinf(number):
        return "inf"
    return number


def grid_rows(columns: Dict[str, GridFn]) -> List[List[str]]:
    """
    Rows for a CSV of aligned grid functions.

    Args:
        columns: Column name -> GridFn; all must share one GridSpec.

    Returns:
        Header row x1..xn plus column names, then one row per grid point
        in lexicographic index order.
    """
    if not columns:
        return []
    grids = list(columns.values())
    spec = grids[0].spec
    if any(grid.spec != spec for grid in grids[1:]):
        raise IncompatibleGridError("All CSV columns must share one grid")
    exact = all(grid.exact for grid in grids)
    rows = [[f"x{i + 1}" for i in range(spec.n)] + list(columns)]
    for index in spec.indices():
        point = spec.point_of(index, exact)
        rows.append([format_number(c) for c in point] + [format_number(grid.at(index)) for grid in grids])
    return rows


def rows_to_csv(rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def write_grid_csv(path: Path, columns: Dict[str, GridFn]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(rows_to_csv(grid_rows(columns)), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_dict_csv(path: Path, rows: Sequence[Dict[str, Any]]) -> Path:
    """Write dictionaries sharing the first row's keys as a CSV table."""
    path.parent.mkdir(parents=True, exist_ok=True)
    header = list(rows[0]) if rows else []
    body = [[format_cell(row.get(key, "")) for key in header] for row in rows]
    path.write_text(rows_to_csv([header] + body), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def format_cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(value).lower()
    return format_number(value)
