"""
Exception hierarchy.

Every error is a ValueError so that the HTTP and CLI surfaces can treat
invalid input uniformly.
"""
from typing import Any, Optional, Sequence


class AddilopeError(ValueError):
    """Base class for all input, evaluation and grid errors."""


class ExpressionSyntaxError(AddilopeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class VariableIndexError(AddilopeError):
    def __init__(self, index: int, arity: int):
        super().__init__(f"Variable x{index} is out of range for arity {arity}")
        self.index = index
        self.arity = arity


class EvaluationDomainError(AddilopeError):
    def __init__(self, message: str, point: Optional[Sequence[Any]] = None):
        if point is not None:
            coords = ", ".join(str(c) for c in point)
            message = f"{message} at point ({coords})"
        super().__init__(message)
        self.point = tuple(point) if point is not None else None


class ExactArithmeticError(AddilopeError):
    """A non-rational operation was requested on the exact path."""


class CatalogError(AddilopeError):
    """Unknown catalog name or bad parameters."""


class GridSizeError(AddilopeError):
    """Grid exceeds the configured maximum number of points."""


class IncompatibleGridError(AddilopeError):
    """Grids whose points do not nest."""


class NotAggregationError(AddilopeError):
    def __init__(self, report: Any):
        witness = getattr(report, "witness", None)
        detail = f": {witness.relation}" if witness is not None else ""
        super().__init__(f"Input is not an aggregation function on its grid{detail}")
        self.report = report
