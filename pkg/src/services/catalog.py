"""
Builtin catalog of named functions.

Names may carry their parameters in call syntax ("power(2)", "linear(2,3)",
"lifted(example1_A)") or receive them separately as a sequence or a
name -> value mapping.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from src.services.funcspec import FuncSpec, LiftedSpec, PL1DSpec, parse_expr
from src.utils.errors import CatalogError

logger = logging.getLogger(__name__)

Parameters = Union[Sequence[Any], Mapping[str, Any], None]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    arity: int
    parameters: Tuple[Tuple[str, Fraction], ...]
    body: FuncSpec


def _pl(knots: Sequence[Tuple[Any, Any]], tail_slope: Any) -> PL1DSpec:
    return PL1DSpec(
        knots=tuple((Fraction(x), Fraction(y)) for x, y in knots),
        tail_slope=Fraction(tail_slope),
    )


# A(x) = x on [0,4], x/2 + 2 on [4,6], 5x/6 on [6,12], 5x/4 - 5 beyond
EXAMPLE1_A = _pl([(0, 0), (4, 4), (6, 5), (12, 10)], Fraction(5, 4))
# f(x) = x on [0,4], x/2 + 2 on [4,6], 5x/6 beyond
EXAMPLE1_F = _pl([(0, 0), (4, 4), (6, 5)], Fraction(5, 6))
# g(x) = x on [0,20], 5x/4 - 5 beyond
EXAMPLE1_G = _pl([(0, 0), (20, 20)], Fraction(5, 4))

_FIXED_EXPRESSIONS: Dict[str, Tuple[str, int]] = {
    "product_minus_one": ("(x1+1)*(x2+1) - 1", 2),
    "skew_quadratic": ("(x1-x2)^2 + 4*x2^2", 2),
    "skew_quad_strict": ("x1^2 + x2^2 + x1*x2", 2),
    "sqrt": ("x1^0.5", 1),
}

_FIXED_PL: Dict[str, PL1DSpec] = {
    "example1_A": EXAMPLE1_A,
    "example1_f": EXAMPLE1_F,
    "example1_g": EXAMPLE1_G,
}

_CALL_RE = re.compile(r"^\s*(?P<name>[A-Za-z_]\w*)\s*(?:\((?P<args>.*)\))?\s*$")


def _to_fraction(raw: Any, name: str) -> Fraction:
    try:
        return raw if isinstance(raw, Fraction) else Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError):
        raise CatalogError(f"Parameter {name!r} is not a number: {raw!r}")


def _normalize(parameters: Parameters) -> Tuple[List[Tuple[str, Any]], bool]:
    """Return (name, value) pairs and whether names were given explicitly."""
    if parameters is None:
        return [], False
    if isinstance(parameters, Mapping):
        return list(parameters.items()), True
    return [(f"p{i + 1}", value) for i, value in enumerate(parameters)], False


def _build_power(params: List[Tuple[str, Any]], named: bool) -> CatalogEntry:
    if len(params) != 1:
        raise CatalogError(f"power takes exactly 1 parameter (p), got {len(params)}")
    name, raw = params[0]
    if named and name != "p":
        raise CatalogError(f"power has no parameter {name!r}")
    p = _to_fraction(raw, "p")
    if p <= 0:
        raise CatalogError("power needs p > 0 to vanish at the origin")
    text = f"x1^{p}" if p.denominator == 1 else f"x1^({p.numerator}/{p.denominator})"
    return CatalogEntry("power", 1, (("p", p),), parse_expr(text, 1))


def _build_linear(params: List[Tuple[str, Any]], named: bool) -> CatalogEntry:
    if not params:
        raise CatalogError("linear takes at least 1 parameter (c or c1..cn)")
    if named:
        names = [name for name, _ in params]
        expected = ["c"] if len(params) == 1 and names == ["c"] else [f"c{i + 1}" for i in range(len(params))]
        if names != expected:
            raise CatalogError(f"linear expects parameters {expected}, got {names}")
    coefficients = [_to_fraction(raw, name) for name, raw in params]
    if any(c < 0 for c in coefficients):
        raise CatalogError("linear coefficients must be non-negative")
    terms = " + ".join(
        f"{c}*x{i + 1}" if c.denominator == 1 else f"({c.numerator}/{c.denominator})*x{i + 1}"
        for i, c in enumerate(coefficients)
    )
    named_params = tuple((f"c{i + 1}", c) for i, c in enumerate(coefficients))
    return CatalogEntry("linear", len(coefficients), named_params, parse_expr(terms, len(coefficients)))


def _build_lifted(base_name: str, params: List[Tuple[str, Any]], named: bool) -> CatalogEntry:
    arity = 2
    if len(params) > 1:
        raise CatalogError(f"lifted takes at most 1 parameter (n), got {len(params)}")
    if params:
        name, raw = params[0]
        if named and name != "n":
            raise CatalogError(f"lifted has no parameter {name!r}")
        value = _to_fraction(raw, "n")
        if value.denominator != 1 or value < 1:
            raise CatalogError(f"lifted needs an integer n >= 1, got {raw!r}")
        arity = int(value)
    base = catalog_get(base_name).body
    if base.arity != 1:
        raise CatalogError(f"lifted needs a one-dimensional base, {base_name!r} has arity {base.arity}")
    return CatalogEntry(
        f"lifted({base_name})", arity, (("n", Fraction(arity)),), LiftedSpec(base=base, arity=arity)
    )


def catalog_get(name: str, parameters: Parameters = None) -> CatalogEntry:
    """
    Look up a catalog function.

    Args:
        name: Catalog name, optionally in call syntax, e.g. "power(2)".
        parameters: Extra parameters, positional or named.

    Returns:
        CatalogEntry: Entry with its specification in `body`.

    Raises:
        CatalogError: Unknown name or bad parameter count.
    """
    match = _CALL_RE.match(name or "")
    if match is None:
        raise CatalogError(f"Malformed catalog name {name!r}")
    base_name = match.group("name")
    inline_args = match.group("args")

    params, named = _normalize(parameters)
    if inline_args is not None and base_name != "lifted":
        inline = [arg.strip() for arg in inline_args.split(",") if arg.strip()]
        if params:
            raise CatalogError(f"Parameters for {base_name!r} given both inline and separately")
        params, named = [(f"p{i + 1}", value) for i, value in enumerate(inline)], False

    if base_name in _FIXED_PL or base_name in _FIXED_EXPRESSIONS:
        if params or inline_args:
            raise CatalogError(f"{base_name} takes no parameters, got {len(params) or inline_args!r}")
        if base_name in _FIXED_PL:
            return CatalogEntry(base_name, 1, (), _FIXED_PL[base_name])
        text, arity = _FIXED_EXPRESSIONS[base_name]
        return CatalogEntry(base_name, arity, (), parse_expr(text, arity))
    if base_name == "power":
        return _build_power(params, named)
    if base_name == "linear":
        return _build_linear(params, named)
    if base_name == "lifted":
        if not inline_args or not inline_args.strip():
            raise CatalogError("lifted needs a base name: lifted(<name>)")
        return _build_lifted(inline_args.strip(), params, named)
    raise CatalogError(f"Unknown catalog function {base_name!r}. Known: {', '.join(catalog_names())}")


def catalog_names() -> List[str]:
    return sorted(list(_FIXED_PL) + list(_FIXED_EXPRESSIONS) + ["power", "linear", "lifted"])


# Aggregation functions of the catalog with the parameters used by the
# property suites (name, parameters)
AGGREGATION_SAMPLES: Tuple[Tuple[str, Optional[Sequence[Any]]], ...] = (
    ("example1_A", None),
    ("example1_f", None),
    ("example1_g", None),
    ("power(2)", None),
    ("sqrt", None),
    ("linear", [2]),
    ("product_minus_one", None),
    ("skew_quad_strict", None),
    ("linear", [2, 3]),
    ("lifted(example1_A)", None),
)


def parse_param_flags(flags: Sequence[str]) -> Dict[str, str]:
    """Turn ["c=2", "p=0.5"] into {"c": "2", "p": "0.5"}."""
    parsed: Dict[str, str] = {}
    for flag in flags:
        key, sep, value = flag.partition("=")
        if not sep or not key.strip():
            raise CatalogError(f"Parameter must look like name=value, got {flag!r}")
        parsed[key.strip()] = value.strip()
    return parsed
