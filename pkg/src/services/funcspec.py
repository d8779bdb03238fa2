"""
Function specifications: a small arithmetic expression language, a 1-D
piecewise-linear format and the lifted n-dimensional construction.

Grammar (EBNF):
    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' factor)?
    atom   := number | 'x'digits | '(' expr ')'
            | ('min'|'max') '(' expr ',' expr ')' | '-' factor

'^' is right-associative and binds tighter than unary minus, so "-x1^2"
is -(x1^2). Constants are kept as exact rationals; evaluation runs either
on Fractions (exact=True) or on floats.
"""
import bisect
import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

from src.utils.errors import (
    AddilopeError,
    EvaluationDomainError,
    ExactArithmeticError,
    ExpressionSyntaxError,
    VariableIndexError,
)

logger = logging.getLogger(__name__)

Number = Union[Fraction, float]


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class MinMax:
    op: str  # min | max
    left: "Node"
    right: "Node"


Node = Union[Const, Var, Neg, BinOp, MinMax]


@dataclass(frozen=True)
class FuncExpr:
    root: Node
    arity: int
    source: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise AddilopeError(f"Arity must be at least 1, got {self.arity}")
        for index in _variables(self.root):
            if not 1 <= index <= self.arity:
                raise VariableIndexError(index, self.arity)


@dataclass(frozen=True)
class PL1DSpec:
    knots: Tuple[Tuple[Fraction, Fraction], ...]
    tail_slope: Fraction

    arity = 1

    def __post_init__(self) -> None:
        if not self.knots:
            raise AddilopeError("Piecewise-linear spec needs at least one knot")
        if self.knots[0][0] != 0:
            raise AddilopeError("First knot must lie at x = 0")
        for (x0, _), (x1, _) in zip(self.knots, self.knots[1:]):
            if x1 <= x0:
                raise AddilopeError(f"Knots must be strictly increasing in x ({x0} then {x1})")
        if any(y < 0 for _, y in self.knots):
            raise AddilopeError("Knot values must be non-negative")
        if self.tail_slope < 0:
            raise AddilopeError("tail_slope must be non-negative")


@dataclass(frozen=True)
class LiftedSpec:
    """base(x1) + x2 + ... + xn."""
    base: Union[FuncExpr, PL1DSpec]
    arity: int

    def __post_init__(self) -> None:
        if self.base.arity != 1:
            raise AddilopeError("Lifted construction needs a one-dimensional base")
        if self.arity < 1:
            raise AddilopeError(f"Arity must be at least 1, got {self.arity}")


FuncSpec = Union[FuncExpr, PL1DSpec, LiftedSpec]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<var>x\d+)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^(),])"
    r")"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens: List[Tuple[str, str, int]] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_RE.match(text, position)
        if match is None or match.end() == position:
            offset = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ExpressionSyntaxError(f"Unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup
        token_text = match.group(kind)
        tokens.append((kind, token_text, match.start(kind)))
        position = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> Tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, text: str) -> None:
        kind, token_text, position = self.current
        if kind != "op" or token_text != text:
            found = token_text or "end of input"
            raise ExpressionSyntaxError(f"Expected {text!r} but found {found!r}", position)
        self.advance()

    def parse(self) -> Node:
        node = self.expr()
        kind, token_text, position = self.current
        if kind != "end":
            raise ExpressionSyntaxError(f"Unexpected token {token_text!r}", position)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current[0] == "op" and self.current[1] in "+-":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.current[0] == "op" and self.current[1] in "*/":
            op = self.advance()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        kind, token_text, _ = self.current
        if kind == "op" and token_text == "-":
            self.advance()
            return Neg(self.factor())
        base = self.atom()
        if self.current[0] == "op" and self.current[1] == "^":
            self.advance()
            return BinOp("^", base, self.factor())
        return base

    def atom(self) -> Node:
        kind, token_text, position = self.advance()
        if kind == "number":
            return Const(Fraction(token_text))
        if kind == "var":
            return Var(int(token_text[1:]))
        if kind == "name":
            if token_text not in ("min", "max"):
                raise ExpressionSyntaxError(f"Unknown function {token_text!r}", position)
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return MinMax(token_text, left, right)
        if kind == "op" and token_text == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "op" and token_text == "-":
            return Neg(self.factor())
        found = token_text or "end of input"
        raise ExpressionSyntaxError(f"Unexpected token {found!r}", position)


def parse_expr(text: str, arity: int) -> FuncExpr:
    """
    Parse an expression over the variables x1..x<arity>.

    Args:
        text: Expression source.
        arity: Number of variables.

    Returns:
        FuncExpr: Parsed expression tree.

    Raises:
        ExpressionSyntaxError: On malformed input (with 0-based position).
        VariableIndexError: When a variable index exceeds the arity.
    """
    if not text or not text.strip():
        raise ExpressionSyntaxError("Empty expression", 0)
    root = _Parser(text).parse()
    return FuncExpr(root=root, arity=arity, source=text)


def _variables(node: Node):
    if isinstance(node, Var):
        yield node.index
    elif isinstance(node, Neg):
        yield from _variables(node.operand)
    elif isinstance(node, (BinOp, MinMax)):
        yield from _variables(node.left)
        yield from _variables(node.right)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def _format_const(value: Fraction) -> str:
    denominator = value.denominator
    twos = fives = 0
    while denominator % 2 == 0:
        denominator //= 2
        twos += 1
    while denominator % 5 == 0:
        denominator //= 5
        fives += 1
    if denominator != 1:
        return f"({value.numerator}/{value.denominator})"
    digits = max(twos, fives)
    if digits == 0:
        return str(value.numerator)
    scaled = str(value.numerator * 10 ** digits // value.denominator).rjust(digits + 1, "0")
    return f"{scaled[:-digits]}.{scaled[-digits:]}"


def _format_node(node: Node) -> str:
    if isinstance(node, Const):
        return _format_const(node.value)
    if isinstance(node, Var):
        return f"x{node.index}"
    if isinstance(node, Neg):
        return f"-({_format_node(node.operand)})"
    if isinstance(node, MinMax):
        return f"{node.op}({_format_node(node.left)}, {_format_node(node.right)})"
    return f"({_format_node(node.left)} {node.op} {_format_node(node.right)})"


def format_expr(expr: FuncExpr) -> str:
    """Print an expression so that parse_expr(format_expr(e)) evaluates identically."""
    return _format_node(expr.root)


def is_rational_expr(expr: FuncExpr) -> bool:
    """True when every power has an integer constant exponent."""
    def check(node: Node) -> bool:
        if isinstance(node, (Const, Var)):
            return True
        if isinstance(node, Neg):
            return check(node.operand)
        if isinstance(node, BinOp) and node.op == "^":
            exponent = node.right
            if isinstance(exponent, Neg):
                exponent = exponent.operand
            if not isinstance(exponent, Const) or exponent.value.denominator != 1:
                return False
        return check(node.left) and check(node.right)
    return check(expr.root)


def is_rational_spec(spec: FuncSpec) -> bool:
    if isinstance(spec, PL1DSpec):
        return True
    if isinstance(spec, LiftedSpec):
        return is_rational_spec(spec.base)
    return is_rational_expr(spec)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _eval_node(node: Node, point: Sequence[Number], exact: bool) -> Number:
    if isinstance(node, Const):
        if exact:
            return node.value
        try:
            return float(node.value)
        except OverflowError:
            raise EvaluationDomainError(f"Constant {node.value} overflows a float", point)
    if isinstance(node, Var):
        return point[node.index - 1]
    if isinstance(node, Neg):
        return -_eval_node(node.operand, point, exact)
    left = _eval_node(node.left, point, exact)
    right = _eval_node(node.right, point, exact)
    if isinstance(node, MinMax):
        return min(left, right) if node.op == "min" else max(left, right)
    if node.op == "^":
        return _power(left, right, point, exact)
    if node.op == "+":
        result = left + right
    elif node.op == "-":
        result = left - right
    elif node.op == "*":
        result = left * right
    else:
        if right == 0:
            raise EvaluationDomainError("Division by zero", point)
        result = left / right
    # float ops saturate to inf instead of raising
    if not exact and math.isinf(result):
        raise EvaluationDomainError("Overflow", point)
    return result


def _power(base: Number, exponent: Number, point: Sequence[Number], exact: bool) -> Number:
    if base == 0 and exponent < 0:
        raise EvaluationDomainError("Zero raised to a negative power", point)
    if exact:
        if Fraction(exponent).denominator != 1:
            raise ExactArithmeticError(f"Non-integer exponent {exponent} has no exact rational value")
        return base ** int(exponent)
    if float(exponent).is_integer():
        exponent = int(exponent)
    elif base < 0:
        raise EvaluationDomainError("Negative base with non-integer exponent", point)
    try:
        return float(base) ** exponent
    except OverflowError:
        raise EvaluationDomainError("Overflow in power", point)


def _eval_pl(spec: PL1DSpec, x: Fraction) -> Fraction:
    xs = [k[0] for k in spec.knots]
    position = bisect.bisect_left(xs, x)
    if position < len(xs) and xs[position] == x:
        return spec.knots[position][1]
    if position == len(xs):
        last_x, last_y = spec.knots[-1]
        return last_y + spec.tail_slope * (x - last_x)
    (x0, y0), (x1, y1) = spec.knots[position - 1], spec.knots[position]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def _to_number(value: Any, exact: bool) -> Number:
    if exact:
        return value if isinstance(value, Fraction) else Fraction(value)
    return float(value)


def evaluate(spec: FuncSpec, point: Sequence[Any], exact: bool = False) -> Number:
    """
    Evaluate a function specification at a point of [0, inf)^n.

    Args:
        spec: Expression, piecewise-linear or lifted specification.
        point: Coordinates (ints, floats or Fractions).
        exact: Evaluate on Fractions instead of floats.

    Returns:
        Non-negative Fraction (exact) or float.

    Raises:
        EvaluationDomainError: Negative result, division by zero, bad power.
        ExactArithmeticError: Non-rational operation on the exact path.
    """
    if len(point) != spec.arity:
        raise AddilopeError(f"Point has {len(point)} coordinates, function arity is {spec.arity}")
    coords = tuple(_to_number(c, exact) for c in point)
    if any(c < 0 for c in coords):
        raise EvaluationDomainError("Point outside [0, inf)^n", coords)

    if isinstance(spec, PL1DSpec):
        value = _eval_pl(spec, Fraction(coords[0]))
        result: Number = value if exact else float(value)
    elif isinstance(spec, LiftedSpec):
        result = evaluate(spec.base, coords[:1], exact) + sum(coords[1:], _to_number(0, exact))
    else:
        result = _eval_node(spec.root, coords, exact)
        if isinstance(result, complex):
            raise EvaluationDomainError("Complex result", coords)
        if not exact and isinstance(result, int):
            result = float(result)

    if not exact and math.isnan(result):
        raise EvaluationDomainError("Result is not a number", coords)
    if not exact and math.isinf(result):
        raise EvaluationDomainError("Overflow", coords)
    if result < 0:
        raise EvaluationDomainError(f"Negative value {result}", coords)
    return result


# ---------------------------------------------------------------------------
# PL spec documents
# ---------------------------------------------------------------------------

def _parse_rational(raw: Any, what: str) -> Fraction:
    if isinstance(raw, bool):
        raise AddilopeError(f"Invalid number for {what}: {raw!r}")
    if isinstance(raw, (list, tuple)):
        if len(raw) != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
            raise AddilopeError(f"Rational pair for {what} must be [num, den] integers, got {raw!r}")
        if raw[1] == 0:
            raise AddilopeError(f"Zero denominator for {what}")
        return Fraction(raw[0], raw[1])
    if isinstance(raw, (int, float)):
        return Fraction(str(raw))
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise AddilopeError(f"Invalid number for {what}: {raw!r}")
    raise AddilopeError(f"Invalid number for {what}: {raw!r}")


def load_pl_spec(document: Dict[str, Any]) -> PL1DSpec:
    """
    Build a PL1DSpec from its JSON form {"knots": [[x, y], ...], "tail_slope": s}.

    Numbers may be decimal strings, JSON numbers or [num, den] integer pairs.
    """
    if not isinstance(document, dict):
        raise AddilopeError("Piecewise-linear spec must be a JSON object")
    if "knots" not in document:
        raise AddilopeError("Piecewise-linear spec is missing 'knots'")
    raw_knots = document["knots"]
    if not isinstance(raw_knots, list):
        raise AddilopeError("'knots' must be a list of [x, y] pairs")
    knots = []
    for position, knot in enumerate(raw_knots):
        if not isinstance(knot, (list, tuple)) or len(knot) != 2:
            raise AddilopeError(f"Knot {position} must be an [x, y] pair")
        knots.append((
            _parse_rational(knot[0], f"knot {position} x"),
            _parse_rational(knot[1], f"knot {position} y"),
        ))
    tail_slope = _parse_rational(document.get("tail_slope", 0), "tail_slope")
    return PL1DSpec(knots=tuple(knots), tail_slope=tail_slope)


def dump_pl_spec(spec: PL1DSpec) -> Dict[str, Any]:
    return {
        "knots": [[str(x), str(y)] for x, y in spec.knots],
        "tail_slope": str(spec.tail_slope),
    }


def describe(spec: FuncSpec) -> str:
    """Short human-readable description used in logs and reports."""
    if isinstance(spec, PL1DSpec):
        knots = ", ".join(f"({x}, {y})" for x, y in spec.knots)
        return f"PL[{knots}; tail {spec.tail_slope}]"
    if isinstance(spec, LiftedSpec):
        rest = " + ".join(f"x{i}" for i in range(2, spec.arity + 1))
        base = describe(spec.base)
        return f"{base}(x1) + {rest}" if rest else base
    return spec.source or format_expr(spec)
