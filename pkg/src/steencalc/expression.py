"""
Expression grammar for classes and rational functions.

    formula    := expression EOF
    expression := [+-]? term ([+-] term)*
    term       := power ([*/] power)*
    power      := atom ('^' exponent)?
    atom       := number | name | '(' expression ')'

Line bundle sums use the same expressions: "O(h) + O(2*h)".
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Any

from arpeggio import (
    EOF,
    NoMatch,
    Optional,
    ParserPython,
    PTNodeVisitor,
    ZeroOrMore,
    visit_parse_tree,
)
from arpeggio import RegExMatch as _

from .chow_ring import CycleClass, RingSpec
from .errors import DomainError, ExpressionSyntaxError, UnknownGeneratorError

_LOGGER = logging.getLogger(__name__)


def number() -> Any:
    return _(r"\d+")


def name() -> Any:
    return _(r"[A-Za-z_][A-Za-z0-9_]*")


def add_op() -> Any:
    return _(r"[+-]")


def mul_op() -> Any:
    return _(r"[*/]")


def caret() -> Any:
    return _(r"\^")


def exponent() -> Any:
    return _(r"\d+")


def group() -> Any:
    return "(", expression, ")"


def atom() -> Any:
    return [number, name, group]


def power() -> Any:
    return atom, Optional(caret, exponent)


def term() -> Any:
    return power, ZeroOrMore(mul_op, power)


def expression() -> Any:
    return Optional(add_op), term, ZeroOrMore(add_op, term)


def formula() -> Any:
    return expression, EOF


def line_bundle() -> Any:
    return _(r"O\("), expression, ")"


def bundle_formula() -> Any:
    return line_bundle, ZeroOrMore("+", line_bundle), EOF


@lru_cache(maxsize=None)
def _parser(root: str) -> ParserPython:
    rules = {"formula": formula, "bundle_formula": bundle_formula}
    return ParserPython(rules[root], ignore_case=False)


class ExpressionAlgebra(ABC):
    """Where parsed expressions are evaluated: a ring of classes or a function field."""

    @abstractmethod
    def constant(self, value: int) -> Any:
        """Embed an integer."""

    @abstractmethod
    def variable(self, name: str, position: int) -> Any:
        """Value of a named symbol."""

    def divide(self, numerator: Any, denominator: Any, position: int) -> Any:
        raise ExpressionSyntaxError("'/' is not allowed here", position)


class CycleAlgebra(ExpressionAlgebra):
    """Expressions over the generators of a Chow ring."""

    def __init__(self, ring: RingSpec) -> None:
        self.ring = ring

    def constant(self, value: int) -> CycleClass:
        return CycleClass.constant(self.ring, value)

    def variable(self, name: str, position: int) -> CycleClass:
        if name not in self.ring.names:
            raise UnknownGeneratorError(name, position)
        return CycleClass.generator(self.ring, name)


class _Exponent(int):
    pass


class _Line:
    def __init__(self, value: Any) -> None:
        self.value = value


def _values(children: Any) -> list[Any]:
    return [c for c in children if not isinstance(c, str)]


class _Evaluator(PTNodeVisitor):
    def __init__(self, algebra: ExpressionAlgebra) -> None:
        super().__init__()
        self.algebra = algebra

    def visit_number(self, node: Any, children: Any) -> Any:
        return self.algebra.constant(int(node.value))

    def visit_name(self, node: Any, children: Any) -> Any:
        return self.algebra.variable(node.value, node.position)

    def visit_add_op(self, node: Any, children: Any) -> str:
        return str(node.value)

    def visit_mul_op(self, node: Any, children: Any) -> str:
        return str(node.value)

    def visit_caret(self, node: Any, children: Any) -> str:
        return "^"

    def visit_exponent(self, node: Any, children: Any) -> _Exponent:
        return _Exponent(int(node.value))

    def visit_group(self, node: Any, children: Any) -> Any:
        return _values(children)[0]

    def visit_power(self, node: Any, children: Any) -> Any:
        base = children[0]
        exponents = [c for c in children[1:] if isinstance(c, _Exponent)]
        return base ** int(exponents[0]) if exponents else base

    def visit_term(self, node: Any, children: Any) -> Any:
        items = list(children)
        value = items[0]
        for op, operand in zip(items[1::2], items[2::2], strict=True):
            if op == "*":
                value = value * operand
            else:
                value = self.algebra.divide(value, operand, node.position)
        return value

    def visit_expression(self, node: Any, children: Any) -> Any:
        items = list(children)
        sign = "+"
        if isinstance(items[0], str):
            sign = items.pop(0)
        value = -items[0] if sign == "-" else items[0]
        for op, operand in zip(items[1::2], items[2::2], strict=True):
            value = value + operand if op == "+" else value - operand
        return value

    def visit_formula(self, node: Any, children: Any) -> Any:
        return _values(children)[0]

    def visit_line_bundle(self, node: Any, children: Any) -> _Line:
        return _Line(_values(children)[0])

    def visit_bundle_formula(self, node: Any, children: Any) -> list[Any]:
        return [c.value for c in children if isinstance(c, _Line)]


def _parse(text: str, root: str) -> Any:
    parser = _parser(root)
    try:
        return parser.parse(text)
    except NoMatch as exc:
        line, col = parser.pos_to_linecol(exc.position)
        raise ExpressionSyntaxError(
            f"cannot parse {text!r} at position {exc.position}", exc.position, line, col
        ) from exc


def evaluate(text: str, algebra: ExpressionAlgebra) -> Any:
    """Parse `text` and evaluate it in `algebra`."""
    if not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    return visit_parse_tree(_parse(text, "formula"), _Evaluator(algebra))


def parse_expression(text: str, ring: RingSpec) -> CycleClass:
    """Normalized class of an expression over the ring's generators."""
    value = evaluate(text, CycleAlgebra(ring))
    _LOGGER.debug("parsed %r as %s", text, value)
    return value  # type: ignore[no-any-return]


def parse_line_bundles(text: str, ring: RingSpec) -> list[CycleClass]:
    """First Chern classes of a sum of line bundles "O(a) + O(b) + ..."; "0" is the zero bundle."""
    if text.strip() == "0":
        return []
    lines = visit_parse_tree(_parse(text, "bundle_formula"), _Evaluator(CycleAlgebra(ring)))
    for c1 in lines:
        if not c1.is_homogeneous(1):
            raise DomainError(f"O({c1}) needs a class of codimension 1")
    return list(lines)
