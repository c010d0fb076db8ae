r"""
Angle expressions of pulse sequences.

An angle expression is built from numbers, ``pi``, symbols and the operators ``+ - * /`` with parentheses, e.g.
``pi/2``, ``pi+eps`` or ``2*theta``. Values are kept as multiples of :math:`\pi` with exact :class:`fractions.Fraction`
coefficients as long as every ingredient is exact, so that ``pi`` evaluates to exactly :data:`math.pi` and
``pi+eps`` with ``eps = 0.04pi`` to exactly :math:`1.04\pi`.

Symbols denote angles. They are bound either to angle literals (``"0.04pi"``, exact) or to floats in radians.
An expression whose value is a plain number (no ``pi``, no symbol) is read as radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any
from typing import Mapping
from typing import Union

from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.exceptions import UnboundSymbolError
from dtcx.utils.literals import parse_angle
from dtcx.utils.literals import parse_pi_multiple

Scalar = Union[Fraction, float]

_PRECEDENCE: dict[str, int] = {"+": 1, "-": 1, "*": 2, "/": 2}


@dataclass(frozen=True)
class Quantity:
    """
    An intermediate value ``value * pi**power`` with ``power`` 0 (number) or 1 (angle).
    """
    value: Scalar
    power: int

    def radians(self) -> float:
        """
        The value in radians.
        """
        return float(self.value) * math.pi ** self.power

    def multiple_of_pi(self) -> Scalar:
        """
        The value as a multiple of pi.
        """
        if self.power == 1:
            return self.value
        return float(self.value) / math.pi


class Expr:
    """
    Base class of the expression tree nodes.
    """

    def evaluate(self, bindings: Mapping[str, Any]) -> Quantity:
        """
        Evaluate the node under ``bindings``.
        """
        raise NotImplementedError

    def symbols(self) -> set[str]:
        """
        The symbols referenced by the node.
        """
        return set()

    def precedence(self) -> int:
        """
        The binding strength of the node when printed.
        """
        return 3


@dataclass(frozen=True)
class Number(Expr):
    """
    A numeric literal, kept as written.
    """
    text: str

    def evaluate(self, bindings: Mapping[str, Any]) -> Quantity:
        return Quantity(Fraction(self.text), 0)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Pi(Expr):
    """
    The constant pi.
    """

    def evaluate(self, bindings: Mapping[str, Any]) -> Quantity:
        return Quantity(Fraction(1), 1)

    def __str__(self) -> str:
        return "pi"


@dataclass(frozen=True)
class Symbol(Expr):
    """
    A named angle bound at expansion.
    """
    name: str

    def evaluate(self, bindings: Mapping[str, Any]) -> Quantity:
        if self.name not in bindings:
            raise UnboundSymbolError(self.name)
        return angle_quantity(bindings[self.name])

    def symbols(self) -> set[str]:
        return {self.name}

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Negate(Expr):
    """
    Unary minus.
    """
    operand: Expr

    def evaluate(self, bindings: Mapping[str, Any]) -> Quantity:
        q = self.operand.evaluate(bindings)
        return Quantity(-q.value, q.power)

    def symbols(self) -> set[str]:
        return self.operand.symbols()

    def __str__(self) -> str:
        inner = str(self.operand)
        return f"-({inner})" if self.operand.precedence() < 3 else f"-{inner}"


@dataclass(frozen=True)
class BinaryOp(Expr):
    """
    A binary arithmetic operation.
    """
    op: str
    left: Expr
    right: Expr

    def evaluate(self, bindings: Mapping[str, Any]) -> Quantity:
        a = self.left.evaluate(bindings)
        b = self.right.evaluate(bindings)
        if self.op in "+-":
            if a.power != b.power:
                raise InvalidArgumentError(f"cannot combine an angle and a number in '{self}'")
            return Quantity(a.value + b.value if self.op == "+" else a.value - b.value, a.power)
        if self.op == "*":
            if a.power + b.power > 1:
                raise InvalidArgumentError(f"cannot multiply two angles in '{self}'")
            return Quantity(a.value * b.value, a.power + b.power)
        if b.power != 0:
            raise InvalidArgumentError(f"cannot divide by an angle in '{self}'")
        if b.value == 0:
            raise InvalidArgumentError(f"division by zero in '{self}'")
        return Quantity(a.value / b.value, a.power)

    def symbols(self) -> set[str]:
        return self.left.symbols() | self.right.symbols()

    def precedence(self) -> int:
        return _PRECEDENCE[self.op]

    def __str__(self) -> str:
        left = str(self.left)
        right = str(self.right)
        if self.left.precedence() < self.precedence():
            left = f"({left})"
        if self.right.precedence() <= self.precedence():
            right = f"({right})"
        return f"{left}{self.op}{right}"


def angle_quantity(value: Any) -> Quantity:
    """
    Convert a binding to an angle quantity: literals go through :func:`dtcx.utils.literals.parse_pi_multiple`,
    numbers are radians.
    """
    if isinstance(value, Quantity):
        return value
    if isinstance(value, str):
        multiple = parse_pi_multiple(value)
        if multiple is not None:
            return Quantity(multiple, 1)
        value = parse_angle(value)
    if isinstance(value, (int, float)):
        return Quantity(float(value) / math.pi, 1)
    raise InvalidArgumentError(f"invalid angle binding {value!r}")


def evaluate_angle(expr: Expr, bindings: Mapping[str, Any]) -> tuple[float, Scalar]:
    """
    Evaluate an angle expression.

    :param Expr expr: the expression
    :param Mapping[str, Any] bindings: the symbol bindings
    :return: the angle in radians and as a multiple of pi (exact when possible)
    :rtype: tuple[float, Scalar]
    """
    quantity = expr.evaluate(bindings)
    return quantity.radians(), quantity.multiple_of_pi()
