r"""
Parsing of the physical literals accepted on the command line, in configuration files and as sequence bindings.

Grammar
-------
*Times*
    A decimal number followed by an optional unit among ``us``, ``ms`` and ``s``. Bare numbers are seconds, so that
    ``392.5us``, ``0.3925ms`` and ``3.925e-4`` denote the same duration.

*Angles*
    Either a number of radians, or a multiple of :math:`\pi` written as ``1.04pi``, ``pi``, ``-pi``, ``pi/2`` or
    ``3pi/4``. Multiples of :math:`\pi` are kept as exact fractions by :func:`parse_pi_multiple`.

*Ranges*
    ``start:stop:count`` is an inclusive evenly spaced grid of ``count`` values, ``a:b`` an inclusive integer range
    and ``x,y,z`` a list. The element grammar is one of the two above.
"""

import math
import re
from fractions import Fraction
from typing import Callable
from typing import Optional

import numpy as np

from dtcx.utils.exceptions import InvalidArgumentError


_UNSIGNED = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_TIME_PATTERN = re.compile(rf"^\s*([+-]?{_UNSIGNED})\s*(us|ms|s)?\s*$")
_PI_PATTERN = re.compile(rf"^\s*([+-]?)\s*({_UNSIGNED})?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$")
_TIME_UNITS: dict[str, float] = {"us": 1.0e-6, "ms": 1.0e-3, "s": 1.0}


def parse_time(text: str) -> float:
    """
    Parse a time literal and return its value in seconds.

    :param str text: the literal, e.g. ``392.5us``
    :return: the duration in seconds
    :rtype: float
    """
    match = _TIME_PATTERN.match(text)
    if match is None:
        raise InvalidArgumentError(f"invalid time literal '{text}'")
    return float(match.group(1)) * _TIME_UNITS[match.group(2) or "s"]


def parse_pi_multiple(text: str) -> Optional[Fraction]:
    """
    Parse an angle written as a multiple of pi and return the multiple as an exact fraction.

    Returns ``None`` when the literal does not mention pi.

    :param str text: the literal, e.g. ``1.04pi`` or ``pi/2``
    :return: the exact multiple of pi or ``None``
    :rtype: Optional[Fraction]
    """
    match = _PI_PATTERN.match(text)
    if match is None:
        if "pi" in text:
            raise InvalidArgumentError(f"invalid angle literal '{text}'")
        return None
    sign, coefficient, denominator = match.groups()
    value = Fraction(coefficient) if coefficient else Fraction(1)
    if denominator:
        if int(denominator) == 0:
            raise InvalidArgumentError(f"invalid angle literal '{text}'")
        value /= int(denominator)
    return -value if sign == "-" else value


def parse_angle(text: str) -> float:
    """
    Parse an angle literal and return its value in radians.

    :param str text: the literal, e.g. ``1.04pi`` or ``3.2672``
    :return: the angle in radians
    :rtype: float
    """
    multiple = parse_pi_multiple(text)
    if multiple is not None:
        return float(multiple) * math.pi
    try:
        return float(text)
    except ValueError as error:
        raise InvalidArgumentError(f"invalid angle literal '{text}'") from error


def parse_grid(text: str, element: Callable[[str], float]) -> list[float]:
    """
    Parse either an inclusive ``start:stop:count`` grid or a comma separated list of elements.

    :param str text: the literal
    :param element: the element parser (:func:`parse_time` or :func:`parse_angle`)
    :return: the values of the grid
    :rtype: list[float]
    """
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidArgumentError(f"invalid grid '{text}', expected start:stop:count")
        count = _parse_int(parts[2])
        if count < 1:
            raise InvalidArgumentError("grid count must be >= 1")
        return [float(v) for v in np.linspace(element(parts[0]), element(parts[1]), count)]
    values = [element(part) for part in text.split(",") if part.strip()]
    if not values:
        raise InvalidArgumentError("grid must not be empty")
    return values


def parse_int_range(text: str) -> tuple[int, int]:
    """
    Parse an inclusive integer range ``a:b``; a single integer ``n`` is the range ``n:n``.

    :param str text: the literal
    :return: the pair of bounds
    :rtype: tuple[int, int]
    """
    parts = text.split(":")
    if len(parts) == 1:
        value = _parse_int(parts[0])
        return value, value
    if len(parts) != 2:
        raise InvalidArgumentError(f"invalid range '{text}'")
    start, stop = _parse_int(parts[0]), _parse_int(parts[1])
    if stop < start:
        raise InvalidArgumentError(f"invalid range '{text}', stop < start")
    return start, stop


def parse_pair(text: str, element: Callable[[str], float] = float) -> tuple[float, float]:
    """
    Parse a comma separated pair such as an orientation ``60,0``.
    """
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidArgumentError(f"invalid pair '{text}'")
    try:
        return element(parts[0].strip()), element(parts[1].strip())
    except ValueError as error:
        raise InvalidArgumentError(f"invalid pair '{text}'") from error


def _parse_int(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError as error:
        raise InvalidArgumentError(f"invalid integer '{text}'") from error
