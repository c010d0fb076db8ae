"""
Checks on probabilities, multisets and time grids shared by the subpackages.
"""

from typing import Iterable
from typing import Sequence

import numpy as np

from dtcx.utils.exceptions import GridMismatchError
from dtcx.utils.exceptions import InvalidArgumentError


def normalize_probabilities(weights: Iterable[float]) -> list[float]:
    """
    Normalize the given weights and return a list of probabilities that sums to unity.

    :param Iterable[float] weights: the input weights, all positive
    :return: the normalized probabilities
    :rtype: list[float]
    """
    weights = list(weights)
    if not weights:
        raise InvalidArgumentError("weights must not be empty")
    weight_sum = sum(weights)
    probabilities: list[float] = []
    for weight in weights:
        if weight <= 0:
            raise InvalidArgumentError("weight must be positive")
        probabilities.append(weight / weight_sum)
    return probabilities


def check_probabilities(probabilities: Sequence[float], tolerance: float = 1.0e-9) -> None:
    """
    Raise when ``probabilities`` contains a negative entry or does not sum to one within ``tolerance``.

    :param Sequence[float] probabilities: the probabilities to check
    :param float tolerance: the allowed deviation of the sum from one
    """
    if any(p < 0 for p in probabilities):
        raise InvalidArgumentError("probabilities must be nonnegative")
    if abs(sum(probabilities) - 1.0) > tolerance:
        raise InvalidArgumentError("probabilities must sum to 1")


def multiset_equals(first: Sequence[float], second: Sequence[float], tolerance: float) -> bool:
    r"""
    Check whether two multisets of real numbers are equal within an absolute tolerance.

    Both collections are sorted and compared element-wise. The tolerance is scaled by the largest magnitude found in
    either collection, i.e. the comparison is :math:`|a_i - b_i| \le t \cdot \max(|a|, |b|)`. Two empty collections are
    equal.

    :param Sequence[float] first: the first multiset
    :param Sequence[float] second: the second multiset
    :param float tolerance: the relative tolerance
    :return: ``True`` if the multisets are equal, otherwise ``False``
    :rtype: bool
    """
    if len(first) != len(second):
        return False
    if len(first) == 0:
        return True
    a = np.sort(np.asarray(first, dtype=float))
    b = np.sort(np.asarray(second, dtype=float))
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return bool(np.all(np.abs(a - b) <= tolerance * scale))


def check_same_grid(t0: Sequence[float], dt: Sequence[float], lengths: Sequence[int]) -> None:
    """
    Raise :class:`GridMismatchError` unless all grids described by the parallel sequences are identical.
    """
    if len(set(lengths)) > 1:
        raise GridMismatchError("signals have different lengths")
    if len(set(dt)) > 1 or len(set(t0)) > 1:
        raise GridMismatchError("signals have different time grids")
