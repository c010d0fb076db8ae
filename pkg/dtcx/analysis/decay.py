r"""
Closed-form decay models of the DTC amplitude :math:`|S(N)|`.

Product of cosines
    :math:`\cos^N\epsilon`, the decay of a spin rotated by :math:`\pi + \epsilon` in every cycle when the
    interactions are negligible.
Phase transient
    :math:`[\cos^2\alpha \cos\epsilon - \sin^2\alpha]^N`, pulses whose leading and trailing edges rotate about an axis
    tilted by :math:`\pm\alpha`.
Inhomogeneity
    :math:`\sum_i p_i \cos^N(\epsilon_i + \epsilon)`, a distribution of angle errors across the sample.
Combined
    :math:`\sum_i p_i [\cos^2\alpha \cos(\epsilon_i + \epsilon) - \sin^2\alpha]^N`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional
from typing import Sequence

import numpy as np

from dtcx.analysis.spectral import DiscreteSignal
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.helper import check_probabilities


@dataclass(frozen=True, eq=False)
class AngleDistribution:
    """
    Angle errors :math:`\\epsilon_i` (rad) with probabilities :math:`p_i`.
    """
    angles: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        angles = np.asarray(self.angles, dtype=float)
        probabilities = np.asarray(self.probabilities, dtype=float)
        if angles.shape != probabilities.shape or angles.ndim != 1 or len(angles) == 0:
            raise InvalidArgumentError("angles and probabilities must be nonempty and of equal length")
        check_probabilities(probabilities.tolist())
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "probabilities", probabilities)

    @staticmethod
    def point(epsilon: float) -> AngleDistribution:
        """
        The distribution concentrated at ``epsilon``.
        """
        return AngleDistribution(np.array([epsilon]), np.array([1.0]))

    def to_rows(self) -> list[tuple[float, float]]:
        """
        ``(epsilon_rad, p)`` rows for CSV output.
        """
        return list(zip(self.angles.tolist(), self.probabilities.tolist()))


def _check_count(n: int) -> None:
    if n < 0:
        raise InvalidArgumentError("n must be >= 0")


def product_of_cosines(epsilon: float, n: int) -> float:
    """
    :math:`\\cos^N\\epsilon`.
    """
    _check_count(n)
    return math.cos(epsilon) ** n


def phase_transient_model(epsilon: float, transient_angle: float, n: int) -> float:
    """
    :math:`[\\cos^2\\alpha \\cos\\epsilon - \\sin^2\\alpha]^N` for a transient angle :math:`\\alpha` in rad.
    """
    _check_count(n)
    return (math.cos(transient_angle) ** 2 * math.cos(epsilon) - math.sin(transient_angle) ** 2) ** n


def inhomogeneity_model(distribution: AngleDistribution, epsilon_offset: float, n: int) -> float:
    """
    :math:`\\sum_i p_i \\cos^N(\\epsilon_i + \\epsilon)`.
    """
    _check_count(n)
    return float(np.sum(distribution.probabilities * np.cos(distribution.angles + epsilon_offset) ** n))


def combined_model(distribution: AngleDistribution, epsilon_offset: float, transient_angle: float, n: int) -> float:
    """
    The phase transient averaged over a distribution of angle errors.
    """
    _check_count(n)
    c2, s2 = math.cos(transient_angle) ** 2, math.sin(transient_angle) ** 2
    factors = c2 * np.cos(distribution.angles + epsilon_offset) - s2
    return float(np.sum(distribution.probabilities * factors ** n))


class DecayModel(enum.Enum):
    """
    The closed-form models.
    """
    PRODUCT_OF_COSINES = "product_of_cosines"
    PHASE_TRANSIENT = "phase_transient"
    INHOMOGENEITY = "inhomogeneity"
    COMBINED = "combined"


@dataclass(frozen=True)
class DecayModelParams:
    """
    A model with its parameters. ``distribution`` is required by the inhomogeneity and combined models.
    """
    model: DecayModel
    transient_angle: float = 0.0
    distribution: Optional[AngleDistribution] = None

    def __post_init__(self) -> None:
        needs = self.model in (DecayModel.INHOMOGENEITY, DecayModel.COMBINED)
        if needs and self.distribution is None:
            raise InvalidArgumentError(f"the {self.model.value} model needs a distribution")

    def evaluate(self, epsilon: float, n: int) -> float:
        """
        The amplitude after ``n`` cycles at angle error ``epsilon``.
        """
        if self.model is DecayModel.PRODUCT_OF_COSINES:
            return product_of_cosines(epsilon, n)
        if self.model is DecayModel.PHASE_TRANSIENT:
            return phase_transient_model(epsilon, self.transient_angle, n)
        if self.model is DecayModel.INHOMOGENEITY:
            return inhomogeneity_model(self.distribution, epsilon, n)
        return combined_model(self.distribution, epsilon, self.transient_angle, n)

    def curve(self, epsilon: float, numbers: Sequence[int]) -> np.ndarray:
        """
        The amplitudes at each cycle number.
        """
        return np.array([self.evaluate(epsilon, int(n)) for n in numbers])

    def signal(self, epsilon: float, n_max: int, period: float = 0.0) -> DiscreteSignal:
        """
        The alternating signal :math:`(-1)^N A(N)` for :math:`N = 1 \\ldots N_\\max`.
        """
        numbers = np.arange(1, n_max + 1)
        return DiscreteSignal((-1.0) ** numbers * self.curve(epsilon, numbers), period)
