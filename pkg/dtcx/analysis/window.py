r"""
The effect of the analysis window on crystalline-fraction curves.

The model signal is :math:`S(N) = (-1)^N \exp(-N/N^*)` with a decay constant that depends on the pulse angle as a
Lorentzian,

.. math::

   N^*(\theta) = N^*_\pi \frac{w^2}{(\theta/\pi - 1)^2 + w^2}, \qquad N^*_\pi = 125, \quad w = 0.04.

Short windows see less of the decay, so their curves :math:`f(\theta)` are flatter near :math:`\theta = \pi`.
"""

import math
from typing import Any

import numpy as np

from dtcx.analysis.spectral import CrystallineFractionCurve
from dtcx.analysis.spectral import DiscreteSignal
from dtcx.analysis.spectral import Window
from dtcx.analysis.spectral import crystalline_fraction
from dtcx.utils.exceptions import InvalidArgumentError

PEAK_DECAY: float = 125.0
LORENTZIAN_WIDTH: float = 0.04
DEFAULT_CYCLES: int = 128


def n_star(theta: float, peak: float = PEAK_DECAY, width: float = LORENTZIAN_WIDTH) -> float:
    """
    The decay constant :math:`N^*(\\theta)` in cycles; ``peak`` may be infinite.

    :param float theta: the pulse angle in rad
    :param float peak: :math:`N^*` at :math:`\\theta = \\pi`
    :param float width: the half width :math:`w` in units of :math:`\\theta/\\pi`
    :return: the decay constant
    :rtype: float
    """
    if peak <= 0 or width <= 0:
        raise InvalidArgumentError("peak and width must be > 0")
    return peak * width ** 2 / ((theta / math.pi - 1.0) ** 2 + width ** 2)


def model_signal(theta: float, n_max: int = DEFAULT_CYCLES, peak: float = PEAK_DECAY,
                 width: float = LORENTZIAN_WIDTH) -> DiscreteSignal:
    """
    :math:`S(N) = (-1)^N \\exp(-N/N^*(\\theta))` for :math:`N = 1 \\ldots N_\\max`.
    """
    numbers = np.arange(1, n_max + 1)
    return DiscreteSignal((-1.0) ** numbers * np.exp(-numbers / n_star(theta, peak, width)))


def window_effect_model(theta_grid: Any, window: Window, n_max: int = DEFAULT_CYCLES, peak: float = PEAK_DECAY,
                        width: float = LORENTZIAN_WIDTH) -> CrystallineFractionCurve:
    """
    The crystalline fraction of the model signal at each angle of ``theta_grid``.

    :param theta_grid: the pulse angles in rad
    :param Window window: the analysis window, inside :math:`1 \\ldots N_\\max`
    :param int n_max: the length of the model signals
    :param float peak: :math:`N^*` at :math:`\\theta = \\pi`
    :param float width: the Lorentzian half width
    :return: the curve
    :rtype: CrystallineFractionCurve
    """
    theta = np.asarray(theta_grid, dtype=float)
    if theta.ndim != 1 or len(theta) == 0:
        raise InvalidArgumentError("theta_grid must be a nonempty one-dimensional grid")
    f = [crystalline_fraction(model_signal(t, n_max, peak, width), window) for t in theta]
    return CrystallineFractionCurve(theta, np.array(f), window)
