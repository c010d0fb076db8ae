r"""
Discrete-time signals :math:`S(N)` and their windowed Fourier analysis.

For a window :math:`N_s \ldots N_e` of length :math:`M_w` the transform is

.. math::

   S(\tilde\nu_k) = \sum_{N=N_s}^{N_e} S(N)\, e^{-2\pi i k (N - N_s) / M_w}, \qquad \tilde\nu_k = k / M_w

with :math:`k = 0 \ldots M_w - 1`, and the crystalline fraction is the share of the power at :math:`\tilde\nu = 1/2`,

.. math::

   f = |S(\tilde\nu = 1/2)|^2 \Big/ \sum_{\tilde\nu} |S(\tilde\nu)|^2

summed over every bin, the zero-frequency bin included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.exceptions import OffGridFrequencyError

Window = tuple[int, int]


@dataclass(frozen=True, eq=False)
class DiscreteSignal:
    """
    Values :math:`S(N)` for :math:`N = 1 \\ldots M` of a sequence with cycle period ``period`` (s).
    """
    values: np.ndarray
    period: float = 0.0

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or len(values) < 2:
            raise InvalidArgumentError("a discrete signal needs at least 2 values")
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("values must be finite")
        if self.period < 0:
            raise InvalidArgumentError("period must be >= 0")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def numbers(self) -> np.ndarray:
        """
        The cycle numbers :math:`1 \\ldots M`.
        """
        return np.arange(1, len(self.values) + 1)

    def to_rows(self) -> list[tuple[int, float, float]]:
        """
        ``(N, t_s, S)`` rows for CSV output.
        """
        numbers = self.numbers()
        return list(zip(numbers.tolist(), (numbers * self.period).tolist(), self.values.tolist()))

    def window(self, window: Window = None) -> np.ndarray:
        """
        The values of cycles :math:`N_s \\ldots N_e`, the whole signal by default.
        """
        start, end = window or (1, len(self.values))
        if not 1 <= start <= end <= len(self.values):
            raise InvalidArgumentError(f"invalid window {start}:{end} for a signal of length {len(self.values)}")
        return self.values[start - 1:end]


def dft(sig: DiscreteSignal, window: Window = None) -> tuple[np.ndarray, np.ndarray]:
    """
    The windowed transform of a signal.

    :param DiscreteSignal sig: the signal
    :param Window window: ``(N_start, N_end)``, inclusive and 1-based; the whole signal by default
    :return: the grid :math:`\\tilde\\nu_k` and the complex amplitudes
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    samples = sig.window(window)
    return np.arange(len(samples)) / len(samples), np.fft.fft(samples)


def crystalline_fraction(sig: DiscreteSignal, window: Window = None) -> float:
    """
    The fraction of the power of the windowed transform at :math:`\\tilde\\nu = 1/2`.

    :param DiscreteSignal sig: the signal
    :param Window window: the window; its length must be even
    :return: :math:`f` in :math:`[0, 1]`, ``0`` for an identically zero signal
    :rtype: float
    """
    _, amplitudes = dft(sig, window)
    if len(amplitudes) % 2:
        raise OffGridFrequencyError(f"window length {len(amplitudes)} is odd, so 1/2 is not on the grid")
    power = np.abs(amplitudes) ** 2
    total = float(np.sum(power))
    if total == 0:
        return 0.0
    return min(1.0, float(power[len(power) // 2]) / total)


def time_to_half(sig: DiscreteSignal, level: float = 0.5) -> Optional[int]:
    """
    The first cycle at which :math:`|S(N)|` drops below ``level``, or ``None`` if it never does.
    """
    below = np.nonzero(np.abs(sig.values) < level)[0]
    return int(below[0]) + 1 if len(below) else None


@dataclass(frozen=True, eq=False)
class CrystallineFractionCurve:
    """
    Crystalline fractions ``f`` at pulse angles ``theta`` (rad), computed over ``window`` at delay ``tau`` (s, ``None``
    for model curves).
    """
    theta: np.ndarray
    f: np.ndarray
    window: Window
    tau: Optional[float] = None

    def __post_init__(self) -> None:
        theta = np.asarray(self.theta, dtype=float)
        f = np.asarray(self.f, dtype=float)
        if theta.shape != f.shape or theta.ndim != 1:
            raise InvalidArgumentError("theta and f must be one-dimensional of equal length")
        if np.any(f < 0) or np.any(f > 1):
            raise InvalidArgumentError("crystalline fractions must lie in [0, 1]")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "f", f)

    def __len__(self) -> int:
        return len(self.theta)

    def to_rows(self) -> list[tuple[float, float]]:
        """
        ``(theta_rad, f)`` rows for CSV output.
        """
        return list(zip(self.theta.tolist(), self.f.tolist()))
