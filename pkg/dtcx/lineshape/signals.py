"""
Uniformly sampled signals and spectra, and the pointwise operations that combine them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.helper import check_same_grid


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """
    Real samples ``values[k]`` taken at times ``t0 + k * dt`` (s).
    """
    t0: float
    dt: float
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise InvalidArgumentError("dt must be > 0")
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise InvalidArgumentError("values must be one-dimensional")
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("values must be finite")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def times(self) -> np.ndarray:
        """
        The sampling times in s.
        """
        return self.t0 + self.dt * np.arange(len(self.values))

    def to_rows(self) -> list[tuple[float, float]]:
        """
        ``(t_s, value)`` rows for CSV output.
        """
        return list(zip(self.times().tolist(), self.values.tolist()))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Complex amplitudes on a uniform frequency grid (Hz) symmetric about zero.

    ``dt`` is the sampling interval of the time-domain signal the spectrum was computed from; it fixes the inverse
    transform used for broadening.
    """
    frequencies: np.ndarray
    amplitudes: np.ndarray
    dt: float

    def __len__(self) -> int:
        return len(self.frequencies)

    def to_rows(self) -> list[tuple[float, float, float]]:
        """
        ``(freq_Hz, re, im)`` rows for CSV output.
        """
        return list(zip(self.frequencies.tolist(), self.amplitudes.real.tolist(), self.amplitudes.imag.tolist()))


def _check_grids(signals: Sequence[TimeSeries]) -> None:
    if not signals:
        raise InvalidArgumentError("signals must not be empty")
    check_same_grid([s.t0 for s in signals], [s.dt for s in signals], [len(s) for s in signals])


def four_origin_average(per_origin: Sequence[TimeSeries]) -> TimeSeries:
    """
    Pointwise arithmetic mean of the signals computed for the four possible central sites.

    :param Sequence[TimeSeries] per_origin: the signals, on identical grids
    :return: the mean signal
    :rtype: TimeSeries
    """
    _check_grids(per_origin)
    first = per_origin[0]
    return TimeSeries(first.t0, first.dt, np.mean([s.values for s in per_origin], axis=0))


def combine(signals: Sequence[TimeSeries]) -> TimeSeries:
    """
    Pointwise product of signals, used to combine the line shapes of independent interactions.

    :param Sequence[TimeSeries] signals: the signals, on identical grids
    :return: the product signal
    :rtype: TimeSeries
    """
    _check_grids(signals)
    first = signals[0]
    values = np.ones(len(first))
    for signal in signals:
        values = values * signal.values
    return TimeSeries(first.t0, first.dt, values)
