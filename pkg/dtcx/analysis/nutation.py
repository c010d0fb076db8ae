r"""
Distribution of the rf amplitude from nutation data.

A nutation signal decays both because the rf amplitude varies across the sample and because the homonuclear couplings
act during the pulse. The latter part is removed by dividing the nutation signal by a simulated Hahn-echo decay read at
half the time, :math:`\mathrm{nutation}(t) / \mathrm{hahn}(t/2)`.

The corrected signal is fitted with the transform of a sum of two Gaussian frequency densities,

.. math::

   S(t) = \sum_{k=1,2} A_k \cos(2\pi\nu_k t)\, e^{-2\pi^2\sigma_k^2 t^2},

and the density is turned into a distribution of angle errors :math:`\epsilon = \pi(\nu/\nu_\mathrm{peak} - 1)` of
nominal :math:`\pi` pulses.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from dtcx.analysis.decay import AngleDistribution
from dtcx.analysis.fitting import CurveModel
from dtcx.analysis.fitting import DEFAULT_STARTS
from dtcx.analysis.fitting import FitResult
from dtcx.lineshape.signals import TimeSeries
from dtcx.utils.exceptions import GridMismatchError
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.helper import normalize_probabilities

logger = logging.getLogger(__name__)

DIVISOR_FLOOR: float = 0.02
_PADDING = 16


@dataclass(frozen=True, eq=False)
class SampledCurve:
    """
    Samples at possibly irregular times, e.g. a corrected nutation signal with dropped points.
    """
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.shape != values.shape or times.ndim != 1:
            raise InvalidArgumentError("times and values must be one-dimensional of equal length")
        if np.any(np.diff(times) <= 0):
            raise InvalidArgumentError("times must increase")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.times)

    def to_rows(self) -> list[tuple[float, float]]:
        """
        ``(t_s, value)`` rows for CSV output.
        """
        return list(zip(self.times.tolist(), self.values.tolist()))

    @staticmethod
    def from_series(series: TimeSeries) -> SampledCurve:
        """
        The samples of a uniform series.
        """
        return SampledCurve(series.times(), series.values)


def nutation_correct(nutation: TimeSeries, hahn: TimeSeries, floor: float = DIVISOR_FLOOR) -> SampledCurve:
    """
    Divide a nutation signal by a Hahn-echo decay read at half the time.

    Samples where the divisor is smaller than ``floor`` times its initial magnitude are dropped.

    :param TimeSeries nutation: the nutation signal
    :param TimeSeries hahn: the simulated Hahn-echo decay, covering at least half the nutation time span
    :param float floor: the relative divisor floor
    :return: the corrected samples
    :rtype: SampledCurve
    """
    times = nutation.times()
    hahn_times = hahn.times()
    half = times / 2.0
    slack = 1e-9 * hahn.dt
    if half[0] < hahn_times[0] - slack or half[-1] > hahn_times[-1] + slack:
        raise GridMismatchError("the hahn decay does not cover half the nutation time span")
    divisor = np.interp(half, hahn_times, hahn.values)
    keep = np.abs(divisor) >= floor * abs(hahn.values[0])
    if not np.all(keep):
        logger.warning("dropped %d of %d nutation samples below the divisor floor", int(np.sum(~keep)), len(keep))
    return SampledCurve(times[keep], nutation.values[keep] / divisor[keep])


@dataclass(frozen=True)
class NutationComponent:
    """
    One Gaussian of the rf frequency density: weight, center (Hz) and standard deviation (Hz).
    """
    amplitude: float
    frequency: float
    sigma: float


class TwoGaussianNutationModel(CurveModel):
    """
    :math:`\\sum_k A_k \\cos(2\\pi\\nu_k t) \\exp(-2\\pi^2\\sigma_k^2 t^2)`.
    """
    name = "two_gaussian_nutation"
    parameter_names = ("A1", "nu1", "sigma1", "A2", "nu2", "sigma2")

    def evaluate(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        result = np.zeros_like(x)
        for a, nu, sigma in params.reshape(2, 3):
            result = result + a * np.cos(2.0 * math.pi * nu * x) * np.exp(-2.0 * math.pi ** 2 * sigma ** 2 * x ** 2)
        return result

    def initial_guess(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        dt = float(np.median(np.diff(x)))
        uniform = np.arange(x[0], x[-1] + dt / 2.0, dt)
        samples = np.interp(uniform, x, y)
        power = np.abs(np.fft.rfft(samples, n=_PADDING * len(samples)))
        frequencies = np.fft.rfftfreq(_PADDING * len(samples), dt)
        interior = np.nonzero((power[1:-1] > power[:-2]) & (power[1:-1] >= power[2:]))[0] + 1
        peaks = sorted(interior, key=lambda k: -power[k])[:2]
        while len(peaks) < 2:
            peaks.append(peaks[0] if peaks else int(np.argmax(power)))
        total = float(sum(power[k] for k in peaks)) or 1.0
        scale = float(y[0]) if y[0] != 0 else 1.0
        sigma = 1.0 / (2.0 * math.pi * max(float(x[-1] - x[0]), dt))
        guess = []
        for k in peaks:
            guess.extend([scale * power[k] / total, frequencies[k], 2.0 * sigma])
        return np.array(guess)

    def bounds(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        nyquist = 0.5 / float(np.median(np.diff(x)))
        lower = np.array([0.0, 0.0, 1e-6] * 2)
        upper = np.array([np.inf, nyquist, nyquist] * 2)
        return lower, upper


@dataclass(frozen=True, eq=False)
class H1Distribution:
    """
    The fitted two-Gaussian density of the nutation frequency, components ordered by decreasing amplitude.
    """
    components: tuple[NutationComponent, NutationComponent]
    fit: FitResult

    def density(self, frequencies: Any) -> np.ndarray:
        """
        The unnormalized density at ``frequencies`` (Hz).
        """
        nu = np.asarray(frequencies, dtype=float)
        result = np.zeros_like(nu)
        for c in self.components:
            if c.amplitude > 0:
                result = result + c.amplitude / c.sigma * np.exp(-(nu - c.frequency) ** 2 / (2.0 * c.sigma ** 2))
        return result

    def _support(self, bins: int) -> np.ndarray:
        active = [c for c in self.components if c.amplitude > 0]
        low = min(c.frequency - 4.0 * c.sigma for c in active)
        high = max(c.frequency + 4.0 * c.sigma for c in active)
        return np.linspace(max(low, 0.0), high, bins)

    def peak_frequency(self, bins: int = 4096) -> float:
        """
        The frequency where the density is largest.
        """
        grid = self._support(bins)
        return float(grid[np.argmax(self.density(grid))])

    def angle_distribution(self, bins: int = 64) -> AngleDistribution:
        """
        The density as a distribution of angle errors :math:`\\epsilon = \\pi(\\nu/\\nu_\\mathrm{peak} - 1)`.

        :param int bins: the number of angles
        :return: the distribution
        :rtype: AngleDistribution
        """
        if bins < 2:
            raise InvalidArgumentError("bins must be >= 2")
        grid = self._support(bins)
        weights = self.density(grid)
        positive = weights > 0
        peak = self.peak_frequency()
        return AngleDistribution(math.pi * (grid[positive] / peak - 1.0),
                                 np.array(normalize_probabilities(weights[positive].tolist())))

    def to_json(self) -> dict[str, Any]:
        """
        The components and the fit as a JSON document.
        """
        return {"components": [vars(c) for c in self.components], "fit": self.fit.to_json()}


def fit_h1_distribution(corrected: Any, seed: int = 0, starts: int = DEFAULT_STARTS,
                        merge_tolerance: float = 1e-3) -> H1Distribution:
    """
    Fit the two-Gaussian forward model to a corrected nutation signal.

    Components whose frequencies and widths agree within ``merge_tolerance`` (relative) are merged into one, leaving the
    second with zero amplitude.

    :param corrected: a :class:`SampledCurve` or :class:`TimeSeries`
    :param int seed: the seed of the start jitter
    :param int starts: the number of starts
    :param float merge_tolerance: the relative tolerance for merging components
    :return: the distribution
    :rtype: H1Distribution
    """
    curve = SampledCurve.from_series(corrected) if isinstance(corrected, TimeSeries) else corrected
    fit = TwoGaussianNutationModel().fit(curve.times, curve.values, seed, starts)
    first = NutationComponent(fit["A1"], fit["nu1"], fit["sigma1"])
    second = NutationComponent(fit["A2"], fit["nu2"], fit["sigma2"])
    scale = max(first.frequency, second.frequency, 1.0)
    if (abs(first.frequency - second.frequency) <= merge_tolerance * scale
            and abs(first.sigma - second.sigma) <= merge_tolerance * max(first.sigma, second.sigma)):
        first = NutationComponent(first.amplitude + second.amplitude, first.frequency, first.sigma)
        second = NutationComponent(0.0, second.frequency, second.sigma)
    ordered = sorted((first, second), key=lambda c: -c.amplitude)
    logger.info("nutation fit: %s", ", ".join(f"A={c.amplitude:.4g} nu={c.frequency:.6g} Hz "
                                                f"sigma={c.sigma:.4g} Hz" for c in ordered))
    return H1Distribution((ordered[0], ordered[1]), fit)
