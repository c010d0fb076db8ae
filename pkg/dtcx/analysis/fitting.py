r"""
Least-squares fits of crystalline-fraction curves and DTC boundaries.

Models
------
Gaussian
    :math:`F(\theta) = A \exp[-(\theta - \theta_0)^2 / 2\sigma^2]`
Super-Gaussian
    :math:`F(\theta) = A \exp[-(|\theta - \theta_0| / \sigma)^p / 2]` with :math:`\theta_0` fixed, usually from a prior
    Gaussian fit; :math:`p = 2` is the Gaussian.
Lorentzian
    :math:`F(x) = A w^2 / [(x - x_0)^2 + w^2]`

Every fit runs :func:`scipy.optimize.least_squares` from several starts: the model's own guess and jittered copies of
it drawn from a seeded generator, so results are reproducible. The best start wins. A fit has converged when its best
start stopped on a tolerance rather than on the evaluation limit.
"""

from __future__ import annotations

import abc
import logging
import math
from dataclasses import dataclass
from typing import Any
from typing import Optional

import numpy as np
from scipy.optimize import least_squares

from dtcx.utils.exceptions import FitConvergenceError
from dtcx.utils.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

DEFAULT_STARTS: int = 8
MAX_EVALUATIONS: int = 500
FTOL: float = 1e-10


@dataclass(frozen=True)
class FitResult:
    """
    The outcome of a fit: parameters by name, the rms residual, convergence and the number of starts.
    """
    model: str
    params: dict[str, float]
    residual: float
    converged: bool
    starts: int

    def __getitem__(self, name: str) -> float:
        return self.params[name]

    def require_converged(self) -> FitResult:
        """
        Raise :class:`FitConvergenceError` unless the fit converged.

        :return: this result
        :rtype: FitResult
        """
        if not self.converged:
            raise FitConvergenceError(f"{self.model} fit did not converge", self.residual)
        return self

    def to_json(self) -> dict[str, Any]:
        """
        The result as a JSON document.
        """
        return {"model": self.model, "params": dict(self.params), "residual": self.residual,
                "converged": self.converged, "starts": self.starts}


class CurveModel(abc.ABC):
    """
    A parametric curve that can be fitted to samples.
    """
    name: str = ""
    parameter_names: tuple[str, ...] = ()

    @abc.abstractmethod
    def evaluate(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        """
        The model at ``x`` for the free parameters ``params``.
        """

    @abc.abstractmethod
    def initial_guess(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """
        A starting point derived from the samples.
        """

    @abc.abstractmethod
    def bounds(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        Lower and upper bounds of the free parameters.
        """

    def fixed(self) -> dict[str, float]:
        """
        Parameters held fixed, reported with the result.
        """
        return {}

    def fit(self, x: Any, y: Any, seed: int = 0, starts: int = DEFAULT_STARTS) -> FitResult:
        """
        Fit the model to samples.

        :param x: the abscissae
        :param y: the samples
        :param int seed: the seed of the start jitter
        :param int starts: the number of starts
        :return: the best fit
        :rtype: FitResult
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise InvalidArgumentError("x and y must be one-dimensional of equal length")
        if len(x) < max(4, len(self.parameter_names)):
            raise InvalidArgumentError(f"{self.name} fit needs at least {max(4, len(self.parameter_names))} samples")
        if starts < 1:
            raise InvalidArgumentError("starts must be >= 1")
        lower, upper = self.bounds(x, y)
        guess = np.clip(self.initial_guess(x, y), lower, upper)
        rng = np.random.default_rng(seed)
        best = None
        for k in range(starts):
            x0 = guess if k == 0 else guess * (1.0 + 0.2 * rng.standard_normal(len(guess)))
            x0 = np.clip(x0, lower, upper)
            result = least_squares(lambda p: self.evaluate(x, p) - y, x0, bounds=(lower, upper), method="trf",
                                   ftol=FTOL, xtol=1e-12, gtol=1e-12, max_nfev=MAX_EVALUATIONS)
            logger.debug("%s start %d: cost %.3e status %d", self.name, k, result.cost, result.status)
            if best is None or result.cost < best.cost:
                best = result
        residual = math.sqrt(2.0 * best.cost / len(x))
        params = dict(zip(self.parameter_names, (float(v) for v in best.x)))
        params.update(self.fixed())
        fit = FitResult(self.name, params, residual, bool(best.status > 0), starts)
        if not fit.converged:
            logger.warning("%s fit did not converge (rms residual %.3e)", self.name, residual)
        return fit


def _spread(x: np.ndarray, y: np.ndarray, center: float) -> float:
    weights = np.clip(y, 0.0, None)
    total = float(np.sum(weights))
    if total > 0:
        spread = math.sqrt(float(np.sum(weights * (x - center) ** 2)) / total)
        if spread > 0:
            return spread
    return max(float(np.ptp(x)) / 4.0, 1e-12)


class GaussianModel(CurveModel):
    """
    :math:`A \\exp[-(\\theta - \\theta_0)^2 / 2\\sigma^2]`.
    """
    name = "gaussian"
    parameter_names = ("A", "theta0", "sigma")

    def evaluate(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        a, theta0, sigma = params
        return a * np.exp(-(x - theta0) ** 2 / (2.0 * sigma ** 2))

    def initial_guess(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        center = float(x[np.argmax(y)])
        return np.array([max(float(np.max(y)), 1e-12), center, _spread(x, y, center)])

    def bounds(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        span = float(np.ptp(x)) or 1.0
        return (np.array([0.0, float(np.min(x)) - span, 1e-12 * span]),
                np.array([np.inf, float(np.max(x)) + span, np.inf]))


class SuperGaussianModel(CurveModel):
    """
    :math:`A \\exp[-(|\\theta - \\theta_0| / \\sigma)^p / 2]` with :math:`\\theta_0` fixed and
    :math:`0.5 \\le p \\le 20`.
    """
    name = "super_gaussian"
    parameter_names = ("A", "sigma", "p")

    def __init__(self, theta0: float) -> None:
        """
        :param float theta0: the fixed center
        """
        self.__theta0 = theta0

    def fixed(self) -> dict[str, float]:
        return {"theta0": self.__theta0}

    def evaluate(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        a, sigma, p = params
        return a * np.exp(-(np.abs(x - self.__theta0) / sigma) ** p / 2.0)

    def initial_guess(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.array([max(float(np.max(y)), 1e-12), _spread(x, y, self.__theta0), 2.0])

    def bounds(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        span = float(np.ptp(x)) or 1.0
        return np.array([0.0, 1e-12 * span, 0.5]), np.array([np.inf, np.inf, 20.0])


class LorentzianModel(CurveModel):
    """
    :math:`A w^2 / [(x - x_0)^2 + w^2]`.
    """
    name = "lorentzian"
    parameter_names = ("A", "x0", "w")

    def evaluate(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        a, x0, w = params
        return a * w ** 2 / ((x - x0) ** 2 + w ** 2)

    def initial_guess(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        center = float(x[np.argmax(y)])
        return np.array([max(float(np.max(y)), 1e-12), center, _spread(x, y, center) / 2.0])

    def bounds(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        span = float(np.ptp(x)) or 1.0
        return (np.array([0.0, float(np.min(x)) - span, 1e-12 * span]),
                np.array([np.inf, float(np.max(x)) + span, np.inf]))


def fit_gaussian(theta: Any, f: Any, seed: int = 0, starts: int = DEFAULT_STARTS) -> FitResult:
    """
    Fit a Gaussian to a crystalline-fraction curve.

    :return: the fit with parameters ``A``, ``theta0`` and ``sigma``
    :rtype: FitResult
    """
    return GaussianModel().fit(theta, f, seed, starts)


def fit_super_gaussian(theta: Any, f: Any, theta0: float, seed: int = 0, starts: int = DEFAULT_STARTS) -> FitResult:
    """
    Fit a super-Gaussian of fixed center ``theta0`` to a crystalline-fraction curve.

    :return: the fit with parameters ``A``, ``sigma``, ``p`` and the fixed ``theta0``
    :rtype: FitResult
    """
    return SuperGaussianModel(theta0).fit(theta, f, seed, starts)


def fit_lorentzian(x: Any, y: Any, seed: int = 0, starts: int = DEFAULT_STARTS) -> FitResult:
    """
    Fit a Lorentzian, e.g. to decay constants :math:`N^*` against :math:`\\theta/\\pi`.

    :return: the fit with parameters ``A``, ``x0`` and ``w``
    :rtype: FitResult
    """
    return LorentzianModel().fit(x, y, seed, starts)


def boundary_extract(fit: FitResult, cutoff: float) -> Optional[tuple[float, float]]:
    """
    The two angles where a fitted Gaussian or super-Gaussian crosses ``cutoff``.

    :param FitResult fit: a Gaussian or super-Gaussian fit
    :param float cutoff: the level :math:`f_c > 0`
    :return: ``(theta_left, theta_right)``, or ``None`` when the amplitude does not exceed the cutoff
    :rtype: Optional[tuple[float, float]]
    """
    if cutoff <= 0:
        raise InvalidArgumentError("cutoff must be > 0")
    amplitude = fit["A"]
    if amplitude <= cutoff:
        return None
    level = 2.0 * math.log(amplitude / cutoff)
    if fit.model == GaussianModel.name:
        half = fit["sigma"] * math.sqrt(level)
    elif fit.model == SuperGaussianModel.name:
        half = fit["sigma"] * level ** (1.0 / fit["p"])
    else:
        raise InvalidArgumentError(f"no boundary for a {fit.model} fit")
    return fit["theta0"] - half, fit["theta0"] + half


def w_tau_line(w: float, tau: float) -> tuple[float, float]:
    """
    The angles :math:`\\pi \\mp W\\tau` of the comparison lines :math:`|\\theta - \\pi| = W\\tau`.

    :param float w: a line width in rad/s
    :param float tau: the delay in s
    """
    return math.pi - w * tau, math.pi + w * tau
