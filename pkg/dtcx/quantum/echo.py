r"""
The DTC echo experiment.

After :math:`N` forward blocks :math:`\{\tau - X_\theta\}` and a wrapper :math:`X_{\pi/2}`, the reversal blocks
:math:`\{\bar X_\theta - Y_\Phi\}` undo the forward evolution: in the frame of the wrapper the dipolar Hamiltonian is
:math:`\mathcal{H}_{yy}`, and a long :math:`Y` pulse of duration :math:`2\tau` evolves under its secular part
:math:`-\tfrac12 \mathcal{H}_{yy}`. The closing :math:`\bar X_{\pi/2}` and the readout :math:`X_{\pi/2}` cancel; the
signal is read as :math:`\bar R^\dagger I_{z_T} \bar R` with :math:`\bar R` the ideal :math:`\bar X_{\pi/2}`.

Three reversal strategies are available:

``finite``
    the long pulse evolves exactly under :math:`\mathcal{H}_\mathrm{int} - \omega_1 I_y`;
``secular``
    the long pulse is replaced by :math:`\exp(+i\mathcal{H}^\mathrm{P,P}_{yy}\tau)`, its toggling-frame propagator
    with the net rotation removed;
``ideal``
    the long pulse is replaced by :math:`W e^{+i\mathcal{H}_\mathrm{int}\tau} W^\dagger`, :math:`W` the ideal
    :math:`X_{\pi/2}`, which reverses the forward evolution exactly.

Finite pulses run at a fixed amplitude, :data:`DEFAULT_OMEGA1` (:math:`2\pi \cdot 68` kHz) unless ``omega1`` or
``t_p`` is given. The long pulse then turns by :math:`\Phi = 2\omega_1\tau`, which is not a whole number of turns in
general; the residual rotation about :math:`Y` is part of the experiment.
"""

from __future__ import annotations

import abc
import logging
import math
from dataclasses import dataclass
from typing import Any
from typing import Optional

import numpy as np

from dtcx.pulseq.angle import angle_quantity
from dtcx.pulseq.builtins import builtin
from dtcx.pulseq.events import PulseEvent
from dtcx.pulseq.events import total_duration
from dtcx.pulseq.program import resolve
from dtcx.quantum.hamiltonian import dipolar_form
from dtcx.quantum.operators import expectation
from dtcx.quantum.propagator import PropagatorCache
from dtcx.quantum.propagator import exponential
from dtcx.quantum.propagator import transform
from dtcx.quantum.system import SpinSystem
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.literals import parse_time

logger = logging.getLogger(__name__)

DEFAULT_OMEGA1: float = 2.0 * math.pi * 68.0e3


class EchoReversal(abc.ABC):
    """
    Strategy producing the propagator of one reversal block.
    """
    name: str = ""

    @abc.abstractmethod
    def propagator(self, cache: PropagatorCache, events: list[PulseEvent], tau: float) -> np.ndarray:
        """
        The propagator of the block ``events`` (the inverted :math:`\\theta` pulse, then the long pulse).

        :param PropagatorCache cache: the propagators of the system
        :param list[PulseEvent] events: the expanded reversal block
        :param float tau: the forward delay in s
        :return: the unitary of one block
        :rtype: np.ndarray
        """


class FiniteReversal(EchoReversal):
    """
    The physical long pulse.
    """
    name = "finite"

    def propagator(self, cache: PropagatorCache, events: list[PulseEvent], tau: float) -> np.ndarray:
        if any(e.is_pulse and not e.omega1 > 0 for e in events):
            raise InvalidArgumentError("the finite reversal needs finite pulses")
        return cache.block(events)


class SecularReversal(EchoReversal):
    """
    The secular toggling-frame propagator of the long pulse, heteronuclear terms and offsets dropped.
    """
    name = "secular"

    def propagator(self, cache: PropagatorCache, events: list[PulseEvent], tau: float) -> np.ndarray:
        h_yy = dipolar_form(cache.system, "y", cache.ops)
        return exponential(h_yy, -tau) @ cache.propagator(events[0])


class IdealReversal(EchoReversal):
    """
    The exact inverse of the forward free evolution seen in the frame of the wrapper pulse.
    """
    name = "ideal"

    def propagator(self, cache: PropagatorCache, events: list[PulseEvent], tau: float) -> np.ndarray:
        w = cache.ops.rotation(cache.system.phosphorus, math.pi / 2.0, 0.0)
        return w @ exponential(cache.hamiltonian, -tau) @ w.conj().T @ cache.propagator(events[0])


REVERSALS: dict[str, type[EchoReversal]] = {r.name: r for r in (FiniteReversal, SecularReversal, IdealReversal)}


def reversal_by_name(name: str) -> EchoReversal:
    """
    The reversal strategy called ``name``.
    """
    if name not in REVERSALS:
        raise InvalidArgumentError(f"unknown reversal '{name}', expected one of {', '.join(sorted(REVERSALS))}")
    return REVERSALS[name]()


@dataclass(frozen=True, eq=False)
class EchoTrace:
    """
    The echo signal :math:`S(N')` for :math:`N' = 0 \\ldots N'_\\max` after ``n`` forward blocks; ``period`` is the
    duration of one reversal block.
    """
    n: int
    epsilon: float
    n_prime: np.ndarray
    values: np.ndarray
    start: float
    period: float

    def envelope(self) -> np.ndarray:
        """
        The decay :math:`|\\cos\\epsilon|^{N + N'}` of uncorrelated angle errors.
        """
        return np.abs(math.cos(self.epsilon)) ** (self.n + self.n_prime)

    def to_rows(self) -> list[tuple[int, float, float, float]]:
        """
        ``(N_prime, t_s, S, envelope)`` rows for CSV output.
        """
        times = self.start + self.n_prime * self.period
        return list(zip(self.n_prime.tolist(), times.tolist(), self.values.tolist(), self.envelope().tolist()))


class DtcEchoExperiment:
    """
    The echo experiment on one spin system.
    """

    def __init__(self, system: SpinSystem, theta: Any, tau: Any, n: int, mode: str = "delta", t_p: Any = None,
                 omega1: Optional[float] = None, reversal: Optional[str] = None) -> None:
        """
        :param SpinSystem system: the spin system
        :param theta: the pulse angle, in rad or as a literal such as ``"1.08pi"``
        :param tau: the forward delay, in s or as a literal such as ``"192.5us"``
        :param int n: the number of forward blocks
        :param str mode: ``delta`` or ``finite`` pulses
        :param t_p: the duration of the :math:`\\theta` pulses in finite mode
        :param float omega1: the pulse amplitude in rad/s, instead of ``t_p``; finite mode without either uses
            :data:`DEFAULT_OMEGA1`
        :param str reversal: ``finite``, ``secular`` or ``ideal``; ``finite`` for finite pulses, else ``secular``
        """
        if n < 0:
            raise InvalidArgumentError("n must be >= 0")
        self.__system = system
        self.__n = n
        self.__theta = angle_quantity(theta).radians()
        self.__tau = parse_time(tau) if isinstance(tau, str) else float(tau)
        if mode == "finite" and t_p is None and omega1 is None:
            omega1 = DEFAULT_OMEGA1
        params: dict[str, Any] = {"theta": theta, "tau": self.__tau, "N": n, "mode": mode}
        if t_p is not None:
            params["t_p"] = t_p
        if omega1 is not None:
            params["omega1"] = omega1
        if t_p is None and omega1 is None:
            params["Phi"] = 0.0
        self.__reversal = reversal_by_name(reversal or ("finite" if mode == "finite" else "secular"))
        self.__timeline = resolve(builtin("dtc_echo", params))

    @property
    def reversal(self) -> EchoReversal:
        """
        The reversal strategy.
        """
        return self.__reversal

    def run(self, n_prime_max: int, cache: PropagatorCache = None) -> EchoTrace:
        """
        Simulate :math:`N' = 0 \\ldots N'_\\max` reversal blocks.

        :param int n_prime_max: the largest number of reversal blocks
        :param PropagatorCache cache: propagators to reuse, built when omitted
        :return: the echo trace
        :rtype: EchoTrace
        """
        if n_prime_max < 0:
            raise InvalidArgumentError("n_prime_max must be >= 0")
        system = self.__system
        cache = cache or PropagatorCache(system)
        ops = cache.ops
        iz = ops.total(system.phosphorus, "z").toarray()
        unwrap = ops.rotation(system.phosphorus, math.pi / 2.0, math.pi)
        readout = unwrap.conj().T @ iz @ unwrap
        norm = expectation(iz, iz).real
        rho = transform(iz, cache.block(self.__timeline.prologue))
        block = self.__reversal.propagator(cache, self.__timeline.block, self.__tau)
        values = np.zeros(n_prime_max + 1)
        for k in range(n_prime_max + 1):
            if k:
                rho = transform(rho, block)
            values[k] = expectation(readout, rho).real / norm
        logger.info("echo after %d forward blocks with %s reversal: S(N'=N)=%s", self.__n, self.__reversal.name,
                    values[self.__n] if self.__n <= n_prime_max else "n/a")
        # the long pulse lasts 2 tau even when delta mode gives it no duration
        period = total_duration(self.__timeline.block[:1]) + 2.0 * self.__tau
        return EchoTrace(self.__n, self.__theta - math.pi, np.arange(n_prime_max + 1), values,
                         total_duration(self.__timeline.prologue), period)


def run_dtc_echo(system: SpinSystem, theta: Any, tau: Any, n: int, n_prime_max: int, mode: str = "delta",
                 t_p: Any = None, reversal: Optional[str] = None, omega1: Optional[float] = None) -> EchoTrace:
    """
    Run the echo experiment; see :class:`DtcEchoExperiment`.
    """
    return DtcEchoExperiment(system, theta, tau, n, mode, t_p, omega1, reversal).run(n_prime_max)
