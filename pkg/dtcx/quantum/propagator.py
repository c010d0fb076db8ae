r"""
Propagators of free evolution and pulses.

Every Hamiltonian acting during an event is time independent, so its propagator follows from one Hermitian
eigendecomposition, :math:`U = V e^{-i\Lambda t} V^\dagger`. A :class:`PropagatorCache` keeps the decomposition of
:math:`\mathcal{H}_\mathrm{int}` and the propagator of every distinct event it has seen, since sequences reuse a handful
of propagators thousands of times.

Pulses act on the :sup:`31`\ P spins only. A delta pulse is the rotation :math:`R = \exp(+i\theta I_\phi)`; a finite
pulse evolves under :math:`\mathcal{H}_\mathrm{int} - \omega_1 I_\phi` for its duration.
"""

import logging

import numpy as np
import scipy.linalg

from dtcx.pulseq.events import PulseEvent
from dtcx.pulseq.events import PulseMode
from dtcx.quantum.hamiltonian import basis
from dtcx.quantum.hamiltonian import build_hamiltonian
from dtcx.quantum.operators import OperatorBasis
from dtcx.quantum.system import SpinSystem
from dtcx.utils.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)


def exponential(h: np.ndarray, t: float) -> np.ndarray:
    """
    :math:`\\exp(-iHt)` of a Hermitian ``h``.
    """
    values, vectors = scipy.linalg.eigh(h)
    return (vectors * np.exp(-1j * values * t)) @ vectors.conj().T


def transform(rho: np.ndarray, u: np.ndarray) -> np.ndarray:
    """
    :math:`U \\rho U^\\dagger`.
    """
    return u @ rho @ u.conj().T


def evolve_free(rho: np.ndarray, h: np.ndarray, tau: float) -> np.ndarray:
    """
    Free evolution of a density matrix under ``h`` for ``tau`` seconds.

    :param np.ndarray rho: the density matrix
    :param np.ndarray h: the Hamiltonian in rad/s
    :param float tau: the duration
    :return: the evolved density matrix
    :rtype: np.ndarray
    """
    if tau < 0:
        raise InvalidArgumentError("tau must be >= 0")
    if tau == 0:
        return rho.copy()
    return transform(rho, exponential(h, tau))


class PropagatorCache:
    """
    The propagators of the events of one spin system.
    """

    def __init__(self, system: SpinSystem, ops: OperatorBasis = None) -> None:
        """
        :param SpinSystem system: the system
        :param OperatorBasis ops: its operators, built when omitted
        """
        self.__system = system
        self.__ops = ops or basis(system)
        self.__hamiltonian = build_hamiltonian(system, self.__ops)
        self.__values, self.__vectors = scipy.linalg.eigh(self.__hamiltonian)
        self.__cache: dict[PulseEvent, np.ndarray] = {}

    @property
    def system(self) -> SpinSystem:
        """
        The spin system.
        """
        return self.__system

    @property
    def ops(self) -> OperatorBasis:
        """
        The operators of the system.
        """
        return self.__ops

    @property
    def hamiltonian(self) -> np.ndarray:
        """
        :math:`\\mathcal{H}_\\mathrm{int}`.
        """
        return self.__hamiltonian

    def free(self, duration: float) -> np.ndarray:
        """
        :math:`\\exp(-i\\mathcal{H}_\\mathrm{int} t)` for ``t = duration``.
        """
        return self.propagator(PulseEvent.delay(duration))

    def propagator(self, event: PulseEvent) -> np.ndarray:
        """
        The propagator of ``event``, computed once per distinct event.

        :param PulseEvent event: the event
        :return: the unitary
        :rtype: np.ndarray
        """
        if event in self.__cache:
            return self.__cache[event]
        if not event.is_pulse:
            u = (self.__vectors * np.exp(-1j * self.__values * event.duration)) @ self.__vectors.conj().T
        elif event.mode is PulseMode.DELTA:
            u = self.__ops.rotation(self.__system.phosphorus, event.angle, event.phase)
        else:
            if event.omega1 <= 0:
                raise InvalidArgumentError("finite pulses need omega1 > 0")
            rf = self.__ops.transverse(self.__system.phosphorus, event.phase).toarray()
            u = exponential(self.__hamiltonian - event.omega1 * rf, event.duration)
        logger.debug("propagator computed for %s (cache size %d)", event, len(self.__cache) + 1)
        self.__cache[event] = u
        return u

    def block(self, events: list[PulseEvent]) -> np.ndarray:
        """
        The propagator of a list of events applied in order.
        """
        u = np.eye(self.__system.dimension, dtype=complex)
        for event in events:
            u = self.propagator(event) @ u
        return u


def apply_pulse(rho: np.ndarray, system: SpinSystem, event: PulseEvent, cache: PropagatorCache = None) -> np.ndarray:
    """
    Apply a pulse, or a delay, to a density matrix of ``system``.

    Repeated calls should share a ``cache``; without one the Hamiltonian of ``system`` is diagonalized on every call.

    :param np.ndarray rho: the density matrix
    :param SpinSystem system: the system, whose internal Hamiltonian acts during finite pulses
    :param PulseEvent event: the event
    :param PropagatorCache cache: propagators of ``system`` to reuse (optional)
    :return: the transformed density matrix
    :rtype: np.ndarray
    """
    cache = cache or PropagatorCache(system)
    if cache.system is not system:
        raise InvalidArgumentError("the propagator cache belongs to another spin system")
    return transform(rho, cache.propagator(event))
