r"""
Zeroth-order average Hamiltonians of pulse blocks.

In the toggling frame of the pulses, :math:`\tilde{\mathcal H}(t) = U_\mathrm{rf}^\dagger(t)\, \mathcal{H}_\mathrm{int}\,
U_\mathrm{rf}(t)`, the zeroth-order average Hamiltonian of a block of duration :math:`T` is

.. math::

   \bar{\mathcal H}^{(0)} = \frac1T \int_0^T \tilde{\mathcal H}(t)\, dt.

The integral is exact: delays contribute :math:`\tau \tilde{\mathcal H}`, and during a finite pulse of amplitude
:math:`\omega_1` about :math:`I_\phi` the integrand is evaluated in the eigenbasis of :math:`I_\phi`, where each matrix
element rotates at a single frequency. Delta pulses only change the frame.

The block must be cyclic for the result to describe stroboscopic evolution: the net rotation of its pulses has to leave
:math:`\mathcal{H}_\mathrm{int}` unchanged. This holds for blocks of :math:`\pi` pulses and for WAHUHA-like cycles;
other blocks raise :class:`UnsupportedPulseError <dtcx.utils.exceptions.UnsupportedPulseError>`.

For the blocks :math:`\{\tau - X_\pi - \tau - Y_\pi\}` and :math:`\{\tau - X_\pi - \tau - X_\pi\}` of homonuclear
systems the integrals are :math:`(2\tau + t_p/2)\mathcal{H}_{zz}` and :math:`2\tau\mathcal{H}_{zz} - t_p
\mathcal{H}_{xx}`.
"""

import logging

import numpy as np
import scipy.linalg

from dtcx.pulseq.events import PulseEvent
from dtcx.pulseq.events import PulseMode
from dtcx.pulseq.events import total_duration
from dtcx.quantum.hamiltonian import basis
from dtcx.quantum.hamiltonian import build_hamiltonian
from dtcx.quantum.system import SpinSystem
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.exceptions import UnsupportedPulseError

logger = logging.getLogger(__name__)

CYCLIC_TOLERANCE: float = 1e-9


def _pulse_integral(h: np.ndarray, rf: np.ndarray, omega1: float, duration: float) -> np.ndarray:
    # integral over s in [0, duration] of exp(-i w1 s rf) h exp(+i w1 s rf)
    m, vectors = scipy.linalg.eigh(rf)
    rotated = vectors.conj().T @ h @ vectors
    delta = m[:, None] - m[None, :]
    phase = -1j * omega1 * delta
    with np.errstate(divide="ignore", invalid="ignore"):
        weights = np.where(np.abs(delta) < 1e-12, duration, np.expm1(phase * duration) / phase)
    return vectors @ (rotated * weights) @ vectors.conj().T


def integrated_hamiltonian_0(system: SpinSystem, events: list[PulseEvent]) -> np.ndarray:
    """
    The toggling-frame integral :math:`\\int_0^T \\tilde{\\mathcal H}(t)\\, dt` over ``events``.

    :param SpinSystem system: the spin system
    :param list[PulseEvent] events: one block of the sequence
    :return: the integral in rad
    :rtype: np.ndarray
    :raises UnsupportedPulseError: if the block is not cyclic
    """
    if not events:
        raise InvalidArgumentError("events must not be empty")
    ops = basis(system)
    h = build_hamiltonian(system, ops)
    frame = np.eye(system.dimension, dtype=complex)
    integral = np.zeros_like(h)
    for event in events:
        if not event.is_pulse:
            integral += event.duration * (frame.conj().T @ h @ frame)
            continue
        if event.mode is PulseMode.FINITE:
            rf = ops.transverse(system.phosphorus, event.phase).toarray()
            inner = _pulse_integral(h, rf, event.omega1, event.duration)
            integral += frame.conj().T @ inner @ frame
        frame = ops.rotation(system.phosphorus, event.angle, event.phase) @ frame
    scale = max(float(np.max(np.abs(h))), 1.0)
    if np.max(np.abs(frame.conj().T @ h @ frame - h)) > CYCLIC_TOLERANCE * scale:
        raise UnsupportedPulseError("the net rotation of the block does not leave the internal hamiltonian "
                                    "invariant")
    return integral


def average_hamiltonian_0(system: SpinSystem, events: list[PulseEvent]) -> np.ndarray:
    """
    The zeroth-order average Hamiltonian of a cyclic block, the integral divided by the block duration.

    :param SpinSystem system: the spin system
    :param list[PulseEvent] events: one block of the sequence
    :return: :math:`\\bar{\\mathcal H}^{(0)}` in rad/s
    :rtype: np.ndarray
    """
    duration = total_duration(events)
    if duration <= 0:
        raise InvalidArgumentError("the block must have a positive duration")
    average = integrated_hamiltonian_0(system, events) / duration
    logger.debug("average hamiltonian of %d events over %.6g s", len(events), duration)
    return average
