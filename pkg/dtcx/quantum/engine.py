r"""
Stroboscopic simulation of repeated pulse sequences.

:func:`run_sequence` prepares :math:`\rho_0 = I_{z_T}` on the :sup:`31`\ P spins, applies the prologue and then one
block after the other, and records after each block

.. math::

   S(N) = \frac{\mathrm{Tr}[O_N \rho_N]}{\mathrm{Tr}[I_{z_T} \rho_0]}

where :math:`O_N` is the observable carried back through the epilogue (Heisenberg picture), so a single pass serves
every :math:`N`. The readout pulse of the experiment is not simulated: reading :math:`I_{z_T}` is equivalent.

:func:`free_induction_decay` evaluates :math:`\langle I_{y}(t) \rangle` of one spin exactly in the eigenbasis of
:math:`\mathcal{H}_\mathrm{int}`.
"""

import logging
from typing import Any
from typing import Mapping

import numpy as np
import scipy.linalg

from dtcx.analysis.spectral import DiscreteSignal
from dtcx.lineshape.signals import TimeSeries
from dtcx.pulseq.events import PulseEvent
from dtcx.pulseq.events import total_duration
from dtcx.pulseq.program import SequenceProgram
from dtcx.pulseq.program import expand
from dtcx.quantum.hamiltonian import basis
from dtcx.quantum.hamiltonian import build_hamiltonian
from dtcx.quantum.operators import axis_index
from dtcx.quantum.operators import expectation
from dtcx.quantum.propagator import PropagatorCache
from dtcx.quantum.propagator import transform
from dtcx.quantum.system import SpinSystem
from dtcx.utils.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

_CHUNK = 256


def _open_ended(p: SequenceProgram, with_epilogue: bool) -> SequenceProgram:
    epilogue = p.epilogue if with_epilogue else ()
    return SequenceProgram(p.prologue, p.block, None, epilogue, True, p.bindings)


def run_sequence(system: SpinSystem, program: SequenceProgram, n_max: int, observable: str = "z",
                 bindings: Mapping[str, Any] = None, initial_scaling: float = 1.0,
                 cache: PropagatorCache = None) -> DiscreteSignal:
    """
    Simulate ``program`` for :math:`N = 1 \\ldots N_\\max` repetitions of its block.

    The repetition count written in the program, if any, is replaced by :math:`N`.

    :param SpinSystem system: the spin system
    :param SequenceProgram program: the program, which must have a block
    :param int n_max: the largest number of blocks
    :param str observable: the component ``x``, ``y`` or ``z`` of the total phosphorus magnetization
    :param Mapping[str, Any] bindings: the bindings, overriding those of the program
    :param float initial_scaling: the scale of :math:`\\rho_0`, e.g. a cross-polarization enhancement
    :param PropagatorCache cache: propagators to reuse, built when omitted
    :return: :math:`S(N)` with the period of one block
    :rtype: DiscreteSignal
    """
    if n_max < 2:
        raise InvalidArgumentError("n_max must be >= 2")
    if not program.has_block:
        raise InvalidArgumentError("program has no repeated block")
    if initial_scaling <= 0:
        raise InvalidArgumentError("initial_scaling must be > 0")
    axis_index(observable)
    if not system.phosphorus:
        raise InvalidArgumentError("system has no phosphorus spin")
    cache = cache or PropagatorCache(system)
    merged = dict(bindings or {})
    merged.pop("N", None)
    head = _open_ended(program, False)
    full = _open_ended(program, True)

    reference = cache.ops.total(system.phosphorus, "z").toarray()
    target = cache.ops.total(system.phosphorus, observable).toarray()
    rho = initial_scaling * reference
    norm = expectation(reference, rho).real

    done = expand(head, {**merged, "N": 0})
    rho = transform(rho, cache.block(done))
    steps: dict[tuple[PulseEvent, ...], np.ndarray] = {}
    observables: dict[tuple[PulseEvent, ...], np.ndarray] = {}
    values = np.zeros(n_max)
    period = 0.0
    for n in range(1, n_max + 1):
        events = expand(head, {**merged, "N": n})
        if events[:len(done)] != done:
            raise InvalidArgumentError("expanded timelines must extend each other")
        step = tuple(events[len(done):])
        if step not in steps:
            steps[step] = cache.block(list(step))
        rho = transform(rho, steps[step])
        tail = tuple(expand(full, {**merged, "N": n})[len(events):])
        if tail not in observables:
            u = cache.block(list(tail))
            observables[tail] = u.conj().T @ target @ u
        values[n - 1] = expectation(observables[tail], rho).real / norm
        period = total_duration(list(step))
        done = events
    logger.info("ran %d blocks of period %.6g s on %d spins", n_max, period, len(system))
    return DiscreteSignal(values, period)


def free_induction_decay(system: SpinSystem, dt: float, n_samples: int, spin_index: int = 0) -> TimeSeries:
    """
    The normalized signal :math:`\\langle I_y(t) \\rangle / \\langle I_y(0) \\rangle` of one spin prepared along
    :math:`y` and evolving under :math:`\\mathcal{H}_\\mathrm{int}`.

    :param SpinSystem system: the spin system
    :param float dt: the sampling interval in s
    :param int n_samples: the number of samples
    :param int spin_index: the observed spin
    :return: the signal starting at :math:`t = 0`
    :rtype: TimeSeries
    """
    if n_samples < 2 or dt <= 0:
        raise InvalidArgumentError("need n_samples >= 2 and dt > 0")
    if not 0 <= spin_index < len(system):
        raise InvalidArgumentError(f"invalid spin index {spin_index}")
    ops = basis(system)
    energies, vectors = scipy.linalg.eigh(build_hamiltonian(system, ops))
    iy = vectors.conj().T @ ops.op(spin_index, "y").toarray() @ vectors
    weights = iy.T * iy
    significant = np.abs(weights) > 1e-14 * np.max(np.abs(weights))
    w = weights[significant]
    frequencies = (energies[:, None] - energies[None, :])[significant]
    times = np.arange(n_samples) * dt
    values = np.empty(n_samples)
    for start in range(0, n_samples, _CHUNK):
        chunk = times[start:start + _CHUNK]
        values[start:start + _CHUNK] = np.real(np.exp(-1j * np.outer(chunk, frequencies)) @ w)
    return TimeSeries(0.0, dt, values / values[0])
