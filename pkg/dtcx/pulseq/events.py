r"""
Concrete events of an expanded pulse sequence.

A pulse of phase :math:`\phi` and angle :math:`\theta` rotates the phosphorus spins by :math:`\theta` about the
rotating-frame axis :math:`(\cos\phi, \sin\phi, 0)`. Delta pulses are instantaneous; finite pulses last ``duration``
with constant amplitude :math:`\omega_1 = \theta / t_p` while the internal Hamiltonian keeps acting.
"""

import enum
import math
from dataclasses import dataclass

from dtcx.utils.exceptions import InvalidArgumentError

PHASES: dict[str, float] = {"X": 0.0, "Y": math.pi / 2.0, "-X": math.pi, "-Y": 3.0 * math.pi / 2.0}


class EventKind(enum.Enum):
    """
    The two kinds of events.
    """
    DELAY = "delay"
    PULSE = "pulse"


class PulseMode(enum.Enum):
    """
    Delta (instantaneous) or finite-duration pulses.
    """
    DELTA = "delta"
    FINITE = "finite"


@dataclass(frozen=True)
class PulseEvent:
    """
    A delay or a pulse. Durations are in s, angles and phases in rad, amplitudes in rad/s.
    """
    kind: EventKind
    duration: float
    angle: float = 0.0
    phase: float = 0.0
    mode: PulseMode = PulseMode.DELTA
    omega1: float = 0.0

    def __post_init__(self) -> None:
        if self.duration < 0:
            raise InvalidArgumentError("duration must be >= 0")
        if self.kind is EventKind.PULSE:
            if self.mode is PulseMode.DELTA and self.duration != 0:
                raise InvalidArgumentError("delta pulses have zero duration")
            if self.mode is PulseMode.FINITE and self.omega1 <= 0:
                raise InvalidArgumentError("finite pulses need omega1 > 0")

    @property
    def is_pulse(self) -> bool:
        """
        Whether the event is a pulse.
        """
        return self.kind is EventKind.PULSE

    @staticmethod
    def delay(duration: float) -> "PulseEvent":
        """
        A free evolution period.
        """
        return PulseEvent(EventKind.DELAY, duration)

    @staticmethod
    def delta(angle: float, phase: float) -> "PulseEvent":
        """
        An instantaneous rotation.
        """
        return PulseEvent(EventKind.PULSE, 0.0, angle, phase, PulseMode.DELTA)

    @staticmethod
    def finite(angle: float, phase: float, omega1: float) -> "PulseEvent":
        """
        A finite pulse of amplitude ``omega1`` lasting ``angle / omega1``.
        """
        if omega1 <= 0:
            raise InvalidArgumentError("finite pulses need omega1 > 0")
        return PulseEvent(EventKind.PULSE, angle / omega1, angle, phase, PulseMode.FINITE, omega1)


def total_duration(events: list[PulseEvent]) -> float:
    """
    The sum of the durations of ``events``.
    """
    return math.fsum(e.duration for e in events)


def total_pulse_time(events: list[PulseEvent]) -> float:
    """
    The time spent in pulses.
    """
    return math.fsum(e.duration for e in events if e.is_pulse)
