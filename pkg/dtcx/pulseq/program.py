r"""
Unexpanded pulse-sequence programs and their expansion into concrete event timelines.

A :class:`SequenceProgram` is a *prologue*, a *block* repeated :math:`N` times and an *epilogue*. The prologue and
the epilogue may themselves contain groups repeated a fixed number of times. Durations and angles are symbolic until
:func:`expand` resolves them against a set of bindings.

Bindings
--------
``tau`` and any other delay symbol
    Times in s, or time literals such as ``"392.5us"``.
``theta``, ``eps``, ``Phi`` and any other angle symbol
    Angles in rad, or angle literals such as ``"1.04pi"`` (kept exact).
``mode``
    ``"delta"`` (default) or ``"finite"``.
``t_p``
    The duration of finite pulses; their amplitude is then :math:`\omega_1 = \theta / t_p`.
``omega1``
    A fixed amplitude in rad/s for finite pulses; when bound, every finite pulse lasts :math:`\theta / \omega_1` and
    ``t_p`` is ignored.
``interpulse_gap``
    A delay inserted between consecutive pulses (default 0, i.e. none).
``N``
    The repetition count of the block when the program text uses the symbolic count ``^N``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Mapping
from typing import Optional
from typing import Union

from dtcx.pulseq.angle import Expr
from dtcx.pulseq.angle import evaluate_angle
from dtcx.pulseq.events import PHASES
from dtcx.pulseq.events import PulseEvent
from dtcx.pulseq.events import PulseMode
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.exceptions import UnboundSymbolError
from dtcx.utils.literals import parse_time

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DelaySpec:
    """
    A free evolution period whose length is the value of ``symbol``.
    """
    symbol: str = "tau"

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class PulseSpec:
    """
    A pulse of the given phase token (``X``, ``Y``, ``-X`` or ``-Y``) and angle expression.
    """
    phase: str
    angle: Expr

    def __post_init__(self) -> None:
        if self.phase not in PHASES:
            raise InvalidArgumentError(f"unknown phase '{self.phase}'")

    def __str__(self) -> str:
        return f"{self.phase}[{self.angle}]"


EventSpec = Union[DelaySpec, PulseSpec]


@dataclass(frozen=True)
class Repeat:
    """
    A group of events repeated a fixed number of times inside a prologue or an epilogue.
    """
    events: tuple[EventSpec, ...]
    count: int

    def __post_init__(self) -> None:
        if self.count < 0:
            raise InvalidArgumentError("repetition count must be >= 0")

    def __str__(self) -> str:
        return "{" + " ".join(str(e) for e in self.events) + "}^" + str(self.count)


Item = Union[DelaySpec, PulseSpec, Repeat]


@dataclass(frozen=True)
class SequenceProgram:
    """
    A parsed, repeatable pulse sequence.

    ``repetitions`` is ``None`` when the count of the block is the symbol ``N``. Equality is structural: ``bindings``
    are defaults carried along and do not take part in comparisons.
    """
    prologue: tuple[Item, ...] = ()
    block: tuple[EventSpec, ...] = ()
    repetitions: Optional[int] = 0
    epilogue: tuple[Item, ...] = ()
    has_block: bool = False
    bindings: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.repetitions is not None and self.repetitions < 0:
            raise InvalidArgumentError("repetitions must be >= 0")
        if not self.has_block and (self.block or self.epilogue or _has_repeat(self.prologue)):
            raise InvalidArgumentError("a program without a block has only plain prologue events")
        if self.repetitions is not None and _has_repeat(self.prologue):
            raise InvalidArgumentError("repeated prologue groups need a block repeated N times")

    def with_bindings(self, **bindings: Any) -> SequenceProgram:
        """
        A copy of the program whose default bindings are updated with ``bindings``.
        """
        merged = dict(self.bindings)
        merged.update(bindings)
        return SequenceProgram(self.prologue, self.block, self.repetitions, self.epilogue, self.has_block, merged)

    def symbols(self) -> set[str]:
        """
        Every symbol the program needs at expansion.
        """
        names: set[str] = set()
        for spec in _flatten_specs(self.prologue) + list(self.block) + _flatten_specs(self.epilogue):
            if isinstance(spec, DelaySpec):
                names.add(spec.symbol)
            else:
                names |= spec.angle.symbols()
        if self.has_block and self.repetitions is None:
            names.add("N")
        return names


def _has_repeat(items: tuple[Item, ...]) -> bool:
    return any(isinstance(item, Repeat) for item in items)


def _flatten_specs(items: tuple[Item, ...]) -> list[EventSpec]:
    specs: list[EventSpec] = []
    for item in items:
        if isinstance(item, Repeat):
            specs.extend(item.events)
        else:
            specs.append(item)
    return specs


class Expander:
    """
    Resolves event specifications into :class:`PulseEvent` instances under fixed bindings.
    """

    def __init__(self, bindings: Mapping[str, Any]) -> None:
        """
        :param Mapping[str, Any] bindings: the symbol bindings
        """
        self.__bindings: dict[str, Any] = dict(bindings)
        self.__mode: PulseMode = PulseMode(str(self.__bindings.get("mode", "delta")).lower())
        self.__gap: float = self.time("interpulse_gap") if "interpulse_gap" in self.__bindings else 0.0

    @property
    def mode(self) -> PulseMode:
        """
        The pulse mode in effect.
        """
        return self.__mode

    def time(self, symbol: str) -> float:
        """
        The value in s of a time symbol.
        """
        if symbol not in self.__bindings:
            raise UnboundSymbolError(symbol)
        value = self.__bindings[symbol]
        seconds = parse_time(value) if isinstance(value, str) else float(value)
        if seconds < 0:
            raise InvalidArgumentError(f"{symbol} must be >= 0")
        return seconds

    def event(self, spec: EventSpec) -> PulseEvent:
        """
        Resolve a single event specification.
        """
        if isinstance(spec, DelaySpec):
            return PulseEvent.delay(self.time(spec.symbol))
        angle, _ = evaluate_angle(spec.angle, self.__bindings)
        phase = PHASES[spec.phase]
        if angle < 0:
            angle, phase = -angle, math.fmod(phase + math.pi, 2.0 * math.pi)
        if self.__mode is PulseMode.DELTA:
            return PulseEvent.delta(angle, phase)
        if "omega1" in self.__bindings:
            return PulseEvent.finite(angle, phase, float(self.__bindings["omega1"]))
        t_p = self.time("t_p")
        if t_p <= 0 or angle == 0:
            raise InvalidArgumentError("finite pulses need t_p > 0 and a nonzero angle, or a bound omega1")
        return PulseEvent.finite(angle, phase, angle / t_p)

    def events(self, items: tuple[Item, ...]) -> list[PulseEvent]:
        """
        Resolve a prologue or an epilogue, unrolling fixed repetitions.
        """
        result: list[PulseEvent] = []
        for item in items:
            if isinstance(item, Repeat):
                group = [self.event(spec) for spec in item.events]
                for _ in range(item.count):
                    result.extend(group)
            else:
                result.append(self.event(item))
        return result

    def with_gaps(self, events: list[PulseEvent]) -> list[PulseEvent]:
        """
        Insert the interpulse gap between consecutive pulses.
        """
        if self.__gap == 0 or not events:
            return events
        result: list[PulseEvent] = [events[0]]
        for event in events[1:]:
            if event.is_pulse and result[-1].is_pulse:
                result.append(PulseEvent.delay(self.__gap))
            result.append(event)
        return result


@dataclass(frozen=True)
class Timeline:
    """
    The three expanded parts of a program. ``block`` is one repetition of the block.
    """
    prologue: list[PulseEvent]
    block: list[PulseEvent]
    epilogue: list[PulseEvent]


def resolve(p: SequenceProgram, bindings: Mapping[str, Any] = None) -> Timeline:
    """
    Expand the prologue, a single block and the epilogue separately.

    :param SequenceProgram p: the program
    :param Mapping[str, Any] bindings: the bindings, overriding the defaults of the program
    :return: the expanded parts
    :rtype: Timeline
    """
    merged = dict(p.bindings)
    merged.update(bindings or {})
    expander = Expander(merged)
    return Timeline(
        expander.with_gaps(expander.events(p.prologue)),
        expander.with_gaps([expander.event(spec) for spec in p.block]),
        expander.with_gaps(expander.events(p.epilogue)),
    )


def repetition_count(p: SequenceProgram, bindings: Mapping[str, Any] = None) -> int:
    """
    The number of repetitions of the block, resolving the symbolic count ``N`` from the bindings.
    """
    if p.repetitions is not None:
        return p.repetitions
    merged = dict(p.bindings)
    merged.update(bindings or {})
    if "N" not in merged:
        raise UnboundSymbolError("N")
    count = int(merged["N"])
    if count < 0:
        raise InvalidArgumentError("N must be >= 0")
    return count


def expand(p: SequenceProgram, bindings: Mapping[str, Any] = None) -> list[PulseEvent]:
    """
    Expand a program into its flat event timeline.

    The timeline is the prologue, the block repeated :math:`N` times and the epilogue. With a nonzero
    ``interpulse_gap`` a delay separates every pair of consecutive pulses, including pulses that meet across a block
    boundary.

    :param SequenceProgram p: the program
    :param Mapping[str, Any] bindings: the bindings, overriding the defaults of the program
    :return: the events
    :rtype: list[PulseEvent]
    """
    timeline = resolve(p, bindings)
    count = repetition_count(p, bindings)
    events = timeline.prologue + timeline.block * count + timeline.epilogue
    merged = dict(p.bindings)
    merged.update(bindings or {})
    events = Expander(merged).with_gaps(events)
    logger.debug("expanded program into %d events", len(events))
    return events
