"""
The resolved configuration of a command line run.

A :class:`RunConfig` is merged from three sources in increasing precedence: the defaults below, a flat JSON file given
with ``--config`` whose keys are the option names with dashes replaced by underscores, and the options given explicitly
on the command line. Values keep the literal form in which they were given (``"392.5us"``, ``"1.04pi"``); the accessor
methods parse them.
"""

import dataclasses
import logging
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Mapping
from typing import Optional
from typing import Union

from dtcx.lattice.cluster import Orientation
from dtcx.lineshape.ising import Interaction
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.io import read_json
from dtcx.utils.literals import parse_angle
from dtcx.utils.literals import parse_grid
from dtcx.utils.literals import parse_int_range
from dtcx.utils.literals import parse_time

logger = logging.getLogger(__name__)

Literal = Union[str, float, int]

LOG_LEVELS: tuple[str, ...] = ("DEBUG", "INFO", "WARNING", "ERROR")


def _time(value: Literal) -> float:
    return parse_time(value) if isinstance(value, str) else float(value)


def _times(value: Literal) -> list[float]:
    return parse_grid(value, parse_time) if isinstance(value, str) else [float(value)]


def _angles(value: Literal) -> list[float]:
    return parse_grid(value, parse_angle) if isinstance(value, str) else [float(value)]


def _binding(text: str) -> Any:
    try:
        return int(text)
    except ValueError:
        return text


@dataclass(frozen=True)
class RunConfig:
    """
    Every option of every subcommand. Options that a subcommand does not read are ignored by it.
    """
    command: str
    out: str = "dtcx-out"
    seed: int = 0
    jobs: int = 1
    log_level: str = "WARNING"
    # lattice and line shapes
    radius: float = 20.25
    orientation: str = "60,0"
    symmetry: bool = False
    interactions: str = "PP"
    hahn: bool = False
    dt: Literal = "5us"
    samples: int = 4096
    broaden: Optional[float] = None
    # dynamics
    theta: Literal = "pi"
    tau: Literal = "392.5us"
    N: int = 128
    spins: int = 8
    hydrogen: int = 0
    nitrogen: int = 0
    offset: float = 0.0
    window: Optional[str] = None
    fixed_theta: Optional[Literal] = None
    T: Optional[Literal] = None
    Nprime: str = "0:12"
    mode: str = "delta"
    t_p: Optional[Literal] = None
    omega1: Optional[float] = None
    builtin: str = "dtc"
    seq: Optional[str] = None
    param: list[str] = field(default_factory=list)
    reversal: Optional[str] = None
    # analysis
    cutoffs: str = "0.05,0.1,0.15"
    signal: Optional[str] = None
    fcurve: Optional[str] = None
    window_model: bool = False
    nutation: Optional[str] = None
    hahn_file: Optional[str] = None
    theta_shift: Literal = "0"
    bins: int = 64

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise InvalidArgumentError("radius must be > 0")
        if self.samples < 2:
            raise InvalidArgumentError("samples must be >= 2")
        if self.N < 0:
            raise InvalidArgumentError("N must be >= 0")
        if self.spins < 1 or self.hydrogen < 0 or self.nitrogen < 0:
            raise InvalidArgumentError("spins must be >= 1 and partner counts >= 0")
        if self.jobs == 0:
            raise InvalidArgumentError("jobs must not be 0")
        if self.seed < 0:
            raise InvalidArgumentError("seed must be >= 0")
        if self.mode not in ("delta", "finite"):
            raise InvalidArgumentError(f"invalid mode '{self.mode}', expected delta or finite")
        if self.log_level.upper() not in LOG_LEVELS:
            raise InvalidArgumentError(f"invalid log level '{self.log_level}'")
        if self.broaden is not None and self.broaden <= 0:
            raise InvalidArgumentError("broaden must be > 0")
        if self.bins < 2:
            raise InvalidArgumentError("bins must be >= 2")

    @staticmethod
    def merge(command: str, file_path: Optional[str], explicit: Mapping[str, Any]) -> "RunConfig":
        """
        Merge the defaults, a JSON file and explicit options.

        :param str command: the subcommand
        :param Optional[str] file_path: the JSON configuration file, if any
        :param Mapping[str, Any] explicit: the options given on the command line
        :return: the configuration
        :rtype: RunConfig
        """
        known = {f.name for f in dataclasses.fields(RunConfig)} - {"command"}
        values: dict[str, Any] = {}
        if file_path is not None:
            document = read_json(file_path)
            unknown = sorted(set(document) - known)
            if unknown:
                raise InvalidArgumentError(f"unknown configuration keys: {', '.join(unknown)}")
            values.update(document)
            logger.debug("read %d keys from %s", len(document), file_path)
        values.update({k: v for k, v in explicit.items() if k in known})
        if "seq" in values and "builtin" in values:
            raise InvalidArgumentError("give either a sequence file or a builtin, not both")
        return RunConfig(command, **values)

    def to_json(self) -> dict[str, Any]:
        """
        The configuration as a flat JSON document.
        """
        return dataclasses.asdict(self)

    def orientation_value(self) -> Orientation:
        """
        The parsed orientation.
        """
        return Orientation.parse(self.orientation)

    def interaction_values(self) -> list[Interaction]:
        """
        The parsed interactions.
        """
        return Interaction.parse_list(self.interactions)

    def dt_value(self) -> float:
        """
        The sampling interval in s.
        """
        dt = _time(self.dt)
        if dt <= 0:
            raise InvalidArgumentError("dt must be > 0")
        return dt

    def theta_grid(self) -> list[float]:
        """
        The pulse angles in rad.
        """
        return _angles(self.theta)

    def tau_grid(self) -> list[float]:
        """
        The delays in s; every delay must be positive.
        """
        taus = _times(self.tau)
        if any(t <= 0 for t in taus):
            raise InvalidArgumentError("tau must be > 0")
        return taus

    def period_value(self) -> float:
        """
        The cycle period ``T`` in s.
        """
        if self.T is None:
            raise InvalidArgumentError("T is not set")
        period = _time(self.T)
        if period <= 0:
            raise InvalidArgumentError("T must be > 0")
        return period

    def fixed_theta_value(self) -> float:
        """
        The angle held by a delay scan, in rad.
        """
        if self.fixed_theta is None:
            raise InvalidArgumentError("fixed_theta is not set")
        return _angles(self.fixed_theta)[0]

    def pulse_time(self) -> Optional[float]:
        """
        The duration of the pulses in s, if given.
        """
        return None if self.t_p is None else _time(self.t_p)

    def window_value(self) -> tuple[int, int]:
        """
        The analysis window, ``1:N`` by default.
        """
        return parse_int_range(self.window) if self.window else (1, self.N)

    def window_values(self) -> list[tuple[int, int]]:
        """
        A comma separated list of windows, e.g. ``1:20,1:128``.
        """
        if not self.window:
            return [(1, self.N)]
        return [parse_int_range(part) for part in self.window.split(",") if part.strip()]

    def n_prime_max(self) -> int:
        """
        The largest number of reversal blocks of the echo experiment.
        """
        start, stop = parse_int_range(self.Nprime)
        if start != 0:
            raise InvalidArgumentError("Nprime must start at 0")
        return stop

    def cutoff_values(self) -> list[float]:
        """
        The boundary cutoffs, ascending.
        """
        values = sorted(float(part) for part in self.cutoffs.split(",") if part.strip())
        if not values or values[0] <= 0:
            raise InvalidArgumentError("cutoffs must be > 0")
        return values

    def theta_shift_value(self) -> float:
        """
        The correction in rad added to ingested angles.
        """
        return _angles(self.theta_shift)[0]

    def bindings(self) -> dict[str, Any]:
        """
        The explicit ``--param key=value`` bindings; integers are converted, other values stay literals.
        """
        result: dict[str, Any] = {}
        for item in self.param:
            key, separator, value = item.partition("=")
            if not separator or not key.strip():
                raise InvalidArgumentError(f"invalid parameter '{item}', expected key=value")
            result[key.strip()] = _binding(value.strip())
        return result
