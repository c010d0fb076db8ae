"""
The ``dtcx`` command line.

Exit codes: ``0`` on success, ``2`` for usage errors and invalid arguments, ``3`` for numerical failures such as a fit
that did not converge and ``4`` for input and output errors.
"""

import argparse
import logging
import sys
from typing import Optional
from typing import Sequence

from dtcx import __version__
from dtcx.cli.commands import COMMANDS
from dtcx.cli.config import LOG_LEVELS
from dtcx.cli.config import RunConfig
from dtcx.utils.exceptions import DimensionOverflowError
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.exceptions import NumericalError

logger = logging.getLogger(__name__)

EXIT_OK: int = 0
EXIT_USAGE: int = 2
EXIT_NUMERICAL: int = 3
EXIT_IO: int = 4

LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat JSON file of options; explicit options override it")
    parser.add_argument("--out", help="output directory (default dtcx-out)")
    parser.add_argument("--seed", type=int, help="seed of the fit start jitter (default 0)")
    parser.add_argument("--jobs", type=int, help="worker processes of a sweep, -1 for all cores (default 1)")
    parser.add_argument("--log-level", dest="log_level", choices=LOG_LEVELS, type=str.upper,
                        help="logging threshold (default WARNING)")


def _lattice(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--radius", type=float, help="cluster radius in angstrom (default 20.25)")
    parser.add_argument("--orientation", help="field direction THETA,PHI in degrees (default 60,0)")


def _dynamics(parser: argparse.ArgumentParser) -> None:
    _lattice(parser)
    parser.add_argument("--theta", help="pulse angle such as 1.04pi, or a grid start:stop:count")
    parser.add_argument("--tau", help="delay such as 392.5us, or a comma separated list")
    parser.add_argument("--N", dest="N", type=int, help="number of cycles (default 128)")
    parser.add_argument("--spins", type=int, help="number of phosphorus spins including the center (default 8)")
    parser.add_argument("--hydrogen", type=int, help="number of 1H Ising partners (default 0)")
    parser.add_argument("--nitrogen", type=int, help="number of 14N Ising partners (default 0)")
    parser.add_argument("--offset", type=float, help="Zeeman offset of the phosphorus spins in rad/s")
    parser.add_argument("--window", help="analysis window a:b of cycle numbers (default 1:N)")
    parser.add_argument("--mode", choices=("delta", "finite"), help="pulse model (default delta)")
    parser.add_argument("--t-p", dest="t_p", help="pulse duration such as 7.5us")
    parser.add_argument("--omega1", type=float, help="pulse amplitude in rad/s")
    parser.add_argument("--param", action="append", metavar="KEY=VALUE", help="extra sequence binding, repeatable")


def build_parser() -> argparse.ArgumentParser:
    """
    The argument parser. Options left out on the command line are absent from the parsed namespace so that the
    configuration file can supply them.
    """
    parser = argparse.ArgumentParser(prog="dtcx", description="Discrete time crystal simulations of ADP.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    lattice = commands.add_parser("lattice", argument_default=argparse.SUPPRESS, help="cluster counts and couplings")
    _common(lattice)
    _lattice(lattice)
    lattice.add_argument("--symmetry", action="store_true", help="compare the four central sites")

    lineshape = commands.add_parser("lineshape", argument_default=argparse.SUPPRESS, help="Ising line shapes")
    _common(lineshape)
    _lattice(lineshape)
    lineshape.add_argument("--interactions", help="comma separated PP, PH and PN (default PP)")
    lineshape.add_argument("--hahn", action="store_true", help="also write the Hahn-echo decay")
    lineshape.add_argument("--broaden", type=float, help="Gaussian broadening FWHM in Hz")
    lineshape.add_argument("--dt", help="sampling interval (default 5us)")
    lineshape.add_argument("--samples", type=int, help="number of samples (default 4096)")

    dtc = commands.add_parser("dtc", argument_default=argparse.SUPPRESS, help="one DTC run")
    sweep = commands.add_parser("sweep", argument_default=argparse.SUPPRESS, help="f over angles and delays")
    for sub in (dtc, sweep):
        _common(sub)
        _dynamics(sub)
        sub.add_argument("--builtin", help="name of a built-in sequence (default dtc)")
        sub.add_argument("--seq", help="file with a sequence text")
    sweep.add_argument("--fixed-theta", dest="fixed_theta", help="hold this angle and scan the delays")
    sweep.add_argument("--cutoffs", help="comma separated boundary levels (default 0.05,0.1,0.15)")

    echo = commands.add_parser("echo", argument_default=argparse.SUPPRESS, help="the DTC echo experiment")
    _common(echo)
    _dynamics(echo)
    echo.add_argument("--T", dest="T", help="cycle period; the delay is T minus the pulse duration")
    echo.add_argument("--Nprime", dest="Nprime", help="reversal blocks 0:M (default 0:12)")
    echo.add_argument("--reversal", choices=("finite", "secular", "ideal"), help="reversal of the echo block")

    analyze = commands.add_parser("analyze", argument_default=argparse.SUPPRESS, help="analysis of existing data")
    _common(analyze)
    analyze.add_argument("--signal", help="CSV with columns N,t_s,S")
    analyze.add_argument("--fcurve", help="CSV with columns theta_rad,f")
    analyze.add_argument("--theta-shift", dest="theta_shift", help="angle added to the ingested angles")
    analyze.add_argument("--cutoffs", help="comma separated boundary levels (default 0.05,0.1,0.15)")
    analyze.add_argument("--tau", help="delay recorded with the boundaries")
    analyze.add_argument("--window-model", dest="window_model", action="store_true",
                         help="crystalline fractions of the decay model for each window")
    analyze.add_argument("--window", help="window a:b, or a comma separated list for the window model")
    analyze.add_argument("--theta", help="angle grid of the window model")
    analyze.add_argument("--N", dest="N", type=int, help="length of the model signals (default 128)")
    analyze.add_argument("--nutation", help="CSV with columns t_s,value")
    analyze.add_argument("--hahn", dest="hahn_file", help="CSV with columns t_s,value of the Hahn-echo decay")
    analyze.add_argument("--bins", type=int, help="number of angles of the angle distribution (default 64)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    :param argv: the arguments without the program name, ``sys.argv[1:]`` by default
    :return: the exit code
    :rtype: int
    """
    parser = build_parser()
    try:
        arguments = vars(parser.parse_args(argv))
    except SystemExit as exit_:
        return int(exit_.code or 0)
    command = arguments.pop("command")
    config_path = arguments.pop("config", None)
    try:
        config = RunConfig.merge(command, config_path, arguments)
    except (InvalidArgumentError, TypeError) as error:
        parser.print_usage(sys.stderr)
        print(f"dtcx {command}: error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as error:
        print(f"dtcx {command}: error: {error}", file=sys.stderr)
        return EXIT_IO
    logging.basicConfig(level=config.log_level.upper(), format=LOG_FORMAT)
    try:
        COMMANDS[command](config)
    except (InvalidArgumentError, DimensionOverflowError) as error:
        print(f"dtcx {command}: error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as error:
        print(f"dtcx {command}: numerical failure: {error}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as error:
        print(f"dtcx {command}: error: {error}", file=sys.stderr)
        return EXIT_IO
    logger.info("wrote %s", config.out)
    return EXIT_OK
