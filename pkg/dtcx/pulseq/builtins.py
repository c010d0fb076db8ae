r"""
Built-in pulse sequences.

====================  ============================================================  =================================
Name                  Text                                                          Parameters
====================  ============================================================  =================================
dtc                   ``{tau X[theta]}^N``                                          tau, theta (default pi), N
dtc_echo              ``{tau X[theta]}^<N> X[pi/2] {-X[theta] Y[Phi]}^N``           tau, theta, N, N_prime, t_p
                                                                                    or omega1
xx, yy, xy            ``{tau X[pi] tau X[pi]}^N`` etc.                              tau, N
burst_xyxy            ``{tau X[pi] Y[pi] X[pi] Y[pi]}^N``                           tau, N
rotary_echo           ``X[half] -X[half]``                                          omega1, t
nutation              ``X[nut]``                                                    omega1, t
dtc_phase_transient   ``{tau Y[delta] X[theta] -Y[delta]}^N``                       tau, theta, delta (default
                                                                                    pi/180), N
====================  ============================================================  =================================

In ``dtc_echo`` the forward count is fixed by the parameter ``N`` and the repeated reversal block is counted by
``N_prime``, which becomes the program's ``N`` binding. The long reversal pulse has angle :math:`\Phi = 2\omega_1\tau`
and shares the amplitude of the :math:`\theta` pulses, :math:`\omega_1 = \theta / t_p` unless ``omega1`` is given, so
that it lasts :math:`2\tau`. The final :math:`\bar X_{\pi/2}` of the echo experiment and the readout pulse of the
other sequences are not events; the engine reads the corresponding observable directly.

``rotary_echo`` and ``nutation`` always use finite pulses at amplitude ``omega1`` and step the total pulse time ``t``.
"""

import logging
from typing import Any
from typing import Callable
from typing import Mapping

from dtcx.pulseq.angle import angle_quantity
from dtcx.pulseq.parser import parse
from dtcx.pulseq.program import SequenceProgram
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.exceptions import UnboundSymbolError
from dtcx.utils.literals import parse_time

logger = logging.getLogger(__name__)

_Recipe = Callable[[dict[str, Any]], str]


def _seconds(params: Mapping[str, Any], name: str) -> float:
    if name not in params:
        raise UnboundSymbolError(name)
    value = params[name]
    return parse_time(value) if isinstance(value, str) else float(value)


def _amplitude(params: Mapping[str, Any], theta: float) -> float:
    if "omega1" in params:
        return float(params["omega1"])
    t_p = _seconds(params, "t_p")
    if t_p <= 0:
        raise InvalidArgumentError("t_p must be > 0")
    return theta / t_p


def _dtc(params: dict[str, Any]) -> str:
    params.setdefault("theta", "pi")
    return "{tau X[theta]}^N"


def _dtc_echo(params: dict[str, Any]) -> str:
    forward = int(params.pop("N", 0))
    if forward < 0:
        raise InvalidArgumentError("N must be >= 0")
    params.setdefault("theta", "pi")
    # without an amplitude Phi stays unbound and only delta-mode reversals can run
    if "omega1" in params or "t_p" in params:
        omega1 = _amplitude(params, angle_quantity(params["theta"]).radians())
        params["omega1"] = omega1
        params["Phi"] = 2.0 * omega1 * _seconds(params, "tau")
    if "N_prime" in params:
        params["N"] = int(params.pop("N_prime"))
    return "{tau X[theta]}^%d X[pi/2] {-X[theta] Y[Phi]}^N" % forward


def _pair(first: str, second: str) -> _Recipe:
    def recipe(params: dict[str, Any]) -> str:
        return "{tau %s[pi] tau %s[pi]}^N" % (first, second)
    return recipe


def _burst_xyxy(params: dict[str, Any]) -> str:
    return "{tau X[pi] Y[pi] X[pi] Y[pi]}^N"


def _finite_amplitude(params: dict[str, Any], name: str) -> float:
    omega1 = float(params.get("omega1", 0.0))
    if omega1 <= 0:
        raise InvalidArgumentError(f"{name} needs omega1 > 0")
    params["mode"] = "finite"
    return omega1


def _rotary_echo(params: dict[str, Any]) -> str:
    params["half"] = _finite_amplitude(params, "rotary_echo") * _seconds(params, "t") / 2.0
    return "X[half] -X[half]"


def _nutation(params: dict[str, Any]) -> str:
    params["nut"] = _finite_amplitude(params, "nutation") * _seconds(params, "t")
    return "X[nut]"


def _dtc_phase_transient(params: dict[str, Any]) -> str:
    params.setdefault("theta", "pi")
    params.setdefault("delta", "pi/180")
    return "{tau Y[delta] X[theta] -Y[delta]}^N"


BUILTINS: dict[str, _Recipe] = {
    "dtc": _dtc,
    "dtc_echo": _dtc_echo,
    "xx": _pair("X", "X"),
    "yy": _pair("Y", "Y"),
    "xy": _pair("X", "Y"),
    "burst_xyxy": _burst_xyxy,
    "rotary_echo": _rotary_echo,
    "nutation": _nutation,
    "dtc_phase_transient": _dtc_phase_transient,
}


def builtin(name: str, params: Mapping[str, Any] = None) -> SequenceProgram:
    """
    A named built-in program. ``params`` and the values derived from them become the default bindings.

    :param str name: the name of the sequence
    :param Mapping[str, Any] params: the parameters, bound as defaults of the program
    :return: the program
    :rtype: SequenceProgram
    """
    if name not in BUILTINS:
        raise InvalidArgumentError(f"unknown builtin '{name}', expected one of {', '.join(sorted(BUILTINS))}")
    bindings = dict(params or {})
    text = BUILTINS[name](bindings)
    logger.debug("builtin %s: %s", name, text)
    return parse(text).with_bindings(**bindings)
