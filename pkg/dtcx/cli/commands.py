"""
The subcommands. Each takes a :class:`RunConfig`, writes its data files into ``config.out`` together with a
``manifest.json`` and returns the derived parameters recorded in the manifest.
"""

import logging
import math
import os
from typing import Any
from typing import Callable

import numpy as np
from joblib import Parallel
from joblib import delayed

from dtcx.analysis.fitting import FitResult
from dtcx.analysis.fitting import boundary_extract
from dtcx.analysis.fitting import fit_gaussian
from dtcx.analysis.fitting import fit_super_gaussian
from dtcx.analysis.nutation import fit_h1_distribution
from dtcx.analysis.nutation import nutation_correct
from dtcx.analysis.spectral import CrystallineFractionCurve
from dtcx.analysis.spectral import DiscreteSignal
from dtcx.analysis.spectral import Window
from dtcx.analysis.spectral import crystalline_fraction
from dtcx.analysis.spectral import dft
from dtcx.analysis.spectral import time_to_half
from dtcx.analysis.window import window_effect_model
from dtcx.cli.config import RunConfig
from dtcx.lattice.cluster import build_cluster
from dtcx.lattice.coupling import coupling_table
from dtcx.lattice.coupling import export_coupling_table
from dtcx.lattice.symmetry import symmetry_report
from dtcx.lineshape.ising import Interaction
from dtcx.lineshape.ising import lattice_signals
from dtcx.lineshape.ising import predicted_widths
from dtcx.lineshape.signals import TimeSeries
from dtcx.lineshape.signals import combine
from dtcx.lineshape.spectrum import DISPLAY_ZERO_FILL
from dtcx.lineshape.spectrum import gaussian_broaden
from dtcx.lineshape.spectrum import rms_width
from dtcx.lineshape.spectrum import spectrum
from dtcx.pulseq.builtins import builtin
from dtcx.pulseq.parser import parse
from dtcx.pulseq.parser import print_program
from dtcx.pulseq.program import SequenceProgram
from dtcx.quantum.echo import DEFAULT_OMEGA1
from dtcx.quantum.echo import run_dtc_echo
from dtcx.quantum.engine import run_sequence
from dtcx.quantum.system import SpinSystem
from dtcx.utils.exceptions import GridMismatchError
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.io import read_csv
from dtcx.utils.io import write_csv
from dtcx.utils.io import write_json
from dtcx.utils.io import write_manifest
from dtcx.utils.literals import parse_grid
from dtcx.utils.literals import parse_angle

logger = logging.getLogger(__name__)

WINDOW_MODEL_GRID: str = "0.94pi:1.06pi:49"


def _path(config: RunConfig, name: str) -> str:
    return os.path.join(config.out, name)


def _single(values: list[float], name: str) -> float:
    if len(values) != 1:
        raise InvalidArgumentError(f"{name} must be a single value for this command")
    return values[0]


def _spin_system(config: RunConfig) -> SpinSystem:
    table = coupling_table(build_cluster(0, config.radius), config.orientation_value())
    return SpinSystem.from_coupling_table(table, n_phosphorus=config.spins - 1, n_hydrogen=config.hydrogen,
                                          n_nitrogen=config.nitrogen, zeeman_offset=config.offset)


def _program(config: RunConfig, theta: float, tau: float) -> SequenceProgram:
    params: dict[str, Any] = {"theta": theta, "tau": tau, "mode": config.mode}
    if config.t_p is not None:
        params["t_p"] = config.pulse_time()
    if config.omega1 is not None:
        params["omega1"] = config.omega1
    params.update(config.bindings())
    if config.seq is None:
        return builtin(config.builtin, params)
    with open(config.seq, encoding="utf-8") as handle:
        return parse(handle.read()).with_bindings(**params)


def _series(path: str) -> TimeSeries:
    columns = read_csv(path, ["t_s", "value"])
    times = columns["t_s"]
    if len(times) < 2:
        raise InvalidArgumentError(f"{path}: needs at least 2 samples")
    dt = float(times[1] - times[0])
    if dt <= 0 or not np.allclose(np.diff(times), dt, rtol=1e-6, atol=0.0):
        raise GridMismatchError(f"{path}: times are not uniformly spaced")
    return TimeSeries(float(times[0]), dt, columns["value"])


def _finish(config: RunConfig, derived: dict[str, Any]) -> dict[str, Any]:
    write_manifest(config.out, config.command, config.to_json(), derived)
    return derived


def cmd_lattice(config: RunConfig) -> dict[str, Any]:
    """
    Write the census of the ball (central phosphorus included) and the coupling table of the cluster around the first
    phosphorus site, and with ``--symmetry`` the comparison of the four possible central sites.
    """
    orientation = config.orientation_value()
    cluster = build_cluster(0, config.radius)
    counts = cluster.census()
    write_json(_path(config, "counts.json"), counts)
    export_coupling_table(coupling_table(cluster, orientation), config.out)
    derived: dict[str, Any] = {"counts": counts}
    if config.symmetry:
        report = symmetry_report(config.radius, orientation)
        write_json(_path(config, "symmetry.json"), report.to_json())
        derived["sublattices_invariant"] = report.sublattices_invariant
        derived["acid_invariant"] = report.acid_invariant
    logger.info("cluster of radius %g: %s", config.radius, counts)
    return _finish(config, derived)


def cmd_lineshape(config: RunConfig) -> dict[str, Any]:
    """
    Write the signal and spectrum of the selected interactions, their rms widths and with ``--hahn`` the
    Hahn-echo decay, which only the like-spin couplings cause.
    """
    orientation = config.orientation_value()
    interactions = config.interaction_values()
    if not interactions:
        raise InvalidArgumentError("interactions must not be empty")
    requested = list(interactions)
    if config.hahn and Interaction.PP not in requested:
        requested.append(Interaction.PP)
    signals = lattice_signals(orientation, config.radius, requested, config.dt_value(), config.samples)
    for interaction in interactions:
        write_csv(_path(config, f"signal_{interaction.value}.csv"), ["t_s", "value"], signals[interaction].to_rows())
    combined = combine([signals[i] for i in interactions])
    write_csv(_path(config, "signal.csv"), ["t_s", "value"], combined.to_rows())
    widths = {i.value: rms_width(spectrum(signals[i])) for i in interactions}
    widths["combined"] = rms_width(spectrum(combined))
    sp = spectrum(combined, DISPLAY_ZERO_FILL)
    if config.broaden is not None:
        widths["broadened"] = rms_width(gaussian_broaden(spectrum(combined), config.broaden))
        sp = gaussian_broaden(sp, config.broaden)
    write_csv(_path(config, "spectrum.csv"), ["freq_Hz", "re", "im"], sp.to_rows())
    if config.hahn:
        write_csv(_path(config, "hahn.csv"), ["t_s", "value"], signals[Interaction.PP].to_rows())
    predicted = {i.value: w for i, w in predicted_widths(orientation, config.radius).items()}
    write_json(_path(config, "widths.json"), {"rms_width_Hz": widths, "predicted_Hz": predicted})
    logger.info("rms widths in Hz: %s", widths)
    return _finish(config, {"rms_width_Hz": widths, "predicted_Hz": predicted})


def _fraction_point(system: SpinSystem, program: SequenceProgram, n_max: int,
                    window: Window) -> tuple[float, DiscreteSignal]:
    signal = run_sequence(system, program, n_max)
    return crystalline_fraction(signal, window), signal


def cmd_dtc(config: RunConfig) -> dict[str, Any]:
    """
    Simulate one DTC run and write :math:`S(N)` and its crystalline fraction.
    """
    theta = _single(config.theta_grid(), "theta")
    tau = _single(config.tau_grid(), "tau")
    system = _spin_system(config)
    program = _program(config, theta, tau)
    window = config.window_value()
    f, signal = _fraction_point(system, program, config.N, window)
    write_csv(_path(config, "signal.csv"), ["N", "t_s", "S"], signal.to_rows())
    result = {"f": f, "window": list(window), "time_to_half": time_to_half(signal), "period_s": signal.period}
    write_json(_path(config, "fraction.json"), result)
    logger.info("f=%.4f over cycles %d..%d", f, *window)
    return _finish(config, {**result, "dimension": system.dimension, "program": print_program(program)})


def _boundary_rows(fit: FitResult, tau: float, cutoffs: list[float]) -> list[tuple[Any, ...]]:
    rows = []
    for cutoff in cutoffs:
        boundary = boundary_extract(fit, cutoff)
        if boundary is not None:
            rows.append((tau, boundary[0], boundary[1], cutoff))
    return rows


def cmd_sweep(config: RunConfig) -> dict[str, Any]:
    """
    Compute crystalline fractions over a grid of angles and delays on a worker pool.

    Each delay gets a curve :math:`f(\\theta)`, a Gaussian fit and the boundaries at every cutoff. With
    ``--fixed-theta`` the angle is held and :math:`f(\\tau)` is written instead.
    """
    system = _spin_system(config)
    window = config.window_value()
    taus = config.tau_grid()
    fixed = config.fixed_theta is not None
    thetas = [config.fixed_theta_value()] if fixed else config.theta_grid()
    points = [(theta, tau) for tau in taus for theta in thetas]
    logger.info("sweeping %d points on %d jobs", len(points), config.jobs)
    results = Parallel(n_jobs=config.jobs)(
        delayed(_fraction_point)(system, _program(config, theta, tau), config.N, window) for theta, tau in points
    )
    fractions = np.array([f for f, _ in results]).reshape(len(taus), len(thetas))
    if fixed:
        write_csv(_path(config, "tau_scan.csv"), ["tau_s", "f"], zip(taus, fractions[:, 0].tolist()))
        return _finish(config, {"theta_rad": thetas[0], "f": fractions[:, 0].tolist()})
    fits = []
    boundaries: list[tuple[Any, ...]] = []
    for k, tau in enumerate(taus):
        curve = CrystallineFractionCurve(np.array(thetas), fractions[k], window, tau)
        write_csv(_path(config, f"fcurve_{k}.csv"), ["theta_rad", "f"], curve.to_rows())
        fit = fit_gaussian(curve.theta, curve.f, config.seed).require_converged()
        fits.append({"tau_s": tau, **fit.to_json()})
        boundaries.extend(_boundary_rows(fit, tau, config.cutoff_values()))
    write_json(_path(config, "fits.json"), {"fits": fits})
    write_csv(_path(config, "boundaries.csv"), ["tau_s", "theta_left", "theta_right", "cutoff"], boundaries)
    return _finish(config, {"points": len(points), "boundaries": len(boundaries)})


def cmd_echo(config: RunConfig) -> dict[str, Any]:
    """
    Run the DTC echo experiment and write the trace with its product-of-cosines envelope.
    """
    theta = _single(config.theta_grid(), "theta")
    t_p = config.pulse_time()
    omega1 = config.omega1
    if config.mode == "finite" and t_p is None and omega1 is None:
        omega1 = DEFAULT_OMEGA1
    if config.T is not None:
        pulse = 0.0
        if config.mode == "finite":
            pulse = t_p if t_p is not None else theta / omega1
        tau = config.period_value() - pulse
        if tau <= 0:
            raise InvalidArgumentError("T must exceed the pulse duration")
    else:
        tau = _single(config.tau_grid(), "tau")
    system = _spin_system(config)
    trace = run_dtc_echo(system, theta, tau, config.N, config.n_prime_max(), config.mode, t_p, config.reversal, omega1)
    write_csv(_path(config, "echo.csv"), ["N_prime", "t_s", "S", "envelope"], trace.to_rows())
    at_n = float(trace.values[config.N]) if config.N < len(trace.values) else None
    return _finish(config, {"tau_s": tau, "epsilon_rad": trace.epsilon, "S_at_N": at_n,
                            "dimension": system.dimension})


def _analyze_signal(config: RunConfig, derived: dict[str, Any]) -> None:
    columns = read_csv(config.signal, ["N", "t_s", "S"])
    numbers = columns["N"]
    period = float(columns["t_s"][0] / numbers[0]) if numbers[0] > 0 else 0.0
    signal = DiscreteSignal(columns["S"], period)
    window = config.window_value() if config.window else (1, len(signal))
    grid, amplitudes = dft(signal, window)
    write_csv(_path(config, "dft.csv"), ["nu", "re", "im"], zip(grid, amplitudes.real, amplitudes.imag))
    f = crystalline_fraction(signal, window)
    write_json(_path(config, "fraction.json"), {"f": f, "window": list(window)})
    derived["f"] = f


def _analyze_fcurve(config: RunConfig, derived: dict[str, Any]) -> None:
    columns = read_csv(config.fcurve, ["theta_rad", "f"])
    theta = columns["theta_rad"] + config.theta_shift_value()
    gaussian = fit_gaussian(theta, columns["f"], config.seed).require_converged()
    super_gaussian = fit_super_gaussian(theta, columns["f"], gaussian["theta0"], config.seed).require_converged()
    write_json(_path(config, "fcurve_fits.json"), {"gaussian": gaussian, "super_gaussian": super_gaussian})
    tau = config.tau_grid()[0]
    write_csv(_path(config, "boundaries.csv"), ["tau_s", "theta_left", "theta_right", "cutoff"],
              _boundary_rows(gaussian, tau, config.cutoff_values()))
    derived["gaussian"] = gaussian.params
    derived["super_gaussian"] = super_gaussian.params


def _analyze_window_model(config: RunConfig, derived: dict[str, Any]) -> None:
    thetas = config.theta_grid()
    if len(thetas) == 1:
        thetas = parse_grid(WINDOW_MODEL_GRID, parse_angle)
    exponents = {}
    for start, end in config.window_values():
        curve = window_effect_model(thetas, (start, end), max(config.N, end))
        write_csv(_path(config, f"window_model_{start}_{end}.csv"), ["theta_rad", "f"], curve.to_rows())
        fit = fit_super_gaussian(curve.theta, curve.f, math.pi, config.seed).require_converged()
        exponents[f"{start}:{end}"] = fit["p"]
    write_json(_path(config, "window_model.json"), {"super_gaussian_p": exponents})
    derived["super_gaussian_p"] = exponents


def _analyze_nutation(config: RunConfig, derived: dict[str, Any]) -> None:
    corrected = nutation_correct(_series(config.nutation), _series(config.hahn_file))
    write_csv(_path(config, "nutation_corrected.csv"), ["t_s", "value"], corrected.to_rows())
    distribution = fit_h1_distribution(corrected, config.seed)
    distribution.fit.require_converged()
    write_json(_path(config, "h1_distribution.json"), distribution.to_json())
    write_csv(_path(config, "angle_distribution.csv"), ["epsilon_rad", "p"],
              distribution.angle_distribution(config.bins).to_rows())
    derived["peak_frequency_Hz"] = distribution.peak_frequency()


def cmd_analyze(config: RunConfig) -> dict[str, Any]:
    """
    Analyze existing data: a signal, an :math:`f(\\theta)` curve, the window model or a nutation signal.
    """
    steps: list[Callable[[RunConfig, dict[str, Any]], None]] = []
    if config.signal:
        steps.append(_analyze_signal)
    if config.fcurve:
        steps.append(_analyze_fcurve)
    if config.window_model:
        steps.append(_analyze_window_model)
    if config.nutation or config.hahn_file:
        if not (config.nutation and config.hahn_file):
            raise InvalidArgumentError("nutation analysis needs both --nutation and --hahn")
        steps.append(_analyze_nutation)
    if not steps:
        raise InvalidArgumentError("analyze needs --signal, --fcurve, --window-model or --nutation with --hahn")
    derived: dict[str, Any] = {}
    for step in steps:
        step(config, derived)
    return _finish(config, derived)


COMMANDS: dict[str, Callable[[RunConfig], dict[str, Any]]] = {
    "lattice": cmd_lattice,
    "lineshape": cmd_lineshape,
    "dtc": cmd_dtc,
    "sweep": cmd_sweep,
    "echo": cmd_echo,
    "analyze": cmd_analyze,
}
