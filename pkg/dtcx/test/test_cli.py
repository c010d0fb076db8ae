"""
Tests for the command line: option merging, exit codes and the files each subcommand writes.
"""

import json
import math

import numpy as np
import pytest

from dtcx.cli.config import RunConfig
from dtcx.cli.main import EXIT_IO
from dtcx.cli.main import EXIT_OK
from dtcx.cli.main import EXIT_USAGE
from dtcx.cli.main import main
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.io import read_csv
from dtcx.utils.io import read_json
from dtcx.utils.io import write_csv


def test_config_precedence(tmp_path):
    """
    Explicit options override the file, which overrides the defaults.
    """
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"radius": 8.0, "N": 64}))
    config = RunConfig.merge("dtc", str(path), {"N": 32})
    assert config.radius == 8.0
    assert config.N == 32
    assert config.spins == 8
    assert config.window_value() == (1, 32)
    assert config.to_json()["radius"] == 8.0


def test_config_values():
    """
    Literal options are parsed on access.
    """
    config = RunConfig("sweep", theta="0.94pi:1.06pi:7", tau="12.5us,392.5us", window="1:20,1:128",
                       param=["delta=pi/180", "M=4"])
    assert len(config.theta_grid()) == 7
    assert config.tau_grid() == pytest.approx([12.5e-6, 392.5e-6])
    assert config.window_values() == [(1, 20), (1, 128)]
    assert config.bindings() == {"delta": "pi/180", "M": 4}
    assert config.cutoff_values() == [0.05, 0.1, 0.15]
    assert config.n_prime_max() == 12
    with pytest.raises(InvalidArgumentError):
        RunConfig("dtc", mode="soft")
    with pytest.raises(InvalidArgumentError):
        RunConfig("dtc", tau="-1us").tau_grid()
    with pytest.raises(InvalidArgumentError):
        RunConfig("dtc", param=["theta"]).bindings()


def test_usage_errors(tmp_path, capsys):
    """
    Bad options and invalid values exit with 2 and a message.
    """
    out = str(tmp_path / "out")
    assert main([]) == EXIT_USAGE
    assert main(["lattice", "--orientation", "200,0", "--out", out]) == EXIT_USAGE
    assert "theta" in capsys.readouterr().err
    assert main(["dtc", "--mode", "soft"]) == EXIT_USAGE
    assert main(["dtc", "--builtin", "cpmg", "--spins", "2", "--out", out]) == EXIT_USAGE
    assert main(["dtc", "--spins", "13", "--out", out]) == EXIT_USAGE
    assert main(["analyze", "--out", out]) == EXIT_USAGE


def test_config_errors(tmp_path):
    """
    Unknown keys in the configuration file are usage errors, a missing file is an input error.
    """
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"radius": 8.0, "bogus": 1}))
    assert main(["lattice", "--config", str(path)]) == EXIT_USAGE
    assert main(["lattice", "--config", str(tmp_path / "missing.json")]) == EXIT_IO


def test_version(capsys):
    """
    The version option prints the program name.
    """
    assert main(["--version"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("dtcx ")


def test_lattice(tmp_path):
    """
    The lattice command writes the counts, the coupling table, the symmetry report and the manifest.
    """
    out = tmp_path / "lattice"
    assert main(["lattice", "--radius", "20.25", "--symmetry", "--out", str(out)]) == EXIT_OK
    assert read_json(str(out / "counts.json")) == {"phosphorus": 325, "nitrogen": 322, "hydrogen": 1932}
    assert (out / "couplings.csv").exists()
    assert read_json(str(out / "symmetry.json"))["sublattices_invariant"] is True
    manifest = read_json(str(out / "manifest.json"))
    assert manifest["command"] == "lattice"
    assert manifest["config"]["radius"] == 20.25
    assert manifest["derived"]["acid_invariant"] is True


def test_lineshape(tmp_path):
    """
    The line shape command writes one signal per interaction, the spectrum and the widths.
    """
    out = tmp_path / "lineshape"
    argv = ["lineshape", "--radius", "10", "--interactions", "PN", "--hahn", "--samples", "1024", "--broaden", "100",
            "--out", str(out)]
    assert main(argv) == EXIT_OK
    assert len(read_csv(str(out / "signal_PN.csv"), ["t_s", "value"])["value"]) == 1024
    assert len(read_csv(str(out / "spectrum.csv"), ["freq_Hz"])["freq_Hz"]) == 2 * 4 * 1024 - 1
    assert (out / "hahn.csv").exists()
    widths = read_json(str(out / "widths.json"))["rms_width_Hz"]
    assert set(widths) == {"PN", "combined", "broadened"}
    assert widths["broadened"] > widths["combined"]


def test_dtc(tmp_path):
    """
    Ideal pi pulses alternate the magnetization perfectly.
    """
    out = tmp_path / "dtc"
    assert main(["dtc", "--spins", "3", "--radius", "12", "--N", "16", "--out", str(out)]) == EXIT_OK
    columns = read_csv(str(out / "signal.csv"), ["N", "S"])
    assert np.allclose(columns["S"], (-1.0) ** columns["N"], atol=1e-10)
    result = read_json(str(out / "fraction.json"))
    assert result["f"] == pytest.approx(1.0)
    assert result["time_to_half"] is None
    assert read_json(str(out / "manifest.json"))["derived"]["dimension"] == 8


def test_echo(tmp_path):
    """
    The ideal reversal restores the signal after as many blocks as forward cycles.
    """
    out = tmp_path / "echo"
    argv = ["echo", "--spins", "3", "--radius", "12", "--theta", "1.04pi", "--N", "3", "--Nprime", "0:5",
            "--reversal", "ideal", "--out", str(out)]
    assert main(argv) == EXIT_OK
    columns = read_csv(str(out / "echo.csv"), ["N_prime", "t_s", "S", "envelope"])
    assert len(columns["S"]) == 6
    assert columns["S"][3] == pytest.approx(1.0, abs=1e-10)
    assert columns["envelope"][0] == pytest.approx(math.cos(0.04 * math.pi) ** 3)
    steps = np.diff(columns["t_s"])
    assert np.all(steps > 0)
    assert np.allclose(steps, steps[0])
    assert read_json(str(out / "manifest.json"))["derived"]["S_at_N"] == pytest.approx(1.0, abs=1e-10)
    assert main(["echo", "--Nprime", "1:5", "--spins", "2", "--out", str(out)]) == EXIT_USAGE


def test_echo_finite_period(tmp_path):
    """
    In finite mode without a pulse duration the delay is the period minus a pulse at the default amplitude.
    """
    out = tmp_path / "echo"
    argv = ["echo", "--spins", "2", "--radius", "12", "--theta", "1.08pi", "--N", "2", "--Nprime", "0:3",
            "--mode", "finite", "--T", "200us", "--out", str(out)]
    assert main(argv) == EXIT_OK
    t_p = 1.08 * math.pi / (2.0 * math.pi * 68e3)
    derived = read_json(str(out / "manifest.json"))["derived"]
    assert derived["tau_s"] == pytest.approx(200e-6 - t_p, rel=1e-9)
    times = read_csv(str(out / "echo.csv"), ["t_s"])["t_s"]
    assert times[0] == pytest.approx(2 * 200e-6 + t_p / 2.0 / 1.08, rel=1e-9)


def test_analyze_signal(tmp_path):
    """
    A stored signal is transformed and its crystalline fraction reported.
    """
    numbers = np.arange(1, 65)
    path = tmp_path / "signal.csv"
    write_csv(str(path), ["N", "t_s", "S"], zip(numbers, numbers * 400e-6, (-1.0) ** numbers))
    out = tmp_path / "analysis"
    assert main(["analyze", "--signal", str(path), "--window", "1:32", "--out", str(out)]) == EXIT_OK
    assert read_json(str(out / "fraction.json")) == {"f": pytest.approx(1.0), "window": [1, 32]}
    assert len(read_csv(str(out / "dft.csv"), ["nu"])["nu"]) == 32
    assert main(["analyze", "--signal", str(path), "--window", "1:31", "--out", str(out)]) == 3


def test_analyze_fcurve(tmp_path):
    """
    A stored f(theta) curve is fitted and its boundaries written.
    """
    theta = np.linspace(0.94 * math.pi, 1.06 * math.pi, 25)
    path = tmp_path / "fcurve.csv"
    write_csv(str(path), ["theta_rad", "f"], zip(theta, 0.7 * np.exp(-(theta - math.pi) ** 2 / (2.0 * 0.05 ** 2))))
    out = tmp_path / "analysis"
    assert main(["analyze", "--fcurve", str(path), "--out", str(out)]) == EXIT_OK
    fits = read_json(str(out / "fcurve_fits.json"))
    assert fits["gaussian"]["params"]["A"] == pytest.approx(0.7, rel=1e-5)
    assert fits["super_gaussian"]["params"]["p"] == pytest.approx(2.0, rel=1e-3)
    assert len(read_csv(str(out / "boundaries.csv"), ["cutoff"])["cutoff"]) == 3


def test_analyze_window_model(tmp_path):
    """
    The window model writes one curve per window and the fitted super-Gaussian exponents.
    """
    out = tmp_path / "analysis"
    assert main(["analyze", "--window-model", "--window", "1:128", "--out", str(out)]) == EXIT_OK
    curve = read_csv(str(out / "window_model_1_128.csv"), ["theta_rad", "f"])
    assert len(curve["f"]) == 49
    assert curve["theta_rad"][24] == pytest.approx(math.pi)
    assert set(read_json(str(out / "window_model.json"))["super_gaussian_p"]) == {"1:128"}


def test_analyze_nutation_needs_both(tmp_path):
    """
    A nutation signal without its Hahn-echo decay is a usage error.
    """
    path = tmp_path / "nutation.csv"
    write_csv(str(path), ["t_s", "value"], [(0.0, 1.0), (1e-6, 0.9)])
    assert main(["analyze", "--nutation", str(path), "--out", str(tmp_path / "out")]) == EXIT_USAGE
