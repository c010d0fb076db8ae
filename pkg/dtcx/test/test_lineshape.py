"""
Tests for the Ising line shapes, their spectra and rms widths.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from dtcx.lattice.cluster import Orientation
from dtcx.lattice.cluster import orientation_equivalents
from dtcx.lineshape.ising import Interaction
from dtcx.lineshape.ising import ising_fid
from dtcx.lineshape.ising import lattice_signals
from dtcx.lineshape.ising import predicted_widths
from dtcx.lineshape.signals import TimeSeries
from dtcx.lineshape.signals import combine
from dtcx.lineshape.signals import four_origin_average
from dtcx.lineshape.spectrum import gaussian_broaden
from dtcx.lineshape.spectrum import rms_width
from dtcx.lineshape.spectrum import spectrum
from dtcx.utils.exceptions import DegenerateSpectrumError
from dtcx.utils.exceptions import GridMismatchError
from dtcx.utils.exceptions import InvalidArgumentError

ORIENTATION = Orientation(60.0, 0.0)
RADIUS = 20.25


@pytest.fixture(scope="module")
def signals():
    return lattice_signals(ORIENTATION, RADIUS, list(Interaction))


def _width(*series):
    return rms_width(spectrum(combine(list(series))))


def test_ising_fid_pair():
    """
    A single spin-1/2 partner modulates the signal with cos(bt), a spin-1 partner with (2cos(2bt) + 1)/3.
    """
    b = 2.0 * math.pi * 300.0
    t = 1.0e-5 * np.arange(64)
    half = ising_fid([(b, Fraction(1, 2))], dt=1.0e-5, n_samples=64)
    assert np.allclose(half.values, np.cos(b * t), atol=1e-12)
    like = ising_fid([(b, Fraction(1, 2))], like_spin_scaling=True, dt=1.0e-5, n_samples=64)
    assert np.allclose(like.values, np.cos(1.5 * b * t), atol=1e-12)
    one = ising_fid([(b, Fraction(1))], dt=1.0e-5, n_samples=64)
    assert np.allclose(one.values, (2.0 * np.cos(2.0 * b * t) + 1.0) / 3.0, atol=1e-12)
    assert one.values[0] == pytest.approx(1.0)


def test_ising_fid_arguments():
    """
    Only spins 1/2 and 1 are supported and at least two samples are needed.
    """
    with pytest.raises(InvalidArgumentError):
        ising_fid([(1.0, Fraction(3, 2))])
    with pytest.raises(InvalidArgumentError):
        ising_fid([(1.0, Fraction(1, 2))], n_samples=1)


@pytest.mark.parametrize(
    "interactions, expected", [
        ((Interaction.PP,), 508.0),
        ((Interaction.PH,), 3500.0),
        ((Interaction.PN,), 97.0),
        ((Interaction.PP, Interaction.PN), 517.0),
        ((Interaction.PH, Interaction.PP, Interaction.PN), 3538.0),
    ]
)
def test_widths(signals, interactions, expected):
    """
    The rms widths at (60°, 0°) match the reference values within 2%.
    """
    width = _width(*(signals[i] for i in interactions))
    assert width == pytest.approx(expected, rel=0.02)


def test_widths_follow_local_fields(signals):
    """
    The spectral widths agree within 1% with the widths implied by the root-sum-square couplings.
    """
    predicted = predicted_widths(ORIENTATION, RADIUS)
    for interaction in Interaction:
        assert _width(signals[interaction]) == pytest.approx(predicted[interaction], rel=0.01)


def test_widths_add_in_quadrature(signals):
    """
    The width of the combined signal is the quadrature sum of the individual widths.
    """
    total = _width(*signals.values())
    parts = [_width(signals[i]) for i in Interaction]
    assert total == pytest.approx(math.sqrt(sum(w * w for w in parts)), rel=0.01)


def test_orientation_degeneracy():
    """
    The eight symmetry related orientations give the same signals and spectra for every interaction.
    """
    reference = lattice_signals(ORIENTATION, RADIUS, list(Interaction), n_samples=512)
    for orientation in orientation_equivalents():
        current = lattice_signals(orientation, RADIUS, list(Interaction), n_samples=512)
        for interaction in Interaction:
            assert np.allclose(current[interaction].values, reference[interaction].values, rtol=1e-6, atol=1e-9)
            expected = spectrum(reference[interaction])
            assert np.allclose(spectrum(current[interaction]).amplitudes.real, expected.amplitudes.real,
                               rtol=1e-6, atol=1e-9 * np.max(np.abs(expected.amplitudes.real)))


def test_spectrum_of_gaussian():
    """
    A Gaussian decay gives a real Gaussian line whose rms width is 1/(2πσ_t).
    """
    dt, sigma_t = 5.0e-6, 2.0e-4
    t = dt * np.arange(2048)
    sp = spectrum(TimeSeries(0.0, dt, np.exp(-t ** 2 / (2.0 * sigma_t ** 2))), zero_fill_factor=2)
    assert len(sp) == 2 * 2 * 2048 - 1
    assert np.max(np.abs(sp.amplitudes.imag)) < 1e-9 * np.max(np.abs(sp.amplitudes.real))
    assert np.allclose(sp.frequencies, -sp.frequencies[::-1])
    assert rms_width(sp) == pytest.approx(1.0 / (2.0 * math.pi * sigma_t), rel=1e-3)


def test_broadening_adds_in_quadrature():
    """
    Gaussian broadening of a Gaussian line adds the widths in quadrature.
    """
    dt, sigma_t = 5.0e-6, 2.0e-4
    t = dt * np.arange(2048)
    sp = spectrum(TimeSeries(0.0, dt, np.exp(-t ** 2 / (2.0 * sigma_t ** 2))))
    fwhm = 500.0
    broadened = gaussian_broaden(sp, fwhm)
    sigma = fwhm / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    assert rms_width(broadened) == pytest.approx(math.hypot(rms_width(sp), sigma), rel=1e-3)
    assert gaussian_broaden(sp, 0.0) is sp
    with pytest.raises(InvalidArgumentError):
        gaussian_broaden(sp, -1.0)


def test_spectrum_arguments():
    """
    Signals must start at zero and the zero fill factor must be positive.
    """
    with pytest.raises(InvalidArgumentError):
        spectrum(TimeSeries(1.0e-6, 1.0e-6, np.ones(8)))
    with pytest.raises(InvalidArgumentError):
        spectrum(TimeSeries(0.0, 1.0e-6, np.ones(8)), zero_fill_factor=0)


def test_degenerate_spectrum():
    """
    A spectrum with no positive integral has no width.
    """
    sp = spectrum(TimeSeries(0.0, 1.0e-6, np.zeros(16)))
    with pytest.raises(DegenerateSpectrumError):
        rms_width(sp)


def test_combining_signals():
    """
    Averages and products require identical grids.
    """
    a = TimeSeries(0.0, 1.0e-6, np.array([1.0, 0.5, 0.25]))
    b = TimeSeries(0.0, 1.0e-6, np.array([1.0, 0.0, -0.25]))
    assert np.allclose(four_origin_average([a, b]).values, [1.0, 0.25, 0.0])
    assert np.allclose(combine([a, b]).values, [1.0, 0.0, -0.0625])
    with pytest.raises(GridMismatchError):
        combine([a, TimeSeries(0.0, 2.0e-6, a.values)])
    with pytest.raises(InvalidArgumentError):
        combine([])


def test_interaction_list():
    """
    Interaction lists are parsed case-insensitively.
    """
    assert Interaction.parse_list("pp, PH") == [Interaction.PP, Interaction.PH]
    with pytest.raises(InvalidArgumentError):
        Interaction.parse_list("PX")
