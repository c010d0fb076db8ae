r"""
Spectra of line-shape signals, Gaussian broadening and rms widths.

Transform Convention
--------------------
A line-shape signal :math:`S(t)` sampled at :math:`t_k = k\,\Delta t`, :math:`k = 0 \ldots n-1`, is zero filled to
:math:`L = f n` samples and extended as an even function, :math:`S(-t) = S(t)`, into a sequence of odd length
:math:`M = 2L - 1`. Its DFT, multiplied by :math:`\Delta t`, approximates the continuous Fourier transform on the grid
:math:`\nu_k = k / (M \Delta t)`, :math:`|k| \le L - 1`, which is symmetric about zero. Real even signals give real
spectra up to rounding.

The rms width is :math:`W/2\pi = \sqrt{\sum \nu^2 \mathrm{Re}\,S(\nu) / \sum \mathrm{Re}\,S(\nu)}`, summed over the
whole grid including negative truncation lobes. Widths are taken from the unfilled transform; spectra written for
display are zero filled by :data:`DISPLAY_ZERO_FILL`.
"""

import math

import numpy as np

from dtcx.lineshape.signals import Spectrum
from dtcx.lineshape.signals import TimeSeries
from dtcx.utils.exceptions import DegenerateSpectrumError
from dtcx.utils.exceptions import InvalidArgumentError

FWHM_PER_SIGMA: float = 2.0 * math.sqrt(2.0 * math.log(2.0))
DISPLAY_ZERO_FILL: int = 4


def spectrum(s: TimeSeries, zero_fill_factor: int = 1) -> Spectrum:
    """
    The spectrum of a line-shape signal starting at :math:`t = 0`, using the even extension convention.

    :param TimeSeries s: the signal
    :param int zero_fill_factor: the zero fill factor :math:`f \\ge 1`
    :return: the spectrum
    :rtype: Spectrum
    """
    if zero_fill_factor < 1:
        raise InvalidArgumentError("zero_fill_factor must be >= 1")
    if s.t0 != 0:
        raise InvalidArgumentError("line-shape signals must start at t = 0")
    half = np.zeros(len(s) * zero_fill_factor)
    half[:len(s)] = s.values
    sequence = np.concatenate([half, half[:0:-1]])
    frequencies = np.fft.fftshift(np.fft.fftfreq(len(sequence), s.dt))
    amplitudes = np.fft.fftshift(np.fft.fft(sequence)) * s.dt
    return Spectrum(frequencies, amplitudes, s.dt)


def gaussian_broaden(sp: Spectrum, fwhm: float) -> Spectrum:
    r"""
    Convolve a spectrum with a unit-area Gaussian of full width at half maximum ``fwhm`` (Hz).

    The convolution is carried out as a multiplication of the time-domain signal by
    :math:`\exp(-t^2 / 2\sigma_t^2)` with :math:`\sigma_t = 1 / (2\pi\sigma_\nu)`.

    :param Spectrum sp: the spectrum
    :param float fwhm: the width in Hz, ``0`` for no broadening
    :return: the broadened spectrum
    :rtype: Spectrum
    """
    if fwhm < 0:
        raise InvalidArgumentError("fwhm must be >= 0")
    if fwhm == 0:
        return sp
    count = len(sp)
    sequence = np.fft.ifft(np.fft.ifftshift(sp.amplitudes)) / sp.dt
    t = np.fft.fftfreq(count) * count * sp.dt
    sigma_t = 1.0 / (2.0 * math.pi * fwhm / FWHM_PER_SIGMA)
    apodized = sequence * np.exp(-t ** 2 / (2.0 * sigma_t ** 2))
    return Spectrum(sp.frequencies, np.fft.fftshift(np.fft.fft(apodized)) * sp.dt, sp.dt)


def rms_width(sp: Spectrum) -> float:
    """
    The rms width :math:`W/2\\pi` in Hz of a spectrum.

    :param Spectrum sp: the spectrum
    :return: the width in Hz
    :rtype: float
    """
    real = sp.amplitudes.real
    norm = float(np.sum(real))
    if norm <= 0:
        raise DegenerateSpectrumError("spectrum has a nonpositive integral")
    moment = float(np.sum(sp.frequencies ** 2 * real)) / norm
    if moment < 0:
        raise DegenerateSpectrumError("spectrum has a negative second moment")
    return math.sqrt(moment)
