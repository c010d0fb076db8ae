r"""
Analytic line shapes of the central :sup:`31`\ P spin in ADP.

The signals are Ising products over the partners of a coupling table (:mod:`ising <dtcx.lineshape.ising>`),
averaged over the four possible central sites and multiplied across interactions
(:mod:`signals <dtcx.lineshape.signals>`). Their spectra, Gaussian broadening and rms widths live in
:mod:`spectrum <dtcx.lineshape.spectrum>`.

Widths
------
Because every signal equals 1 at :math:`t = 0` and is even in time, the spectral second moment equals
:math:`-S''(0)`. For the product formulas this gives closed forms in the root-sum-square local field
:math:`b_\mathrm{rms} = \sqrt{\sum_j b_j^2}`:

.. math::

   W^\mathrm{P,P} = \tfrac32 b^\mathrm{P}_\mathrm{rms}, \quad W^\mathrm{P,H} = b^\mathrm{H}_\mathrm{rms}, \quad
   W^\mathrm{P,N} = 2\sqrt{2/3}\, b^\mathrm{N}_\mathrm{rms}

and the widths of combined interactions add in quadrature.

Example
-------

.. code-block:: python

   signals = lattice_signals(Orientation(60, 0), 20.25, [Interaction.PP])
   print(rms_width(spectrum(signals[Interaction.PP])))  # about 508 Hz
"""
