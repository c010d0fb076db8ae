r"""
Analysis of discrete time crystal signals.

:mod:`spectral <dtcx.analysis.spectral>`
    The windowed transform of :math:`S(N)` and the crystalline fraction :math:`f`, the share of power at half the
    drive frequency.
:mod:`fitting <dtcx.analysis.fitting>`
    Gaussian, super-Gaussian and Lorentzian fits of :math:`f(\theta)` and the DTC boundaries :math:`f = f_c` derived
    from them.
:mod:`decay <dtcx.analysis.decay>`
    Closed-form decay models: product of cosines, phase transients and angle inhomogeneity.
:mod:`window <dtcx.analysis.window>`
    A model of how the analysis window narrows or widens :math:`f(\theta)`.
:mod:`nutation <dtcx.analysis.nutation>`
    The rf amplitude distribution from a nutation signal corrected by a Hahn-echo decay.

Example
-------

.. code-block:: python

   curve = window_effect_model(np.linspace(0.94, 1.06, 49) * np.pi, (1, 128))
   fit = fit_gaussian(curve.theta, curve.f).require_converged()
   left, right = boundary_extract(fit, 0.1)
"""
