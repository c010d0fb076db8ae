"""
The command line front end: ``python -m dtcx <command> [options]``.

Commands
--------
``lattice``
    Partner counts, the coupling table and with ``--symmetry`` the comparison of the four central sites.
``lineshape``
    Ising line shapes, spectra and rms widths of the selected interactions.
``dtc``
    One DTC run: :math:`S(N)` and its crystalline fraction.
``sweep``
    Crystalline fractions over a grid of angles and delays, Gaussian fits and boundaries.
``echo``
    The DTC echo experiment.
``analyze``
    Analysis of existing signals, :math:`f(\\theta)` curves, the window model and nutation data.

Every command writes into ``--out`` and leaves a ``manifest.json`` there with the resolved configuration, the derived
parameters and the versions of the numerical stack. Options may come from a JSON file given with ``--config``; options
given on the command line take precedence.
"""
