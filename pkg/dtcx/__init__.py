"""
Simulations of discrete time crystal experiments on the :sup:`31`\\ P spins of ammonium dihydrogen phosphate (ADP).

Subpackages
-----------
:mod:`dtcx.lattice`
    The crystal structure, the clusters of partner spins around a phosphorus site and their dipolar couplings.
:mod:`dtcx.lineshape`
    Analytic Ising line shapes of the central phosphorus and their rms widths.
:mod:`dtcx.pulseq`
    A small language for periodic pulse sequences and the built-in sequences.
:mod:`dtcx.quantum`
    Exact density-matrix dynamics of small spin clusters under those sequences, the DTC echo and average Hamiltonians.
:mod:`dtcx.analysis`
    Crystalline fractions, curve fits, DTC boundaries and closed-form decay models.
:mod:`dtcx.cli`
    The command line front end.

Conventions
-----------
Couplings and frequencies are angular, in rad/s, inside the package; Hz appears only in input and output files.
Times are in seconds and angles in radians. Signals are normalized so that :math:`S = 1` before the first pulse.

Exceptions
==========
Invalid arguments raise :class:`dtcx.utils.exceptions.InvalidArgumentError`, a :class:`ValueError`. Numerical failures
raise subclasses of :class:`dtcx.utils.exceptions.NumericalError`. Both are defined in :mod:`dtcx.utils.exceptions`.
"""

__version__ = "0.1"
