r"""
Exact density-matrix dynamics of small :sup:`31`\ P clusters.

Modules
-------
:mod:`operators <dtcx.quantum.operators>`
    spin matrices and their embedding in product spaces;
:mod:`system <dtcx.quantum.system>`
    :class:`SpinSystem <dtcx.quantum.system.SpinSystem>`, its builder and its construction from a coupling table;
:mod:`hamiltonian <dtcx.quantum.hamiltonian>`
    the internal Hamiltonian and the dipolar forms along each axis;
:mod:`propagator <dtcx.quantum.propagator>`
    cached propagators of delays and pulses;
:mod:`engine <dtcx.quantum.engine>`
    stroboscopic signals :math:`S(N)` of repeated sequences and free induction decays;
:mod:`echo <dtcx.quantum.echo>`
    the DTC echo experiment;
:mod:`average <dtcx.quantum.average>`
    zeroth-order average Hamiltonians.

Conventions
-----------
Hamiltonians are in rad/s. The deviation density matrix starts as :math:`\rho_0 = I_{z_T}` summed over the
phosphorus spins, and signals are normalized so that :math:`S = 1` for the initial state. Protons and nitrogen are
static Ising partners: switching the protons off removes them from the system, which models ideal decoupling.

Example
-------

.. code-block:: python

   table = coupling_table(build_cluster(0, 12.0), Orientation(60, 0))
   system = SpinSystem.from_coupling_table(table, n_phosphorus=3)
   program = builtin("dtc", {"theta": "1.04pi", "tau": "392.5us", "t_p": "7.5us", "mode": "finite"})
   signal = run_sequence(system, program, 128)
   print(crystalline_fraction(signal))
"""
