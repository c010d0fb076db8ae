r"""
The ADP crystal lattice, spin clusters around a central :sup:`31`\ P and their dipolar coupling constants.

Modules
-------
#. :mod:`species <dtcx.lattice.species>` holds the three tracked nuclei and the physical constants.
#. :mod:`structure <dtcx.lattice.structure>` builds the unit cell from fractional coordinates and replicates it.
#. :mod:`cluster <dtcx.lattice.cluster>` defines sample orientations and cuts spherical clusters out of the lattice.
#. :mod:`coupling <dtcx.lattice.coupling>` evaluates the secular dipolar couplings of the central spin.
#. :mod:`symmetry <dtcx.lattice.symmetry>` checks which of the four possible centers share coupling multisets.

Conventions
-----------
Lengths are in Å, angles of orientations in degrees, couplings in rad/s. A cluster of radius :math:`R` contains every
site at distance :math:`0 < d \le R` from the center; sites exactly on the sphere are included. The four ammonium
protons of a nitrogen are represented as four coincident spin-1/2 sites on that nitrogen.

Example
-------

.. code-block:: python

   from dtcx.lattice.cluster import Orientation, build_cluster
   from dtcx.lattice.coupling import coupling_table
   from dtcx.lattice.structure import SiteGroup

   cluster = build_cluster(0, 20.25)
   print(cluster.count(SiteGroup.PHOSPHORUS))  # 324 partners
   print(cluster.census())  # 325 P with the center, 322 N, 1932 H
   table = coupling_table(cluster, Orientation(60, 0))
"""
