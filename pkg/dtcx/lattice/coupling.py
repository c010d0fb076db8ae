r"""
Secular dipolar coupling constants between the central :sup:`31`\ P spin and its partners.

For a partner :math:`j` at internuclear vector :math:`\vec r` the coupling, expressed as an angular frequency, is

.. math::

   b_{1j} = \frac{B_{1j}}{\hbar} = \frac{\mu_0}{4\pi} \gamma_P \gamma_j \hbar \frac{1 - 3\cos^2\theta_{1j}}{2 r^3}

where :math:`\theta_{1j}` is the angle between :math:`\vec r` and the static field. All couplings are stored in
rad/s; conversion to Hz happens only when writing files.

Usage
-----

.. code-block:: python

   cluster = build_cluster(0, 20.25)
   table = coupling_table(cluster, Orientation(60, 0))
   print(b_rms(table.values(SiteGroup.PHOSPHORUS)))
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from typing import Iterable
from typing import Sequence

import numpy as np

from dtcx.lattice.cluster import Orientation
from dtcx.lattice.cluster import SpinCluster
from dtcx.lattice.species import HBAR
from dtcx.lattice.species import MU0_OVER_4PI
from dtcx.lattice.species import P31
from dtcx.lattice.species import SpinSpecies
from dtcx.lattice.structure import SiteGroup
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.io import write_csv
from dtcx.utils.io import write_json

logger = logging.getLogger(__name__)

ANGSTROM: float = 1.0e-10


def coupling_constant(r_vec: Sequence[float], species_j: SpinSpecies, orientation: Orientation,
                      species_i: SpinSpecies = P31) -> float:
    """
    The secular dipolar coupling :math:`b_{ij}` in rad/s between two spins separated by ``r_vec`` (Å).

    :param Sequence[float] r_vec: the internuclear vector in Å
    :param SpinSpecies species_j: the species of the partner
    :param Orientation orientation: the orientation of the field
    :param SpinSpecies species_i: the species of the first spin (optional, default :data:`P31`)
    :return: the coupling in rad/s
    :rtype: float
    """
    return float(_couplings(np.asarray(r_vec, dtype=float).reshape(1, 3), species_i.gamma * species_j.gamma,
                            orientation.field_direction())[0])


def _couplings(vectors: np.ndarray, gamma_product: np.ndarray | float, direction: np.ndarray) -> np.ndarray:
    distance = np.linalg.norm(vectors, axis=1)
    if np.any(distance == 0):
        raise InvalidArgumentError("internuclear vector must be nonzero")
    cosine = vectors @ direction / distance
    prefactor = MU0_OVER_4PI * gamma_product * HBAR
    return prefactor * (1.0 - 3.0 * cosine ** 2) / (2.0 * (distance * ANGSTROM) ** 3)


@dataclass(frozen=True)
class CouplingEntry:
    """
    One row of a :class:`CouplingTable`.
    """
    partner_index: int
    group: SiteGroup
    position: tuple[float, float, float]
    b: float

    @property
    def species(self) -> SpinSpecies:
        """
        The species of the partner.
        """
        return self.group.species


@dataclass(frozen=True, eq=False)
class CouplingTable:
    """
    The couplings of the central spin of a cluster to each of its partners at a given orientation.

    ``couplings[k]`` belongs to the partner at ``positions[k]`` (Å, relative to the center) of group ``groups[k]``.
    """
    orientation: Orientation
    origin_index: int
    positions: np.ndarray
    groups: tuple[SiteGroup, ...]
    couplings: np.ndarray

    def __len__(self) -> int:
        return len(self.groups)

    def entries(self) -> list[CouplingEntry]:
        """
        The rows of the table.
        """
        return [
            CouplingEntry(k, g, tuple(float(v) for v in p), float(b))  # type: ignore[arg-type]
            for k, (p, g, b) in enumerate(zip(self.positions, self.groups, self.couplings))
        ]

    def mask(self, *groups: SiteGroup) -> np.ndarray:
        """
        A boolean mask selecting the rows of any of ``groups``.
        """
        return np.array([g in groups for g in self.groups], dtype=bool)

    def values(self, *groups: SiteGroup) -> np.ndarray:
        """
        The couplings of the rows belonging to any of ``groups``.
        """
        return self.couplings[self.mask(*groups)]

    def strongest(self, count: int, *groups: SiteGroup) -> list[int]:
        """
        The row indices of the ``count`` strongest partners among ``groups``.

        Ties in :math:`|b|` are broken by distance and then by row index, so the order is deterministic.
        """
        rows = np.nonzero(self.mask(*groups))[0]
        distance = np.linalg.norm(self.positions[rows], axis=1) if len(rows) else np.zeros(0)
        order = sorted(range(len(rows)), key=lambda k: (-abs(self.couplings[rows[k]]), distance[k], rows[k]))
        return [int(rows[k]) for k in order[:count]]


def coupling_table(cluster: SpinCluster, orientation: Orientation) -> CouplingTable:
    """
    Evaluate the coupling of the central phosphorus to every partner of ``cluster``.

    :param SpinCluster cluster: the cluster
    :param Orientation orientation: the orientation of the field
    :return: the table with one row per partner
    :rtype: CouplingTable
    """
    gammas = np.array([P31.gamma * g.species.gamma for g in cluster.groups])
    if len(cluster) == 0:
        values = np.zeros(0)
    else:
        values = _couplings(cluster.positions, gammas, orientation.field_direction())
    logger.debug("coupling table origin=%d orientation=%s rows=%d", cluster.origin_index, orientation.label(),
                 len(values))
    return CouplingTable(orientation, cluster.origin_index, cluster.positions, cluster.groups, values)


def pair_couplings(positions: np.ndarray, species: Sequence[SpinSpecies], orientation: Orientation,
                   selected: np.ndarray = None) -> np.ndarray:
    """
    The symmetric matrix of couplings among arbitrary spins at ``positions`` (Å). The diagonal is zero, and so are the
    pairs left out by the boolean matrix ``selected``, which may then sit on the same site.
    """
    count = len(species)
    matrix = np.zeros((count, count))
    direction = orientation.field_direction()
    for i in range(count):
        for j in range(i + 1, count):
            if selected is not None and not selected[i, j]:
                continue
            vector = (positions[j] - positions[i]).reshape(1, 3)
            matrix[i, j] = matrix[j, i] = _couplings(vector, species[i].gamma * species[j].gamma, direction)[0]
    return matrix


def b_rms(couplings: Iterable[float]) -> float:
    r"""
    The root-sum-square local field :math:`\sqrt{\sum_j b_j^2}` in rad/s.
    """
    values = np.asarray(list(couplings), dtype=float)
    return float(math.sqrt(np.sum(values ** 2)))


def b_rms_four_origin(tables: Sequence[CouplingTable], *groups: SiteGroup) -> float:
    r"""
    The local field averaged over origins, :math:`\sqrt{\langle \sum_j b_j^2 \rangle}`, for the rows of ``groups``.
    """
    if not tables:
        raise InvalidArgumentError("tables must not be empty")
    return float(math.sqrt(np.mean([np.sum(t.values(*groups) ** 2) for t in tables])))


def export_coupling_table(table: CouplingTable, directory: str, stem: str = "couplings") -> tuple[str, str]:
    """
    Write the table as CSV and its orientation and origin as a JSON sidecar.

    :return: the paths of the CSV file and of the sidecar
    :rtype: tuple[str, str]
    """
    csv_path = os.path.join(directory, f"{stem}.csv")
    json_path = os.path.join(directory, f"{stem}.json")
    write_csv(csv_path, ["partner_index", "species", "x_A", "y_A", "z_A", "b_rad_per_s"], (
        (e.partner_index, e.species.name.value, *e.position, e.b) for e in table.entries()
    ))
    write_json(json_path, {
        "orientation": {"theta_deg": table.orientation.theta, "phi_deg": table.orientation.phi},
        "origin_index": table.origin_index,
        "rows": len(table),
    })
    return csv_path, json_path
