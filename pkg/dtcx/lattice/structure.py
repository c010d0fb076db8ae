r"""
Crystal structure of ammonium dihydrogen phosphate (ADP) and its replication into supercells.

The tetragonal unit cell has :math:`a = b = 7.4997` Å and :math:`c = 7.5494` Å. The four :sup:`31`\ P sites are

.. math::

   (0,0,0),\ (\tfrac12,\tfrac12,\tfrac12),\ (\tfrac12,0,\tfrac14),\ (0,\tfrac12,\tfrac34)

and each :sup:`14`\ N site is the :sup:`31`\ P site shifted by :math:`\tfrac12` along :math:`c`. The four ammonium
protons of each nitrogen are placed at their time-averaged location, the nitrogen site itself, as four coincident
spin-1/2 sites. The eight acid protons sit at the averaged positions

.. math::

   \{(0,0,0), (\tfrac12,\tfrac12,\tfrac12)\} + \{(x,\tfrac14,\tfrac78), (-x,\tfrac34,\tfrac78),
   (\tfrac14,-x,\tfrac18), (\tfrac34,x,\tfrac18)\}

with :math:`x = 0.147`. These are the tabulated space-group positions written with :math:`c` inverted, the same frame
in which the phosphorus sites above are given, so that every acid proton bridges two phosphate groups at 2.37 Å from
each phosphorus. Fractional coordinates are wrapped into :math:`[0, 1)`.

Override File
-------------
A different structure can be loaded with :meth:`UnitCell.from_json` from a document of the form

.. code-block:: json

   {"a": 7.4997, "b": 7.4997, "c": 7.5494,
    "sites": {"P": [[0, 0, 0]], "N": [[0, 0, 0.5]], "H_acid": [], "H_ammonium": [[0, 0, 0.5]]}}

where ``H_ammonium`` lists one entry per proton (coincident sites are repeated).
"""

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable
from typing import Mapping
from typing import Sequence

import numpy as np

from dtcx.lattice.species import H1
from dtcx.lattice.species import N14
from dtcx.lattice.species import P31
from dtcx.lattice.species import SpinSpecies
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.io import read_json

ACID_PROTON_PARAMETER: float = 0.147

Vector = tuple[float, float, float]


class SiteGroup(enum.Enum):
    """
    The families of sites in the structure. The two proton families share a species but not a symmetry.
    """
    PHOSPHORUS = "P"
    NITROGEN = "N"
    AMMONIUM_H = "H_ammonium"
    ACID_H = "H_acid"

    @property
    def species(self) -> SpinSpecies:
        """
        The nuclear species living on sites of this group.
        """
        if self is SiteGroup.PHOSPHORUS:
            return P31
        if self is SiteGroup.NITROGEN:
            return N14
        return H1


@dataclass(frozen=True)
class Site:
    """
    A spin site in Cartesian coordinates (Å).
    """
    position: Vector
    group: SiteGroup

    @property
    def species(self) -> SpinSpecies:
        """
        The species of the site.
        """
        return self.group.species


@dataclass(frozen=True)
class UnitCell:
    """
    An orthogonal unit cell with lattice lengths in Å and fractional site lists per group.
    """
    a: float
    b: float
    c: float
    sites: Mapping[SiteGroup, tuple[Vector, ...]]

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) <= 0:
            raise InvalidArgumentError("lattice lengths must be > 0")

    @property
    def lengths(self) -> np.ndarray:
        """
        The lattice lengths as an array ``[a, b, c]``.
        """
        return np.array([self.a, self.b, self.c])

    def site_count(self, group: SiteGroup) -> int:
        """
        The number of sites of ``group`` in one cell.
        """
        return len(self.sites.get(group, ()))

    def fractional(self) -> tuple[np.ndarray, list[SiteGroup]]:
        """
        All fractional coordinates of the cell as an ``(n, 3)`` array together with the group of each row.
        """
        groups: list[SiteGroup] = []
        rows: list[Vector] = []
        for group in SiteGroup:
            for site in self.sites.get(group, ()):
                rows.append(site)
                groups.append(group)
        return np.array(rows, dtype=float).reshape(-1, 3), groups

    def to_cartesian(self, fractional: Sequence[float]) -> np.ndarray:
        """
        Convert fractional coordinates to Cartesian Å.
        """
        return np.asarray(fractional, dtype=float) * self.lengths

    @staticmethod
    def adp(x: float = ACID_PROTON_PARAMETER) -> "UnitCell":
        """
        The built-in ADP unit cell.

        :param float x: the acid proton position parameter
        :return: the unit cell
        :rtype: UnitCell
        """
        phosphorus: list[Vector] = [(0.0, 0.0, 0.0), (0.5, 0.5, 0.5), (0.5, 0.0, 0.25), (0.0, 0.5, 0.75)]
        nitrogen: list[Vector] = [_wrap((p[0], p[1], p[2] + 0.5)) for p in phosphorus]
        motif: list[Vector] = [(x, 0.25, 0.875), (-x, 0.75, 0.875), (0.25, -x, 0.125), (0.75, x, 0.125)]
        acid: list[Vector] = [
            _wrap((o[0] + m[0], o[1] + m[1], o[2] + m[2]))
            for o in ((0.0, 0.0, 0.0), (0.5, 0.5, 0.5)) for m in motif
        ]
        ammonium: list[Vector] = [n for n in nitrogen for _ in range(4)]
        return UnitCell(7.4997, 7.4997, 7.5494, {
            SiteGroup.PHOSPHORUS: tuple(phosphorus),
            SiteGroup.NITROGEN: tuple(nitrogen),
            SiteGroup.AMMONIUM_H: tuple(ammonium),
            SiteGroup.ACID_H: tuple(acid),
        })

    @staticmethod
    def from_json(path: str) -> "UnitCell":
        """
        Load a unit cell from an override file (see the module documentation for the format).
        """
        document = read_json(path)
        try:
            sites = {
                SiteGroup(key): tuple(_wrap(tuple(float(v) for v in row)) for row in rows)
                for key, rows in document["sites"].items()
            }
            return UnitCell(float(document["a"]), float(document["b"]), float(document["c"]), sites)
        except (KeyError, TypeError, ValueError) as error:
            raise InvalidArgumentError(f"{path}: invalid unit cell override ({error})") from error


def build_supercell(extent: int, cell: UnitCell = None) -> list[Site]:
    """
    Replicate the unit cell ``extent`` times along each axis and return all sites in Cartesian coordinates.

    :param int extent: the number of cells per axis
    :param UnitCell cell: the unit cell (optional, default :meth:`UnitCell.adp`)
    :return: the sites of the supercell
    :rtype: list[Site]
    """
    if extent < 1:
        raise InvalidArgumentError("extent must be >= 1")
    cell = cell if cell is not None else UnitCell.adp()
    positions, groups = replicate(cell, range(extent))
    return [Site(tuple(float(v) for v in p), g) for p, g in zip(positions, groups)]  # type: ignore[misc]


def replicate(cell: UnitCell, offsets: Iterable[int]) -> tuple[np.ndarray, list[SiteGroup]]:
    """
    Replicate the unit cell over the cube of integer cell offsets ``offsets``³.

    :param UnitCell cell: the unit cell
    :param Iterable[int] offsets: the cell offsets used along every axis
    :return: the Cartesian positions as an ``(n, 3)`` array and the group of every row
    :rtype: tuple[numpy.ndarray, list[SiteGroup]]
    """
    fractional, groups = cell.fractional()
    offsets = list(offsets)
    translations = np.array(list(itertools.product(offsets, repeat=3)), dtype=float)
    positions = (translations[:, None, :] + fractional[None, :, :]).reshape(-1, 3) * cell.lengths
    return positions, groups * len(translations)


def _wrap(site: Sequence[float]) -> Vector:
    return (site[0] % 1.0, site[1] % 1.0, site[2] % 1.0)
