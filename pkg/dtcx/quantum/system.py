r"""
Small spin systems for exact dynamics.

A :class:`SpinSystem` lists its spins, the symmetric matrix of couplings :math:`b_{ij}` in rad/s and the Zeeman offsets
:math:`\Omega_i` in rad/s. A pair of :sup:`31`\ P spins is coupled by the full secular dipolar interaction; every other
pair is an Ising coupling. Systems are immutable once built.

.. code-block:: python

   system = (SpinSystemBuilder()
             .add_spin(P31)
             .add_spin(P31)
             .couple(0, 1, 2.0 * math.pi * 300.0)
             .build())
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from dtcx.lattice.coupling import CouplingTable
from dtcx.lattice.coupling import pair_couplings
from dtcx.lattice.species import P31
from dtcx.lattice.species import SpinSpecies
from dtcx.lattice.structure import SiteGroup
from dtcx.utils.exceptions import DimensionOverflowError
from dtcx.utils.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

DEFAULT_DIMENSION_CAP: int = 4096


class CouplingClass(enum.Enum):
    """
    The form of a pair interaction.
    """
    HOMONUCLEAR = "homonuclear"
    HETERONUCLEAR = "heteronuclear"


@dataclass(frozen=True, eq=False)
class SpinSystem:
    """
    Spins, couplings and offsets of a cluster. Index 0 is conventionally the observed central phosphorus.
    """
    species: tuple[SpinSpecies, ...]
    couplings: np.ndarray
    offsets: np.ndarray
    dimension_cap: int = DEFAULT_DIMENSION_CAP

    def __post_init__(self) -> None:
        count = len(self.species)
        if count == 0:
            raise InvalidArgumentError("a spin system needs at least one spin")
        couplings = np.array(self.couplings, dtype=float)
        offsets = np.array(self.offsets, dtype=float)
        if couplings.shape != (count, count) or offsets.shape != (count,):
            raise InvalidArgumentError("couplings and offsets must match the number of spins")
        if not (np.all(np.isfinite(couplings)) and np.all(np.isfinite(offsets))):
            raise InvalidArgumentError("couplings and offsets must be finite")
        if not np.array_equal(couplings, couplings.T) or np.any(np.diag(couplings) != 0):
            raise InvalidArgumentError("couplings must be symmetric with a zero diagonal")
        if self.dimension > self.dimension_cap:
            raise DimensionOverflowError(f"hilbert space dimension {self.dimension} exceeds the cap "
                                         f"{self.dimension_cap}")
        couplings.setflags(write=False)
        offsets.setflags(write=False)
        object.__setattr__(self, "couplings", couplings)
        object.__setattr__(self, "offsets", offsets)

    def __len__(self) -> int:
        return len(self.species)

    @property
    def dims(self) -> tuple[int, ...]:
        """
        The dimension of each spin.
        """
        return tuple(s.multiplicity for s in self.species)

    @property
    def dimension(self) -> int:
        """
        The dimension of the product space.
        """
        return int(np.prod(self.dims, dtype=int))

    @property
    def phosphorus(self) -> list[int]:
        """
        The indices of the :sup:`31`\\ P spins, the only ones the pulses act on.
        """
        return [k for k, s in enumerate(self.species) if s == P31]

    def pair_class(self, i: int, j: int) -> CouplingClass:
        """
        The form of the interaction between spins ``i`` and ``j``.
        """
        both = self.species[i] == P31 and self.species[j] == P31
        return CouplingClass.HOMONUCLEAR if both else CouplingClass.HETERONUCLEAR

    def pairs(self) -> list[tuple[int, int, float, CouplingClass]]:
        """
        The nonzero couplings as ``(i, j, b, class)`` with ``i < j``.
        """
        rows, cols = np.nonzero(np.triu(self.couplings, k=1))
        return [(int(i), int(j), float(self.couplings[i, j]), self.pair_class(int(i), int(j)))
                for i, j in zip(rows, cols)]

    def without(self, *removed: SpinSpecies) -> SpinSystem:
        """
        The system with every spin of the ``removed`` species dropped.
        """
        keep = [k for k, s in enumerate(self.species) if s not in removed]
        return SpinSystem(tuple(self.species[k] for k in keep), self.couplings[np.ix_(keep, keep)],
                          self.offsets[keep], self.dimension_cap)

    def to_json(self) -> dict:
        """
        A description of the system for run metadata.
        """
        return {
            "species": [s.name.value for s in self.species],
            "couplings_rad_per_s": self.couplings.tolist(),
            "offsets_rad_per_s": self.offsets.tolist(),
            "dimension": self.dimension,
        }

    @staticmethod
    def from_coupling_table(table: CouplingTable, n_phosphorus: int = 7, n_hydrogen: int = 0, n_nitrogen: int = 0,
                            zeeman_offset: float = 0.0, dimension_cap: int = DEFAULT_DIMENSION_CAP) -> SpinSystem:
        """
        The central phosphorus of ``table`` with its strongest partners.

        The partners of each kind are the rows of largest :math:`|b|` to the center. Couplings of every pair that
        involves a phosphorus spin are evaluated from the positions; pairs of two other spins stay uncoupled.

        :param CouplingTable table: the coupling table of the central spin
        :param int n_phosphorus: the number of phosphorus neighbors
        :param int n_hydrogen: the number of protons of either family
        :param int n_nitrogen: the number of nitrogen partners
        :param float zeeman_offset: the offset :math:`\\Omega_T` in rad/s of every phosphorus spin
        :param int dimension_cap: the largest allowed Hilbert space dimension
        :return: the system, with the center at index 0
        :rtype: SpinSystem
        """
        if min(n_phosphorus, n_hydrogen, n_nitrogen) < 0:
            raise InvalidArgumentError("partner counts must be >= 0")
        rows = (table.strongest(n_phosphorus, SiteGroup.PHOSPHORUS)
                + table.strongest(n_hydrogen, SiteGroup.AMMONIUM_H, SiteGroup.ACID_H)
                + table.strongest(n_nitrogen, SiteGroup.NITROGEN))
        species = (P31,) + tuple(table.groups[r].species for r in rows)
        dimension = int(np.prod([s.multiplicity for s in species], dtype=int))
        if dimension > dimension_cap:
            raise DimensionOverflowError(f"hilbert space dimension {dimension} exceeds the cap {dimension_cap}")
        positions = np.vstack([np.zeros((1, 3))] + [table.positions[r].reshape(1, 3) for r in rows])
        observed = np.array([s == P31 for s in species])
        couplings = pair_couplings(positions, species, table.orientation, observed[:, None] | observed[None, :])
        offsets = np.where(observed, zeeman_offset, 0.0)
        logger.debug("spin system from table: %d P, %d H, %d N, dimension %d", n_phosphorus + 1,
                     n_hydrogen, n_nitrogen, dimension)
        return SpinSystem(species, couplings, offsets, dimension_cap)


class SpinSystemBuilder:
    """
    Incremental construction of a :class:`SpinSystem`.
    """

    def __init__(self) -> None:
        self.__species: list[SpinSpecies] = []
        self.__offsets: list[float] = []
        self.__couplings: dict[tuple[int, int], float] = {}
        self.__cap: int = DEFAULT_DIMENSION_CAP

    def add_spin(self, species: SpinSpecies, offset: float = 0.0) -> SpinSystemBuilder:
        """
        Append a spin with Zeeman offset ``offset`` (rad/s).

        :return: this builder
        :rtype: SpinSystemBuilder
        """
        self.__species.append(species)
        self.__offsets.append(offset)
        return self

    def couple(self, i: int, j: int, b: float) -> SpinSystemBuilder:
        """
        Set the coupling of spins ``i`` and ``j`` to ``b`` (rad/s).

        :return: this builder
        :rtype: SpinSystemBuilder
        """
        if i == j or not (0 <= i < len(self.__species) and 0 <= j < len(self.__species)):
            raise InvalidArgumentError(f"invalid spin pair ({i}, {j})")
        self.__couplings[(min(i, j), max(i, j))] = b
        return self

    def offset(self, i: int, omega: float) -> SpinSystemBuilder:
        """
        Set the Zeeman offset of spin ``i``.

        :return: this builder
        :rtype: SpinSystemBuilder
        """
        if not 0 <= i < len(self.__species):
            raise InvalidArgumentError(f"invalid spin index {i}")
        self.__offsets[i] = omega
        return self

    def dimension_cap(self, cap: int) -> SpinSystemBuilder:
        """
        Set the largest allowed Hilbert space dimension.

        :return: this builder
        :rtype: SpinSystemBuilder
        """
        if cap < 1:
            raise InvalidArgumentError("cap must be >= 1")
        self.__cap = cap
        return self

    def build(self) -> SpinSystem:
        """
        The system described so far.
        """
        count = len(self.__species)
        couplings = np.zeros((count, count))
        for (i, j), b in self.__couplings.items():
            couplings[i, j] = couplings[j, i] = b
        return SpinSystem(tuple(self.__species), couplings, np.array(self.__offsets, dtype=float), self.__cap)
