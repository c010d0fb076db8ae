r"""
Executable checks of the sublattice symmetry of ADP.

The four phosphorus sites of the unit cell are related by symmetry operations that map the phosphorus, nitrogen and
ammonium-proton sublattices onto themselves, so the multiset of couplings of the central spin to those partners does
not depend on which phosphorus is chosen as the center. The acid protons are only invariant under part of these
operations: origins :math:`(0,0,0)` and :math:`(\tfrac12,\tfrac12,\tfrac12)` always agree, as do
:math:`(\tfrac12,0,\tfrac14)` and :math:`(0,\tfrac12,\tfrac34)`, while all four agree only when the field lies in the
crystal :math:`x`-:math:`z` or :math:`y`-:math:`z` plane.

:func:`symmetry_report` computes the partition of the four origins into classes of identical coupling multisets, per
site group.
"""

from dataclasses import dataclass

from dtcx.lattice.cluster import Orientation
from dtcx.lattice.cluster import build_cluster
from dtcx.lattice.coupling import CouplingTable
from dtcx.lattice.coupling import coupling_table
from dtcx.lattice.structure import SiteGroup
from dtcx.lattice.structure import UnitCell
from dtcx.utils.helper import multiset_equals

ORIGINS: int = 4


@dataclass(frozen=True)
class SymmetryReport:
    """
    For each site group, the partition of the origin indices into classes with equal coupling multisets.
    """
    radius: float
    orientation: Orientation
    tolerance: float
    classes: dict[SiteGroup, tuple[tuple[int, ...], ...]]

    def invariant(self, group: SiteGroup) -> bool:
        """
        Whether all origins agree for ``group``.
        """
        return len(self.classes[group]) == 1

    @property
    def sublattices_invariant(self) -> bool:
        """
        Whether the phosphorus, nitrogen and ammonium-proton multisets agree across all origins.
        """
        return all(self.invariant(g) for g in (SiteGroup.PHOSPHORUS, SiteGroup.NITROGEN, SiteGroup.AMMONIUM_H))

    @property
    def acid_invariant(self) -> bool:
        """
        Whether the acid-proton multisets agree across all origins.
        """
        return self.invariant(SiteGroup.ACID_H)

    def agreeing_pairs(self, group: SiteGroup) -> list[tuple[int, int]]:
        """
        The origin pairs ``(i, j)`` with ``i < j`` whose multisets agree for ``group``.
        """
        return [(c[i], c[j]) for c in self.classes[group] for i in range(len(c)) for j in range(i + 1, len(c))]

    def to_json(self) -> dict:
        """
        A JSON-compatible rendering of the report.
        """
        return {
            "radius_A": self.radius,
            "orientation": {"theta_deg": self.orientation.theta, "phi_deg": self.orientation.phi},
            "tolerance": self.tolerance,
            "classes": {g.value: [list(c) for c in cs] for g, cs in self.classes.items()},
            "sublattices_invariant": self.sublattices_invariant,
            "acid_invariant": self.acid_invariant,
        }


def four_origin_tables(radius: float, orientation: Orientation, cell: UnitCell = None) -> list[CouplingTable]:
    """
    The coupling tables of the clusters centered on each of the four phosphorus sites.
    """
    return [coupling_table(build_cluster(k, radius, cell), orientation) for k in range(ORIGINS)]


def symmetry_report(radius: float, orientation: Orientation, tolerance: float = 1.0e-9,
                    cell: UnitCell = None) -> SymmetryReport:
    """
    Compare the coupling multisets of the four origins, group by group.

    :param float radius: the cluster radius in Å
    :param Orientation orientation: the orientation of the field
    :param float tolerance: the comparison tolerance relative to the largest :math:`|b|`
    :param UnitCell cell: the unit cell (optional, default :meth:`UnitCell.adp`)
    :return: the report
    :rtype: SymmetryReport
    """
    tables = four_origin_tables(radius, orientation, cell)
    classes: dict[SiteGroup, tuple[tuple[int, ...], ...]] = {}
    for group in SiteGroup:
        values = [t.values(group) for t in tables]
        partition: list[list[int]] = []
        for origin in range(ORIGINS):
            for members in partition:
                if multiset_equals(values[members[0]], values[origin], tolerance):
                    members.append(origin)
                    break
            else:
                partition.append([origin])
        classes[group] = tuple(tuple(m) for m in partition)
    return SymmetryReport(radius, orientation, tolerance, classes)
