"""
Sample orientations and spherical spin clusters centered on a phosphorus site.
"""

import logging
import math
from dataclasses import dataclass
from dataclasses import field

import numpy as np

from dtcx.lattice.structure import Site
from dtcx.lattice.structure import SiteGroup
from dtcx.lattice.structure import UnitCell
from dtcx.lattice.structure import replicate
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.literals import parse_pair

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Orientation:
    """
    Direction of the static field relative to the crystal axes, as polar and azimuthal angles in degrees.
    """
    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= 180.0:
            raise InvalidArgumentError("theta must be in [0, 180]")
        if not 0.0 <= self.phi < 360.0:
            raise InvalidArgumentError("phi must be in [0, 360)")

    def field_direction(self) -> np.ndarray:
        """
        The unit vector of the field in crystal axes ``(a, b, c) = (x, y, z)``.
        """
        theta = math.radians(self.theta)
        phi = math.radians(self.phi)
        return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])

    def label(self) -> str:
        """
        The orientation as ``theta,phi``.
        """
        return f"{self.theta:g},{self.phi:g}"

    @staticmethod
    def parse(text: str) -> "Orientation":
        """
        Parse ``THETA,PHI`` in degrees.
        """
        theta, phi = parse_pair(text)
        return Orientation(theta, phi)


def orientation_equivalents() -> list[Orientation]:
    """
    The eight orientations :math:`(n \\cdot 60°, m \\cdot 90°)` with :math:`n \\in \\{1, 2\\}` and
    :math:`m \\in \\{0, 1, 2, 3\\}`, which the structure maps onto each other.
    """
    return [Orientation(60.0 * n, 90.0 * m) for n in (1, 2) for m in range(4)]


@dataclass(frozen=True, eq=False)
class SpinCluster:
    """
    The sites within ``radius`` of one of the four phosphorus sites of the unit cell.

    Positions are stored relative to the central phosphorus, which itself is not part of ``positions``.
    """
    origin_index: int
    radius: float
    positions: np.ndarray
    groups: tuple[SiteGroup, ...]
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __len__(self) -> int:
        return len(self.groups)

    def sites(self) -> list[Site]:
        """
        The partner sites as :class:`Site` records, relative to the center.
        """
        return [Site(tuple(float(v) for v in p), g) for p, g in zip(self.positions, self.groups)]  # type: ignore

    def count(self, *groups: SiteGroup) -> int:
        """
        The number of partner sites belonging to any of ``groups``.
        """
        return sum(1 for g in self.groups if g in groups)

    def census(self) -> dict[str, int]:
        """
        The number of nuclei of each species inside the ball, the central phosphorus included.

        :return: the counts keyed by ``phosphorus``, ``nitrogen`` and ``hydrogen``
        :rtype: dict[str, int]
        """
        return {
            "phosphorus": self.count(SiteGroup.PHOSPHORUS) + 1,
            "nitrogen": self.count(SiteGroup.NITROGEN),
            "hydrogen": self.count(SiteGroup.AMMONIUM_H, SiteGroup.ACID_H),
        }


def build_cluster(origin_index: int, radius: float, cell: UnitCell = None) -> SpinCluster:
    """
    Collect every site at distance :math:`0 < d \\le R` from the chosen phosphorus site.

    The supercell is grown symmetrically around the central cell until it contains the whole ball.

    :param int origin_index: the index (0..3) of the central phosphorus in the unit cell
    :param float radius: the radius of the ball in Å
    :param UnitCell cell: the unit cell (optional, default :meth:`UnitCell.adp`)
    :return: the cluster
    :rtype: SpinCluster
    """
    cell = cell if cell is not None else UnitCell.adp()
    phosphorus = cell.sites.get(SiteGroup.PHOSPHORUS, ())
    if not 0 <= origin_index < len(phosphorus):
        raise InvalidArgumentError(f"origin_index must be in 0..{len(phosphorus) - 1}")
    if radius <= 0:
        raise InvalidArgumentError("radius must be > 0")
    center = cell.to_cartesian(phosphorus[origin_index])
    reach = math.ceil(radius / float(np.min(cell.lengths))) + 1
    positions, groups = replicate(cell, range(-reach, reach + 1))
    relative = positions - center
    distance = np.linalg.norm(relative, axis=1)
    mask = (distance > 1.0e-9) & (distance <= radius)
    selected = np.nonzero(mask)[0]
    cluster = SpinCluster(origin_index, radius, relative[selected], tuple(groups[i] for i in selected), center)
    logger.debug("cluster origin=%d radius=%g has %d partners", origin_index, radius, len(cluster))
    return cluster
