r"""
Analytic time-domain line shapes of the central :sup:`31`\ P spin in the Ising approximation.

When all couplings to the central spin are treated as Ising terms, its transverse signal factorizes over partners:

.. math::

   S(t) = \prod_j \sum_k p_k \cos(m_k \, 2 b_j t)

where the sum runs over the Zeeman levels :math:`m_k` of partner :math:`j`, each with probability :math:`p_k`. A
spin-1/2 partner contributes :math:`\cos(b_j t)`, a spin-1 partner :math:`\{2\cos(2 b_j t) + 1\}/3`. Like-spin
(phosphorus-phosphorus) couplings also carry flip-flop terms; their second moment is reproduced by scaling the
couplings by 3/2 inside the cosine.

Each interaction is evaluated for the four possible central sites and the results are averaged; the interactions are
then combined by multiplication (see :func:`dtcx.lineshape.signals.combine`).
"""

import enum
import logging
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from dtcx.lattice.cluster import Orientation
from dtcx.lattice.coupling import CouplingTable
from dtcx.lattice.coupling import b_rms_four_origin
from dtcx.lattice.structure import SiteGroup
from dtcx.lattice.structure import UnitCell
from dtcx.lattice.symmetry import four_origin_tables
from dtcx.lineshape.signals import TimeSeries
from dtcx.lineshape.signals import four_origin_average
from dtcx.utils.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

DEFAULT_DT: float = 5.0e-6
DEFAULT_SAMPLES: int = 4096
LIKE_SPIN_SCALING: float = 1.5
_CHUNK: int = 256


class Interaction(enum.Enum):
    """
    The couplings of the central phosphorus that enter a line shape.
    """
    PP = "PP"
    PH = "PH"
    PN = "PN"

    @property
    def groups(self) -> tuple[SiteGroup, ...]:
        """
        The site groups of the partners of this interaction.
        """
        if self is Interaction.PP:
            return (SiteGroup.PHOSPHORUS,)
        if self is Interaction.PN:
            return (SiteGroup.NITROGEN,)
        return SiteGroup.AMMONIUM_H, SiteGroup.ACID_H

    @property
    def like_spin(self) -> bool:
        """
        Whether the interaction is homonuclear and therefore scaled by 3/2.
        """
        return self is Interaction.PP

    @staticmethod
    def parse_list(text: str) -> list["Interaction"]:
        """
        Parse a comma separated list such as ``PP,PH,PN``.
        """
        try:
            return [Interaction(part.strip().upper()) for part in text.split(",") if part.strip()]
        except ValueError as error:
            raise InvalidArgumentError(f"invalid interaction list '{text}'") from error


def ising_fid(couplings: Sequence[tuple[float, Fraction]], like_spin_scaling: bool = False, dt: float = DEFAULT_DT,
              n_samples: int = DEFAULT_SAMPLES) -> TimeSeries:
    """
    The Ising product signal of the central spin for the given partners.

    :param couplings: pairs ``(b, spin)`` of a coupling in rad/s and the partner spin (1/2 or 1)
    :type couplings: Sequence[tuple[float, Fraction]]
    :param bool like_spin_scaling: scale spin-1/2 couplings by 3/2 (phosphorus partners)
    :param float dt: the sampling interval in s
    :param int n_samples: the number of samples
    :return: the signal, normalized to 1 at :math:`t = 0`
    :rtype: TimeSeries
    """
    if n_samples < 2:
        raise InvalidArgumentError("n_samples must be >= 2")
    t = dt * np.arange(n_samples)
    half: list[float] = []
    one: list[float] = []
    for b, spin in couplings:
        spin = Fraction(spin)
        if spin == Fraction(1, 2):
            half.append(b)
        elif spin == 1:
            one.append(b)
        else:
            raise InvalidArgumentError(f"unsupported spin {spin}")
    scale = LIKE_SPIN_SCALING if like_spin_scaling else 1.0
    values = np.ones(n_samples)
    for start in range(0, len(half), _CHUNK):
        b = np.asarray(half[start:start + _CHUNK])
        values *= np.prod(np.cos(np.outer(scale * b, t)), axis=0)
    for start in range(0, len(one), _CHUNK):
        b = np.asarray(one[start:start + _CHUNK])
        values *= np.prod((2.0 * np.cos(np.outer(2.0 * b, t)) + 1.0) / 3.0, axis=0)
    return TimeSeries(0.0, dt, values)


def table_fid(table: CouplingTable, interaction: Interaction, dt: float = DEFAULT_DT,
              n_samples: int = DEFAULT_SAMPLES) -> TimeSeries:
    """
    The Ising product signal of one interaction for a single coupling table.
    """
    mask = table.mask(*interaction.groups)
    couplings = [(float(b), g.species.spin) for b, g, m in zip(table.couplings, table.groups, mask) if m]
    return ising_fid(couplings, interaction.like_spin, dt, n_samples)


def lattice_signals(orientation: Orientation, radius: float, interactions: Sequence[Interaction],
                    dt: float = DEFAULT_DT, n_samples: int = DEFAULT_SAMPLES,
                    cell: UnitCell = None) -> dict[Interaction, TimeSeries]:
    """
    The four-origin averaged signal of each requested interaction for the lattice at ``orientation``.

    :param Orientation orientation: the orientation of the field
    :param float radius: the cluster radius in Å
    :param Sequence[Interaction] interactions: the interactions to evaluate
    :param float dt: the sampling interval in s
    :param int n_samples: the number of samples
    :param UnitCell cell: the unit cell (optional, default :meth:`UnitCell.adp`)
    :return: the signal of every interaction
    :rtype: dict[Interaction, TimeSeries]
    """
    tables = four_origin_tables(radius, orientation, cell)
    signals = {
        interaction: four_origin_average([table_fid(t, interaction, dt, n_samples) for t in tables])
        for interaction in interactions
    }
    logger.info("line shapes at %s, R=%g: %s", orientation.label(), radius,
                ", ".join(i.value for i in interactions))
    return signals


def w_from_b_rms(interaction: Interaction, local_field: float) -> float:
    """
    The rms line width in Hz implied by the root-sum-square local field ``local_field`` (rad/s) of an interaction.
    """
    if interaction is Interaction.PP:
        factor = LIKE_SPIN_SCALING
    elif interaction is Interaction.PN:
        factor = 2.0 * math.sqrt(2.0 / 3.0)
    else:
        factor = 1.0
    return factor * local_field / (2.0 * math.pi)


def predicted_widths(orientation: Orientation, radius: float, cell: UnitCell = None) -> dict[Interaction, float]:
    """
    The widths in Hz predicted from the second moments of the coupling tables, for every interaction.
    """
    tables = four_origin_tables(radius, orientation, cell)
    return {i: w_from_b_rms(i, b_rms_four_origin(tables, *i.groups)) for i in Interaction}
