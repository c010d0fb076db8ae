r"""
The three nuclear species tracked in ammonium dihydrogen phosphate and their magnetic constants.

Gyromagnetic ratios are derived from the Larmor frequencies :math:`\omega_0 / 2\pi` measured at a field of exactly
4 T, so that :math:`\gamma = 2\pi f_0 / H_0`. The constants of nature come from :mod:`scipy.constants` (CODATA).
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy import constants as cnst

from dtcx.utils.exceptions import InvalidArgumentError

REFERENCE_FIELD: float = 4.0
"""The field, in tesla, at which the reference Larmor frequencies are quoted."""

MU0_OVER_4PI: float = cnst.mu_0 / (4.0 * math.pi)
HBAR: float = cnst.hbar


class SpeciesName(enum.Enum):
    """
    Names of the tracked nuclei.
    """
    P31 = "P31"
    H1 = "H1"
    N14 = "N14"


@dataclass(frozen=True)
class SpinSpecies:
    """
    A nuclear species with its spin quantum number and gyromagnetic ratio in rad/(s T).
    """
    name: SpeciesName
    spin: Fraction
    gamma: float

    def __post_init__(self) -> None:
        if self.spin not in (Fraction(1, 2), Fraction(1)):
            raise InvalidArgumentError("spin must be 1/2 or 1")
        if self.gamma <= 0:
            raise InvalidArgumentError("gamma must be > 0")

    @property
    def multiplicity(self) -> int:
        """
        The number of Zeeman levels :math:`2s + 1`.
        """
        return int(2 * self.spin + 1)

    def larmor_frequency(self, field: float = REFERENCE_FIELD) -> float:
        """
        The Larmor frequency in Hz at the given field in tesla.

        :param float field: the field strength
        :return: :math:`\\gamma H_0 / 2\\pi`
        :rtype: float
        """
        return self.gamma * field / (2.0 * math.pi)

    @staticmethod
    def from_larmor(name: SpeciesName, spin: Fraction, frequency: float) -> "SpinSpecies":
        """
        Build a species from its Larmor frequency in Hz at :data:`REFERENCE_FIELD`.
        """
        return SpinSpecies(name, spin, 2.0 * math.pi * frequency / REFERENCE_FIELD)


P31: SpinSpecies = SpinSpecies.from_larmor(SpeciesName.P31, Fraction(1, 2), 68.940e6)
H1: SpinSpecies = SpinSpecies.from_larmor(SpeciesName.H1, Fraction(1, 2), 170.304e6)
N14: SpinSpecies = SpinSpecies.from_larmor(SpeciesName.N14, Fraction(1), 12.307e6)

SPECIES: dict[SpeciesName, SpinSpecies] = {s.name: s for s in (P31, H1, N14)}


def species_by_name(name: str) -> SpinSpecies:
    """
    Look up a species by its name (``P31``, ``H1`` or ``N14``).
    """
    try:
        return SPECIES[SpeciesName(name)]
    except ValueError as error:
        raise InvalidArgumentError(f"unknown species '{name}'") from error
