"""
Helper functions for the tests: independent and naive versions of computations in the package.
"""

import cmath
import itertools
import math
from typing import Sequence

from scipy import constants

from dtcx.lattice.structure import SiteGroup
from dtcx.lattice.structure import UnitCell


def brute_force_counts(radius: float, origin_index: int = 0) -> dict[SiteGroup, int]:
    """
    Counts the sites of each group at distance :math:`0 < d \\le R` from a phosphorus site by scanning every cell
    offset one site at a time.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    cell = UnitCell.adp()
    center = cell.to_cartesian(cell.sites[SiteGroup.PHOSPHORUS][origin_index])
    reach = int(radius // min(cell.a, cell.b, cell.c)) + 2
    counts = {group: 0 for group in SiteGroup}
    for group, sites in cell.sites.items():
        for site in sites:
            for i, j, k in itertools.product(range(-reach, reach + 1), repeat=3):
                position = cell.to_cartesian((site[0] + i, site[1] + j, site[2] + k))
                distance = math.dist(position, center)
                if 1.0e-9 < distance <= radius:
                    counts[group] += 1
    return counts


def dipolar_coupling(r_vec: Sequence[float], gamma_i: float, gamma_j: float, theta_deg: float,
                     phi_deg: float) -> float:
    """
    The secular coupling in rad/s written out from the textbook formula, with ``r_vec`` in Å and the field direction
    given in degrees.
    """
    theta, phi = math.radians(theta_deg), math.radians(phi_deg)
    field = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
    r = math.sqrt(sum(v * v for v in r_vec))
    cosine = sum(a * b for a, b in zip(r_vec, field)) / r
    prefactor = constants.mu_0 / (4.0 * math.pi) * gamma_i * gamma_j * constants.hbar
    return prefactor * (1.0 - 3.0 * cosine ** 2) / (2.0 * (r * 1.0e-10) ** 3)


def direct_fraction(values: Sequence[float]) -> float:
    """
    The share of the power at half the sampling frequency, summing the transform term by term.
    """
    count = len(values)
    if count % 2:
        raise ValueError("the number of values must be even")
    power = []
    for k in range(count):
        amplitude = sum(v * cmath.exp(-2j * math.pi * k * n / count) for n, v in enumerate(values))
        power.append(abs(amplitude) ** 2)
    return power[count // 2] / sum(power)
