r"""
Internal Hamiltonians of spin systems, in angular-frequency units (energy divided by :math:`\hbar`).

.. math::

   \mathcal{H}_\mathrm{int} = \sum_i \Omega_i I_{z_i}
       + \sum_{i<j\ \mathrm{P,P}} b_{ij} (3 I_{z_i} I_{z_j} - \vec I_i \cdot \vec I_j)
       + \sum_{i<j\ \mathrm{other}} b_{ij}\, 2 I_{z_i} R_{z_j}

The homonuclear part along another axis, :math:`\mathcal{H}_{\phi\phi} = \sum b_{ij} (3 I_{\phi_i} I_{\phi_j} -
\vec I_i \cdot \vec I_j)`, is returned by :func:`dipolar_form`; the three forms sum to zero.
"""

import numpy as np
import scipy.sparse as sparse

from dtcx.quantum.operators import AXES
from dtcx.quantum.operators import OperatorBasis
from dtcx.quantum.operators import axis_index
from dtcx.quantum.system import CouplingClass
from dtcx.quantum.system import SpinSystem


def basis(system: SpinSystem) -> OperatorBasis:
    """
    The embedded single-spin operators of ``system``.
    """
    return OperatorBasis([s.spin for s in system.species])


def _zero(ops: OperatorBasis) -> sparse.csr_matrix:
    return sparse.csr_matrix((ops.dimension, ops.dimension), dtype=complex)


def _scalar_product(ops: OperatorBasis, i: int, j: int) -> sparse.csr_matrix:
    return sum((ops.op(i, a) @ ops.op(j, a) for a in AXES), _zero(ops))


def zeeman_part(system: SpinSystem, ops: OperatorBasis = None) -> np.ndarray:
    """
    :math:`\\sum_i \\Omega_i I_{z_i}`.
    """
    ops = ops or basis(system)
    result = _zero(ops)
    for i, omega in enumerate(system.offsets):
        if omega != 0:
            result = result + omega * ops.op(i, "z")
    return result.toarray()


def dipolar_form(system: SpinSystem, axis: str = "z", ops: OperatorBasis = None) -> np.ndarray:
    """
    The homonuclear dipolar Hamiltonian with its symmetry axis along ``axis``.

    :param SpinSystem system: the system
    :param str axis: ``x``, ``y`` or ``z``
    :param OperatorBasis ops: the operators of the system, built when omitted
    :return: :math:`\\mathcal{H}_{\\phi\\phi}`
    :rtype: np.ndarray
    """
    axis_index(axis)
    ops = ops or basis(system)
    result = _zero(ops)
    for i, j, b, kind in system.pairs():
        if kind is CouplingClass.HOMONUCLEAR:
            result = result + b * (3.0 * ops.op(i, axis) @ ops.op(j, axis) - _scalar_product(ops, i, j))
    return result.toarray()


def heteronuclear_part(system: SpinSystem, ops: OperatorBasis = None) -> np.ndarray:
    """
    The Ising couplings :math:`\\sum b_{ij}\\, 2 I_{z_i} R_{z_j}`.
    """
    ops = ops or basis(system)
    result = _zero(ops)
    for i, j, b, kind in system.pairs():
        if kind is CouplingClass.HETERONUCLEAR:
            result = result + 2.0 * b * (ops.op(i, "z") @ ops.op(j, "z"))
    return result.toarray()


def build_hamiltonian(system: SpinSystem, ops: OperatorBasis = None) -> np.ndarray:
    """
    The internal Hamiltonian :math:`\\mathcal{H}_\\mathrm{int}` as a dense Hermitian matrix.

    :param SpinSystem system: the system
    :param OperatorBasis ops: the operators of the system, built when omitted
    :return: the Hamiltonian in rad/s
    :rtype: np.ndarray
    """
    ops = ops or basis(system)
    return zeeman_part(system, ops) + dipolar_form(system, "z", ops) + heteronuclear_part(system, ops)
