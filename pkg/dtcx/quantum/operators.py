r"""
Spin operators on product Hilbert spaces.

Single-spin matrices follow the standard ladder construction in the :math:`|s, m\rangle` basis ordered from
:math:`m = s` down to :math:`m = -s`. Operators of one spin in a many-spin space are built with Kronecker products in
:mod:`scipy.sparse` and densified only when needed.
"""

import functools
import math
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sparse

from dtcx.utils.exceptions import InvalidArgumentError

AXES: tuple[str, ...] = ("x", "y", "z")


@functools.lru_cache(maxsize=None)
def spin_matrices(spin: Fraction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    The matrices :math:`I_x, I_y, I_z` of a single spin.

    :param Fraction spin: the spin quantum number
    :return: the three Hermitian matrices
    :rtype: tuple[np.ndarray, np.ndarray, np.ndarray]
    """
    if spin <= 0 or (2 * spin).denominator != 1:
        raise InvalidArgumentError("spin must be a positive multiple of 1/2")
    m = np.array([float(spin - k) for k in range(int(2 * spin + 1))])
    s = float(spin)
    raising = np.diag(np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1)), k=1).astype(complex)
    lowering = raising.conj().T
    ix = (raising + lowering) / 2.0
    iy = (raising - lowering) / 2.0j
    iz = np.diag(m).astype(complex)
    for matrix in (ix, iy, iz):
        matrix.setflags(write=False)
    return ix, iy, iz


def axis_index(axis: str) -> int:
    """
    The index of ``x``, ``y`` or ``z`` in :data:`AXES`.
    """
    try:
        return AXES.index(axis.lower())
    except ValueError as error:
        raise InvalidArgumentError(f"unknown axis '{axis}'") from error


def embed(op: np.ndarray, index: int, dims: Sequence[int]) -> sparse.csr_matrix:
    """
    The operator ``op`` of spin ``index`` in the product space of spins with dimensions ``dims``.
    """
    left = int(np.prod(dims[:index], dtype=int))
    right = int(np.prod(dims[index + 1:], dtype=int))
    result = sparse.kron(sparse.identity(left, format="csr"), sparse.csr_matrix(op), format="csr")
    return sparse.kron(result, sparse.identity(right, format="csr"), format="csr")


class OperatorBasis:
    """
    The embedded single-spin operators of a list of spins, built once and reused.
    """

    def __init__(self, spins: Sequence[Fraction]) -> None:
        """
        :param Sequence[Fraction] spins: the spin quantum numbers
        """
        self.__spins = tuple(spins)
        self.__dims = tuple(int(2 * s + 1) for s in self.__spins)
        self.__ops = [
            tuple(embed(m, k, self.__dims) for m in spin_matrices(s)) for k, s in enumerate(self.__spins)
        ]

    @property
    def dims(self) -> tuple[int, ...]:
        """
        The dimension of each spin.
        """
        return self.__dims

    @property
    def dimension(self) -> int:
        """
        The dimension of the product space.
        """
        return int(np.prod(self.__dims, dtype=int))

    def op(self, index: int, axis: str) -> sparse.csr_matrix:
        """
        The component ``axis`` of spin ``index``.
        """
        return self.__ops[index][axis_index(axis)]

    def total(self, indices: Sequence[int], axis: str) -> sparse.csr_matrix:
        """
        The sum of the ``axis`` components of the spins ``indices``.
        """
        result = sparse.csr_matrix((self.dimension, self.dimension), dtype=complex)
        for index in indices:
            result = result + self.op(index, axis)
        return result

    def transverse(self, indices: Sequence[int], phase: float) -> sparse.csr_matrix:
        r"""
        :math:`I_\phi = \cos\phi\, I_x + \sin\phi\, I_y` summed over ``indices``.
        """
        return math.cos(phase) * self.total(indices, "x") + math.sin(phase) * self.total(indices, "y")

    def rotation(self, indices: Sequence[int], angle: float, phase: float) -> np.ndarray:
        r"""
        The rotation :math:`\exp(+i\theta I_\phi)` of the spins ``indices``, built as a Kronecker product of
        single-spin rotations.
        """
        selected = set(indices)
        result = np.ones((1, 1), dtype=complex)
        for k, s in enumerate(self.__spins):
            if k in selected:
                ix, iy, _ = spin_matrices(s)
                factor = scipy.linalg.expm(1j * angle * (math.cos(phase) * ix + math.sin(phase) * iy))
            else:
                factor = np.eye(self.__dims[k], dtype=complex)
            result = np.kron(result, factor)
        return result


def expectation(observable: np.ndarray, rho: np.ndarray) -> complex:
    r"""
    :math:`\mathrm{Tr}[O \rho]` without forming the product.
    """
    return complex(np.einsum("ij,ji->", observable, rho))


def is_unitary(u: np.ndarray, tolerance: float = 1e-10) -> bool:
    """
    Whether :math:`\\|UU^\\dagger - 1\\|_\\max` is below ``tolerance``.
    """
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(len(u)))) < tolerance)
