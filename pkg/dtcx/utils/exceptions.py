"""
Exceptions used throughout the package.

Argument problems derive from :class:`ValueError` through :class:`InvalidArgumentError` so that callers which only care
about bad input can catch the builtin type. Numerical failures derive from :class:`NumericalError`; the command line
front end maps the two families to different exit codes.
"""


class InvalidArgumentError(ValueError):
    """
    Represents an argument that is outside the domain of an operation.
    """


class GridMismatchError(InvalidArgumentError):
    """
    Represents two sampled signals whose time or frequency grids cannot be combined.
    """


class SequenceParseError(InvalidArgumentError):
    """
    Represents a syntax error in a pulse sequence text.

    The ``position`` attribute holds the 0-based character offset where the problem was detected.
    """

    def __init__(self, message: str, position: int) -> None:
        """
        :param str message: the description of the problem
        :param int position: the character offset in the source text
        """
        super().__init__(f"{message} (at position {position})")
        self.position: int = position


class UnboundSymbolError(InvalidArgumentError):
    """
    Represents a symbol of a pulse sequence that has no binding at expansion time.
    """

    def __init__(self, symbol: str) -> None:
        """
        :param str symbol: the name of the unbound symbol
        """
        super().__init__(f"symbol '{symbol}' is not bound")
        self.symbol: str = symbol


class DimensionOverflowError(Exception):
    """
    Represents a spin system whose Hilbert space dimension exceeds the configured cap.
    """


class UnsupportedPulseError(Exception):
    """
    Represents a pulse block for which the zeroth-order average Hamiltonian is not defined, i.e. a block whose net pulse
    rotation does not leave the internal Hamiltonian invariant.
    """


class NumericalError(Exception):
    """
    Base class of the numerical failures.
    """


class DegenerateSpectrumError(NumericalError):
    """
    Represents a spectrum whose real part does not have a positive sum, so that its moments are undefined.
    """


class OffGridFrequencyError(NumericalError):
    """
    Represents a request for the spectral weight at a normalized frequency that is not on the DFT grid.
    """


class FitConvergenceError(NumericalError):
    """
    Represents a least-squares fit for which none of the starts converged.

    The ``residual`` attribute holds the root mean square residual of the best start.
    """

    def __init__(self, message: str, residual: float) -> None:
        """
        :param str message: the description of the problem
        :param float residual: the root mean square residual of the best start
        """
        super().__init__(f"{message} (best rms residual {residual:.3e})")
        self.residual: float = residual
