"""Exception types shared across the package."""


class SignedKnError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SignedKnError, ValueError):
    """A parameter is outside the supported range."""


class MalformedInputError(SignedKnError, ValueError):
    """Externally supplied data (edge list, Prufer string) does not parse."""


class InvariantViolationError(SignedKnError, ValueError):
    """A structural invariant of a domain type is broken."""


class ConvergenceError(SignedKnError, RuntimeError):
    """The eigensolver hit its sweep cap before reaching tolerance.

    Carries the off-diagonal Frobenius norm that was achieved.
    """

    def __init__(self, message: str, off_norm: float):
        super().__init__(message)
        self.off_norm = off_norm


class PreconditionError(SignedKnError, ValueError):
    """A rotation move's sign pattern does not match the graph.

    Carries the offending edge as a (u, v) pair.
    """

    def __init__(self, message: str, edge: tuple[int, int]):
        super().__init__(message)
        self.edge = edge


class StaleEigenvectorError(SignedKnError, ValueError):
    """The supplied eigenvector fails the residual check for this graph.

    Carries the residual that was measured.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual
