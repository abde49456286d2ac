"""Custom exceptions for wmono."""

from pathlib import Path


class WMonoError(Exception):
    """Base exception for wmono."""

    pass


class InvalidInputError(WMonoError, ValueError):
    """Input rejected by a precondition check."""

    pass


class DimensionMismatchError(InvalidInputError):
    """Raised when a matrix shape disagrees with its tensor-factor dimensions."""

    def __init__(self, expected: object, actual: object, what: str = "dimension") -> None:
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what} mismatch: expected {expected}, got {actual}")


class NotHermitianError(InvalidInputError):
    """Raised when a matrix required to be Hermitian is not."""

    def __init__(self, deviation: float, tolerance: float) -> None:
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(
            f"Matrix is not Hermitian: max |M - M^dagger| = {deviation:.3e} > {tolerance:.0e}"
        )


class NotPositiveSemidefiniteError(InvalidInputError):
    """Raised when a matrix has a significantly negative eigenvalue."""

    def __init__(self, min_eigenvalue: float, tolerance: float) -> None:
        self.min_eigenvalue = min_eigenvalue
        self.tolerance = tolerance
        super().__init__(
            f"Matrix is not positive semidefinite: eigenvalue {min_eigenvalue:.3e} < -{tolerance:.0e}"
        )


class NormalizationError(InvalidInputError):
    """Raised when a state or coefficient vector is not normalized."""

    def __init__(self, norm: float, what: str = "state") -> None:
        self.norm = norm
        super().__init__(f"{what} is not normalized: squared norm = {norm!r}")


class InvalidSelectionError(InvalidInputError):
    """Raised for bad subsystem selections, indices or bipartitions."""

    pass


class ExponentDomainError(InvalidInputError):
    """Raised when an exponent lies outside the domain of an inequality."""

    def __init__(self, inequality_id: str, exponent: float, domain: str) -> None:
        self.inequality_id = inequality_id
        self.exponent = exponent
        self.domain = domain
        super().__init__(f"{inequality_id}: exponent {exponent!r} outside domain {domain}")


class ZeroPairError(InvalidInputError):
    """Raised when a negative-power bound receives vanishing pair values."""

    def __init__(self, inequality_id: str, zero_positions: list[int], route: str) -> None:
        self.inequality_id = inequality_id
        self.zero_positions = zero_positions
        self.route = route
        positions = ", ".join(str(p) for p in zero_positions)
        super().__init__(
            f"{inequality_id}: pair values vanish at position(s) {positions}; "
            f"use {route} for bounds with a removed term"
        )


class OracleScopeError(InvalidInputError):
    """Raised when the convex-roof oracle is asked for something outside its scope."""

    pass


class ConvergenceError(WMonoError, RuntimeError):
    """Raised when an eigen-solver fails or exhausts its iteration budget."""

    def __init__(self, message: str, sweeps: int | None = None) -> None:
        self.sweeps = sweeps
        super().__init__(message)


class StateFileError(WMonoError):
    """Error reading an input file (state description or fuzz configuration)."""

    def __init__(self, file_path: Path, message: str) -> None:
        self.file_path = file_path
        self.message = message
        super().__init__(f"{file_path}: {message}")


class InvalidStateFileError(StateFileError):
    """Error when a state file is malformed."""

    def __init__(self, file_path: Path, line: int | None = None, details: str = "") -> None:
        self.line = line
        location = f" at line {line}" if line else ""
        msg = f"Invalid state file{location}"
        if details:
            msg += f": {details}"
        super().__init__(file_path, msg)
