"""Exception hierarchy and resource caps shared by all modules."""
import os


class NcSpecError(Exception):
    """Base class for all library errors."""


class ShapeError(NcSpecError, ValueError):
    pass


class InvalidWordError(NcSpecError, ValueError):
    pass


class SingularSimilarityError(NcSpecError, ValueError):
    pass


class UnsupportedStructureError(NcSpecError, ValueError):
    pass


class BudgetError(NcSpecError, RuntimeError):
    pass


class PreconditionError(NcSpecError, ValueError):
    pass


class DegenerateClusteringError(NcSpecError, RuntimeError):
    pass


class DomainError(NcSpecError, ValueError):
    """Raised when a pencil is not invertible at the evaluation point."""


class ConvergenceError(NcSpecError, RuntimeError):
    """Iteration did not converge; ``best`` holds the last iterate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


DEFAULT_MEM_CAP_MB = 512
MAX_DENSE_DIM = 8192


def mem_cap_bytes():
    """Memory cap for dense assemblies, overridable via NCSPEC_MEM_CAP_MB."""
    raw = os.environ.get("NCSPEC_MEM_CAP_MB")
    mb = float(raw) if raw else DEFAULT_MEM_CAP_MB
    return int(mb * 1024 * 1024)


def check_dense_dim(dim, what="matrix"):
    """Raise BudgetError if a dense complex ``dim x dim`` array breaks the caps."""
    if dim > MAX_DENSE_DIM or 16 * dim * dim > mem_cap_bytes():
        raise BudgetError(
            f"{what} of dimension {dim} exceeds the dense memory cap "
            f"({mem_cap_bytes() // (1024 * 1024)} MB, dim <= {MAX_DENSE_DIM})"
        )
