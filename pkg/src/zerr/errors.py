"""Exception hierarchy shared by every module."""


class ZerrError(Exception):
    """Base class for all errors raised by the package."""


class StructureError(ZerrError, ValueError):
    """An input object violates a structural invariant."""


class SolverLimitError(ZerrError):
    """An exact algorithm was asked to run beyond its configured vertex cap."""

    def __init__(self, what, size, limit):
        super().__init__(
            f"{what}: {size} vertices exceeds limit {limit} "
            f"(raise it with ZERR_SOLVER_LIMIT)"
        )
        self.size = size
        self.limit = limit


class FormatError(ZerrError, ValueError):
    """A file could not be parsed into one of the supported formats."""
