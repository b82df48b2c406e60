"""Error taxonomy shared by the whole package.

Exit-code mapping used by the CLI: precondition errors are an input
problem (exit 2), resource errors mean a cap was hit (exit 3), and an
internal consistency error is always a bug (exit 1).
"""


class PolykapError(Exception):
    pass


class PreconditionError(PolykapError, ValueError):
    """Input violates a documented precondition."""


class DimensionMismatchError(PreconditionError):
    """Operands live in different ambient dimensions."""


class ResourceLimitError(PolykapError):
    """A configured enumeration or size cap was exceeded."""


class InternalConsistencyError(PolykapError):
    """A certified invariant failed; indicates a bug, not bad input."""
