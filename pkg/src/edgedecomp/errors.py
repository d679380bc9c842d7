"""
Exception hierarchy for the decomposition engine.

Drivers catch ``DecompositionError`` to move on to the next construction;
everything else propagates to the caller (and to the CLI exit-code map).
"""

from typing import Any, Optional


class EdgeDecompError(Exception):
    """Base class for every error raised by the package."""


# ============================================================================
# INPUT / ENVIRONMENT ERRORS
# ============================================================================

class InvalidGraph(EdgeDecompError):
    """Loop, duplicate edge or out-of-range vertex id."""


class GraphFormatError(EdgeDecompError):
    """Malformed graph or decomposition file."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class ConfigError(EdgeDecompError):
    """Unreadable or invalid configuration file."""


class InvalidSpec(EdgeDecompError):
    """Generator specification that cannot be honoured."""


# ============================================================================
# CONSTRUCTION ERRORS (recoverable by trying another construction)
# ============================================================================

class DecompositionError(EdgeDecompError):
    """A single construction step could not be applied."""


class NotTwoConnected(DecompositionError):
    pass


class NotDisjoint(DecompositionError):
    pass


class NotConnected(DecompositionError):
    pass


class ChordLimitExceeded(DecompositionError):
    pass


class NotK5Like(DecompositionError):
    pass


class NotK5MinusSubdivision(DecompositionError):
    pass


class InvalidLift(DecompositionError):
    pass


class EdgeNotInDecomposition(DecompositionError):
    pass


class SideConditionViolated(DecompositionError):
    pass


class PreconditionViolated(DecompositionError):
    pass


class EndpointMismatch(DecompositionError):
    pass


class NotEdgeDisjoint(DecompositionError):
    pass


class ReducingSubgraphInvalid(DecompositionError):
    """Witness, size or isolated-vertex count check failed."""


# ============================================================================
# INPUT CLASS ERRORS
# ============================================================================

class InputClassError(EdgeDecompError):
    """The graph is outside the class a driver handles."""


class NotPartialThreeTree(InputClassError):
    pass


class NotEulerian(InputClassError):
    pass


class NotEvenGraph(InputClassError):
    pass


class OddVertex(InputClassError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has odd degree")


class MaxDegreeExceeded(InputClassError):
    pass


class GirthTooSmall(InputClassError):
    pass


class StructuralAssumptionViolated(InputClassError):
    """A consequence of a caller-asserted property (planarity) failed."""


# ============================================================================
# FATAL ERRORS
# ============================================================================

class BoundViolated(EdgeDecompError):
    """Size arithmetic failed; indicates a bug."""


class EndgameTooLarge(EdgeDecompError):
    pass


class CapExceeded(EdgeDecompError):
    pass


class UnreachableCase(EdgeDecompError):
    """No reduction applied. ``state`` is a JSON-serialisable dump."""

    def __init__(self, message: str, state: Optional[dict[str, Any]] = None):
        self.state = state or {}
        super().__init__(message)
