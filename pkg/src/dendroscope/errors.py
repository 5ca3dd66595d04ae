"""Error taxonomy shared by all dendroscope modules.

Every domain error carries a stable ``name`` used verbatim in CLI reports.
"""


class DendroscopeError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    name = "DendroscopeError"


class CapExceeded(DendroscopeError):
    """Group closure grew past its element cap."""

    name = "CapExceeded"


class BudgetExceeded(DendroscopeError):
    """An enumeration exceeded its configured budget."""

    name = "BudgetExceeded"


class SameVertex(DendroscopeError):
    """A direction query needs two distinct vertices."""

    name = "SameVertex"


class NotCenterClosed(DendroscopeError):
    """The vertex set must contain the center of each of its triples."""

    name = "NotCenterClosed"


class NotDoublyTransitive(DendroscopeError):
    """The recoloring recursion requires a 2-transitive local group."""

    name = "NotDoublyTransitive"


class NoColorIsomorphism(DendroscopeError):
    """No color-preserving rooted isomorphism between two subtrees.

    ``direction`` is the color of the source direction that failed.
    """

    name = "NoColorIsomorphism"

    def __init__(self, direction: int, message: str = ""):
        self.direction = direction
        super().__init__(message or f"no color isomorphism out of direction {direction}")


class BetweennessViolation(DendroscopeError):
    """A partial map does not respect betweenness on its domain."""

    name = "BetweennessViolation"


class ParseError(DendroscopeError):
    """A text artifact (group, model, coloring, cochain file) failed to parse.

    Maps to CLI exit code 2, like a usage error.
    """

    name = "ParseError"
