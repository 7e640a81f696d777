"""Exception types shared across the package."""

from __future__ import annotations


class TopomiError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TopomiError):
    """Input text/JSON could not be parsed into a grid, graph or lattice."""


class ValidationError(TopomiError):
    """Structurally parseable input that violates a documented invariant."""


class EmptyRegion(TopomiError):
    """Operation needs a non-empty cell or qubit region."""


class EmptySubset(TopomiError):
    """Union over an empty collection of subsystems was requested."""


class TooManySubsystems(TopomiError):
    """Subset enumeration guard tripped (the 2**N walk would be too large)."""


class TooManyVertices(TopomiError):
    """Induced-subgraph enumeration guard tripped."""


class TooManyQubits(TopomiError):
    """Dense state-vector oracle guard tripped."""


class DisconnectedCss(TopomiError):
    """The union of all subsystems is not edge-connected."""


class NotAnnular(TopomiError):
    """Operation requires a single-hole ring covering every subsystem."""


class NotACycle(TopomiError):
    """Subsystems touching a hole do not induce a single cycle."""


class MismatchBetweenPaths(TopomiError):
    """The counting path and the entropy-sum path disagree; geometry bug."""


class SingularK(TopomiError):
    """K matrix has zero determinant."""


class LatticeTooSmall(TopomiError):
    """Code lattice dimensions below the supported minimum."""


class WindingRegion(TopomiError):
    """A region wraps around a periodic direction of the torus."""


class PreconditionViolated(TopomiError):
    """A validated precondition failed; carries the offending subset mask."""

    def __init__(self, message: str, mask: int | None = None):
        super().__init__(message)
        self.mask = mask
