"""Exception hierarchy.

Every domain error subclasses TcrError so callers (and the CLI) can map
failure classes to exit codes without matching on message text.
"""


class TcrError(Exception):
    """Base class for all domain errors raised by this package."""


class MalformedEdge(TcrError):
    """An edge has the wrong arity, repeated vertices, or out-of-range vertices."""


class ConflictingColour(TcrError):
    """The same edge was supplied with two different colours."""


class BadArity(TcrError):
    """A vertex-set argument has a size outside the permitted range."""


class UnknownEdge(TcrError):
    """An edge argument is not an edge of the hypergraph in question."""


class SearchCapExceeded(TcrError):
    """An exhaustive search was requested on an instance above its cap.

    Raised instead of returning a silent negative: absence verdicts must
    mean proven absence.
    """


class SizeCapExceeded(TcrError):
    """A construction would materialize more objects than the configured cap."""


class NonEmptyIntersection(TcrError):
    """The edge family handed to the empty-intersection construction has a common vertex."""


class Unsupported(TcrError):
    """Parameters outside what the operation supports (e.g. more components than exist)."""


class NotPartite(TcrError):
    """A blown edge uses two vertices from the same blow-up class."""


class NotAMatching(TcrError):
    """An edge list that must be pairwise disjoint is not."""


class MixedComponents(TcrError):
    """Edges that must lie in a single monochromatic tight component do not."""


class DenominatorMismatch(TcrError):
    """A fractional matching weight is not a multiple of the required 1/r."""


class ContractUnmet(TcrError):
    """A constructive operation could not meet its advertised output contract."""


class HypothesisViolated(TcrError):
    """A verified precondition of a structural lemma-style operation fails."""


class InconsistentWitness(TcrError):
    """Structure that should determine a unique component does not; names the conflict."""


class ParseError(TcrError):
    """Input text does not conform to the tcg format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
