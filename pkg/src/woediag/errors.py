"""Exception types shared across the package."""


class WoediagError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(WoediagError):
    """Malformed schema, case, or knowledge-base file."""


class SchemaValidationError(WoediagError):
    """Schema or case content violates a structural invariant."""


class UndefinedWeightError(WoediagError):
    """Contingency table does not admit a weight estimate."""


class DegenerateEventError(WoediagError):
    """Fuzzy event admits no usable alpha level."""


class DegenerateHypothesisError(WoediagError):
    """Hypothesis labels contain fewer than two classes."""


class SchemaDigestError(WoediagError):
    """Knowledge base was mined against a different schema."""
