"""Exception types shared across the package.

Validation problems (bad data, bad structure, bad arguments) derive from
ValidationError; filesystem and serialization failures derive from IoError.
The CLI maps the two families to exit codes 1 and 2.
"""


class RiskMcdmError(Exception):
    """Base class for all package errors."""


class ValidationError(RiskMcdmError):
    """Input data or arguments violate a documented contract."""


class IoError(RiskMcdmError):
    """A file could not be read, parsed, or written."""


class InvalidIntensity(ValidationError):
    """A judgment value is not a Saaty intensity or its reciprocal."""


class IncompleteJudgments(ValidationError):
    """Upper-triangle judgments are missing for a comparison node."""

    def __init__(self, missing):
        self.missing = list(missing)
        pairs = ", ".join(f"({i},{j})" for i, j in self.missing)
        super().__init__(f"missing judgments for pairs: {pairs}")


class DimensionError(ValidationError):
    """Matrix or vector shapes (or item id sets) do not line up."""


class UnsupportedOrder(ValidationError):
    """No tabulated random index for a matrix of this order."""


class IncompleteWeights(ValidationError):
    """A required weight (node vector or criterion weight) is absent."""


class EmptyInput(ValidationError):
    """An operation received an empty matrix or list."""


class DegenerateScores(ValidationError):
    """All alternative scores are zero; shares are undefined."""


class MissingLineItem(ValidationError):
    """A statement year lacks a line item referenced by a ratio."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"missing line item: {name}")


class UnknownCriterion(ValidationError):
    """A criterion symbol is not in the ratio catalogue."""


class ColumnUnavailable(ValidationError):
    """Every cell of a decision-matrix column is undefined."""

    def __init__(self, criterion):
        self.criterion = criterion
        super().__init__(f"criterion {criterion} is undefined for all alternatives")


class ConfigError(ValidationError):
    """An assessment configuration is inconsistent or incomplete."""
