"""Exception hierarchy shared by every solver.

Each error carries a stable ``code`` string (written into CLI reports) and
belongs to one of three families that the CLI maps to exit codes:
precondition rejections, hard bug signals, and malformed input.
"""


class TopocutError(Exception):
    code = "ERROR"


class PreconditionError(TopocutError):
    """The caller asked for something outside an operation's contract."""

    code = "PRECONDITION"


class HardBugSignal(TopocutError):
    """A search the underlying theorem guarantees to succeed came back empty."""

    code = "HARD_BUG"


class DimensionMismatch(PreconditionError, ValueError):
    code = "DIMENSION_MISMATCH"


class NotGeneralPosition(PreconditionError):
    code = "NOT_GENERAL_POSITION"


class ClassCountMismatch(PreconditionError):
    code = "CLASS_COUNT_MISMATCH"


class DegenerateSpan(PreconditionError):
    code = "DEGENERATE_SPAN"


class UnequalClassSizes(PreconditionError):
    code = "UNEQUAL_CLASS_SIZES"


class OddTypeCount(PreconditionError):
    code = "ODD_TYPE_COUNT"


class MalformedSplit(PreconditionError, ValueError):
    code = "MALFORMED_SPLIT"


class ParameterRange(PreconditionError, ValueError):
    code = "PARAMETER_RANGE"


class IncompleteColoring(PreconditionError):
    code = "INCOMPLETE_COLORING"


class NotIntersectingFamily(PreconditionError):
    code = "NOT_INTERSECTING_FAMILY"

    def __init__(self, message, family=None):
        super().__init__(message)
        self.family = family


class InvalidLabeling(PreconditionError):
    code = "INVALID_LABELING"


class PerturbationFailed(PreconditionError):
    code = "PERTURBATION_FAILED"


class GenerationFailed(PreconditionError):
    code = "GENERATION_FAILED"


class SearchExhausted(HardBugSignal):
    code = "SEARCH_EXHAUSTED"


class RecursionFailed(HardBugSignal):
    code = "RECURSION_FAILED"


class SchemaError(TopocutError, ValueError):
    """Input JSON does not match the documented schema."""

    code = "SCHEMA_ERROR"
