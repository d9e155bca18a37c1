"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI and the vector
replayer compare against these codes rather than class names.
"""

from __future__ import annotations


class CsgkError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", *, witness=None):
        super().__init__(message or self.code)
        self.witness = witness


class InvalidCharacter(CsgkError, ValueError):
    code = "INVALID_CHARACTER"


class WordTooLong(CsgkError, ValueError):
    code = "WORD_TOO_LONG"


class EmptyWord(CsgkError, ValueError):
    code = "EMPTY_WORD"


class ShapeViolation(CsgkError, RuntimeError):
    """An irreducible word did not match b^k (ab)^l a^m.

    This means the rewriting engine is broken; it is never caught and coerced.
    """

    code = "SHAPE_VIOLATION"


class ConfluenceFailure(CsgkError):
    code = "CONFLUENCE_FAILURE"


class ZeroExponent(CsgkError, ValueError):
    code = "ZERO_EXPONENT"


class InvalidElement(CsgkError, ValueError):
    code = "INVALID_ELEMENT"


class AssociativityFailure(CsgkError):
    code = "ASSOCIATIVITY_FAILURE"


class HomomorphismFailure(CsgkError):
    code = "HOMOMORPHISM_FAILURE"


class InclusionFailure(CsgkError):
    code = "INCLUSION_FAILURE"


class MetricFailure(CsgkError):
    code = "METRIC_FAILURE"


class ConfigError(CsgkError, ValueError):
    code = "CONFIG_ERROR"


class VectorParseError(CsgkError, ValueError):
    code = "PARSE_ERROR"

    def __init__(self, message: str = "", *, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class VectorIOError(CsgkError, OSError):
    code = "IO_ERROR"
