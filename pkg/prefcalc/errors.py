"""
Exception hierarchy for the preference calculus
"""

from typing import Any, List, Optional


class PrefCalcError(Exception):
    """Base class for every error raised by prefcalc"""


class ConfigError(PrefCalcError, ValueError):
    """Malformed configuration value"""


class ExpressionError(PrefCalcError, ValueError):
    """Expression is malformed or cannot be evaluated"""


class ExpressionTooLargeError(ExpressionError):
    """Expression exceeds the per-query literal cap"""


class UnknownAttributeError(PrefCalcError, KeyError):
    """Atom names an attribute that is not in the space"""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the message readable
        return str(self.args[0]) if self.args else ""


class LevelError(PrefCalcError, ValueError):
    """Attribute level is not admissible"""


class OffGridLevelError(LevelError):
    """Level is not one of the attribute's grid levels"""


class LevelOutOfRangeError(LevelError):
    """Level lies outside [minimum, maximum] of the attribute"""


class SpaceMismatchError(PrefCalcError, ValueError):
    """Operands belong to different attribute spaces"""


class GridTooLargeError(PrefCalcError, ValueError):
    """Grid exceeds the configured cell cap"""


class UndefinedConditionalError(PrefCalcError, ZeroDivisionError):
    """Conditioning on an expression whose utility is zero"""


class CurveError(PrefCalcError, ValueError):
    """Invalid utility curve or curve argument"""


class ModelValidationError(PrefCalcError, ValueError):
    """Utility model failed validation"""

    def __init__(self, message: str, diagnostics: Optional[List[Any]] = None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])


class ModelFileError(PrefCalcError, ValueError):
    """Model file is missing, unreadable or violates the schema"""


class ParseError(PrefCalcError, ValueError):
    """Syntax error in a preference expression"""

    def __init__(self, diagnostic: Any):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


class SpaceError(PrefCalcError, ValueError):
    """Attribute space violates its grid invariants"""


class InferenceError(PrefCalcError, ValueError):
    """Utility inputs to an inference rule lie outside [0, 1]"""
