"""
Diagnostics and input validation utilities
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)


class Severity(Enum):
    """Diagnostic severity"""
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """One finding of a validator"""
    severity: Severity
    code: str
    message: str

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def to_dict(self) -> Dict[str, Any]:
        return {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
        }

    def __str__(self) -> str:
        return f"{self.severity.value}[{self.code}]: {self.message}"


def errors_of(diagnostics: Sequence[Diagnostic]) -> List[Diagnostic]:
    return [d for d in diagnostics if d.is_error]


def warnings_of(diagnostics: Sequence[Diagnostic]) -> List[Diagnostic]:
    return [d for d in diagnostics if not d.is_error]


class InputValidator:
    """Validates command-line suite parameters"""

    MAX_ATTRIBUTES = 6
    MAX_LEVELS = 64
    MAX_TRIALS = 1_000_000
    MAX_DEPTH = 6

    @staticmethod
    def validate_suite_parameters(
        attrs: Optional[int] = None,
        levels: Optional[int] = None,
        trials: Optional[int] = None,
        depth: Optional[int] = None,
    ) -> tuple[bool, Optional[str]]:
        """
        Validate identity / oracle suite parameters

        Args:
            attrs: Number of attributes
            levels: Levels per attribute
            trials: Number of random trials
            depth: Maximum expression depth

        Returns:
            tuple: (is_valid, error_message)
        """
        if attrs is not None and not 1 <= attrs <= InputValidator.MAX_ATTRIBUTES:
            return False, f"attrs must be between 1 and {InputValidator.MAX_ATTRIBUTES}"

        if levels is not None and not 2 <= levels <= InputValidator.MAX_LEVELS:
            return False, f"levels must be between 2 and {InputValidator.MAX_LEVELS}"

        if trials is not None and not 1 <= trials <= InputValidator.MAX_TRIALS:
            return False, f"trials must be between 1 and {InputValidator.MAX_TRIALS}"

        if depth is not None and not 0 <= depth <= InputValidator.MAX_DEPTH:
            return False, f"depth must be between 0 and {InputValidator.MAX_DEPTH}"

        logger.debug(f"Suite parameters validated: attrs={attrs}, levels={levels}, trials={trials}, depth={depth}")
        return True, None
