"""
Configuration management using environment variables
"""

import os
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv


class Config:
    """Configuration loader and manager"""

    VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

    def __init__(self):
        """Initialize configuration from .env file or environment variables"""
        # __file__ is prefcalc/utils/config.py; the project root is two levels up
        project_env_path = Path(__file__).resolve().parent.parent.parent / ".env"
        if project_env_path.exists():
            load_dotenv(project_env_path, override=False)
        self.reload()

    def reload(self) -> None:
        """
        Re-read every setting from the environment

        A malformed value keeps its default and is reported by validate().
        """
        self._malformed: List[str] = []

        # Random trials
        self.seed: Optional[int] = self._read_int("PREFCALC_SEED", None)

        # Logging
        self.log_level: str = os.getenv("PREFCALC_LOG_LEVEL", "WARNING").upper()

        # Caps
        self.max_grid_cells: int = self._read_int("PREFCALC_MAX_GRID_CELLS", 1_000_000)
        self.max_literals: int = self._read_int("PREFCALC_MAX_LITERALS", 64)
        self.max_terms: int = self._read_int("PREFCALC_MAX_TERMS", 16_384)
        self.memo_size: int = self._read_int("PREFCALC_MEMO_SIZE", 65_536)

        # Tolerances
        self.oracle_rtol: float = self._read_float("PREFCALC_ORACLE_RTOL", 1e-9)
        self.identity_atol: float = self._read_float("PREFCALC_IDENTITY_ATOL", 1e-12)
        self.independence_tol: float = self._read_float("PREFCALC_INDEPENDENCE_TOL", 1e-6)

    def _read_int(self, name: str, default: Optional[int]) -> Optional[int]:
        raw = os.getenv(name, "").strip()
        if not raw:
            return default
        try:
            return int(raw, 10)
        except ValueError:
            self._malformed.append(f"{name} must be a decimal integer, got {raw!r}")
            return default

    def _read_float(self, name: str, default: float) -> float:
        raw = os.getenv(name, "").strip()
        if not raw:
            return default
        try:
            return float(raw)
        except ValueError:
            self._malformed.append(f"{name} must be a real number, got {raw!r}")
            return default

    def validate(self) -> tuple[bool, Optional[str]]:
        """
        Validate configuration

        Returns:
            tuple: (is_valid, error_message)
        """
        if self._malformed:
            return False, self._malformed[0]

        if self.log_level not in self.VALID_LOG_LEVELS:
            return False, f"PREFCALC_LOG_LEVEL must be one of {self.VALID_LOG_LEVELS}"

        for name in ("max_grid_cells", "max_literals", "max_terms", "memo_size"):
            if getattr(self, name) < 1:
                return False, f"PREFCALC_{name.upper()} must be positive"

        for name in ("oracle_rtol", "identity_atol", "independence_tol"):
            if getattr(self, name) < 0:
                return False, f"PREFCALC_{name.upper()} must be non-negative"

        return True, None


# Global config instance
# NOTE: environment variables must be set before first import, or call
# config.reload() afterwards.
config = Config()
