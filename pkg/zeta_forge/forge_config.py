"""
Forge Configuration Module (dotenv)
====================================

Loads laboratory settings from environment variables (with ``.env`` file
support via ``python-dotenv``).  Validates values and raises
``ConfigurationError`` for invalid settings.

Settings:
    - ``ZETA_FORGE_DIGITS``: Default working precision in decimal digits (default ``30``, minimum ``15``)
    - ``ZETA_FORGE_GUARD``: Guard digits carried internally (default ``10``)
    - ``ZETA_FORGE_LOG_DIR``: Directory for log files (default ``logs``)
    - ``ZETA_FORGE_LOG_FILE``: Log file name (default ``zeta_forge.log``)
    - ``ZETA_FORGE_OUTPUT_DIR``: Directory for benchmark tables (default ``results``)
    - ``ZETA_FORGE_JOBS``: Worker processes used by ``bench`` (default ``1``)
    - ``ZETA_FORGE_QUAD_LEVELS``: Maximum tanh-sinh refinement level (default ``8``)
    - ``ZETA_FORGE_LOG_EVALUATIONS``: ``true``/``false`` toggle for the result log (default ``true``)
    - ``ZETA_FORGE_DEFAULT_ENCODING``: Encoding for files written (default ``utf-8``)
"""

from __future__ import annotations

import os

from dotenv import load_dotenv

from zeta_forge.exceptions import ConfigurationError

MIN_DIGITS = 15
MIN_QUAD_LEVELS = 3


class ForgeConfig:
    """Loads and validates laboratory settings from the environment.

    Attributes:
        digits: Default decimal digits of working precision.
        guard: Extra digits carried internally.
        log_dir: Directory for log files.
        log_file: Log file name.
        output_dir: Directory for benchmark output.
        jobs: Number of worker processes for benchmarks.
        quad_levels: Maximum quadrature refinement level.
        log_evaluations: Whether results are written to the log file.
        default_encoding: Encoding for files written.
    """

    def __init__(self, env_path: str | None = None) -> None:
        """Load config from environment / ``.env`` file.

        Args:
            env_path: Optional explicit path to a ``.env`` file.
        """
        load_dotenv(dotenv_path=env_path, override=True)

        self.digits: int = self._parse_min_int(
            os.getenv("ZETA_FORGE_DIGITS", "30"), "ZETA_FORGE_DIGITS", MIN_DIGITS
        )
        self.guard: int = self._parse_min_int(
            os.getenv("ZETA_FORGE_GUARD", "10"), "ZETA_FORGE_GUARD", 0
        )
        self.log_dir: str = os.getenv("ZETA_FORGE_LOG_DIR", "logs")
        self.log_file: str = os.getenv("ZETA_FORGE_LOG_FILE", "zeta_forge.log")
        self.output_dir: str = os.getenv("ZETA_FORGE_OUTPUT_DIR", "results")
        self.jobs: int = self._parse_min_int(
            os.getenv("ZETA_FORGE_JOBS", "1"), "ZETA_FORGE_JOBS", 1
        )
        self.quad_levels: int = self._parse_min_int(
            os.getenv("ZETA_FORGE_QUAD_LEVELS", "8"), "ZETA_FORGE_QUAD_LEVELS", MIN_QUAD_LEVELS
        )
        self.log_evaluations: bool = self._parse_bool(
            os.getenv("ZETA_FORGE_LOG_EVALUATIONS", "true"), "ZETA_FORGE_LOG_EVALUATIONS"
        )
        self.default_encoding: str = os.getenv("ZETA_FORGE_DEFAULT_ENCODING", "utf-8")

    # -- helpers ------------------------------------------------------------

    @staticmethod
    def _parse_bool(value: str, name: str) -> bool:
        """Convert a string to a boolean.

        Raises:
            ConfigurationError: If the value is not ``true`` or ``false``.
        """
        lower = value.strip().lower()
        if lower in ("true", "1", "yes"):
            return True
        if lower in ("false", "0", "no"):
            return False
        raise ConfigurationError(
            f"Invalid boolean value for {name}: '{value}'. "
            "Use 'true' or 'false'."
        )

    @staticmethod
    def _parse_min_int(value: str, name: str, minimum: int) -> int:
        """Convert a string to an integer no smaller than *minimum*.

        Raises:
            ConfigurationError: If the value is not an integer or is too small.
        """
        try:
            result = int(value)
        except ValueError:
            raise ConfigurationError(
                f"Invalid integer value for {name}: '{value}'."
            )
        if result < minimum:
            raise ConfigurationError(
                f"{name} must be at least {minimum}, got {result}."
            )
        return result

    def as_dict(self) -> dict[str, object]:
        """Return the effective settings keyed by attribute name."""
        return {
            "digits": self.digits,
            "guard": self.guard,
            "log_dir": self.log_dir,
            "log_file": self.log_file,
            "output_dir": self.output_dir,
            "jobs": self.jobs,
            "quad_levels": self.quad_levels,
            "log_evaluations": self.log_evaluations,
            "default_encoding": self.default_encoding,
        }

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"ForgeConfig(digits={self.digits}, guard={self.guard}, "
            f"log_dir='{self.log_dir}', log_file='{self.log_file}', "
            f"output_dir='{self.output_dir}', jobs={self.jobs}, "
            f"quad_levels={self.quad_levels}, "
            f"log_evaluations={self.log_evaluations}, "
            f"default_encoding='{self.default_encoding}')"
        )
