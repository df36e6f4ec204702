"""
Tests for the Forge Config Module
=================================

Tests for ForgeConfig: loading from .env, environment variables,
boolean/integer parsing, and error handling.
"""

import os

import pytest

from zeta_forge.exceptions import ConfigurationError
from zeta_forge.forge_config import ForgeConfig


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def env_file(tmp_path):
    """Create a temporary .env file and return its path."""
    env = tmp_path / ".env"
    env.write_text(
        "ZETA_FORGE_DIGITS=50\n"
        "ZETA_FORGE_GUARD=5\n"
        "ZETA_FORGE_LOG_DIR=test_logs\n"
        "ZETA_FORGE_LOG_FILE=test_forge.log\n"
        "ZETA_FORGE_OUTPUT_DIR=test_results\n"
        "ZETA_FORGE_JOBS=4\n"
        "ZETA_FORGE_QUAD_LEVELS=10\n"
        "ZETA_FORGE_LOG_EVALUATIONS=false\n"
        "ZETA_FORGE_DEFAULT_ENCODING=utf-16\n"
    )
    return str(env)


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


class TestConfigLoading:
    """Tests for loading configuration."""

    def test_defaults(self, tmp_path) -> None:
        """Without a .env file, defaults are used."""
        cfg = ForgeConfig(env_path=str(tmp_path / "nonexistent.env"))
        assert cfg.digits == 30
        assert cfg.guard == 10
        assert cfg.log_dir == "logs"
        assert cfg.log_file == "zeta_forge.log"
        assert cfg.output_dir == "results"
        assert cfg.jobs == 1
        assert cfg.quad_levels == 8
        assert cfg.log_evaluations is True
        assert cfg.default_encoding == "utf-8"

    def test_load_from_env_file(self, env_file: str) -> None:
        cfg = ForgeConfig(env_path=env_file)
        assert cfg.digits == 50
        assert cfg.guard == 5
        assert cfg.log_dir == "test_logs"
        assert cfg.log_file == "test_forge.log"
        assert cfg.output_dir == "test_results"
        assert cfg.jobs == 4
        assert cfg.quad_levels == 10
        assert cfg.log_evaluations is False
        assert cfg.default_encoding == "utf-16"

    def test_environment_variable(self, tmp_path) -> None:
        os.environ["ZETA_FORGE_DIGITS"] = "64"
        cfg = ForgeConfig(env_path=str(tmp_path / "nonexistent.env"))
        assert cfg.digits == 64

    def test_as_dict(self, tmp_path) -> None:
        cfg = ForgeConfig(env_path=str(tmp_path / "nonexistent.env"))
        settings = cfg.as_dict()
        assert list(settings) == [
            "digits", "guard", "log_dir", "log_file", "output_dir",
            "jobs", "quad_levels", "log_evaluations", "default_encoding",
        ]
        assert settings["digits"] == 30


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


class TestConfigValidation:
    """Invalid values raise ConfigurationError naming the variable."""

    @pytest.mark.parametrize(
        "key, value",
        [
            ("ZETA_FORGE_DIGITS", "abc"),
            ("ZETA_FORGE_DIGITS", "10"),
            ("ZETA_FORGE_GUARD", "-1"),
            ("ZETA_FORGE_JOBS", "0"),
            ("ZETA_FORGE_QUAD_LEVELS", "2"),
            ("ZETA_FORGE_LOG_EVALUATIONS", "maybe"),
        ],
    )
    def test_invalid_value(self, tmp_path, key: str, value: str) -> None:
        os.environ[key] = value
        with pytest.raises(ConfigurationError, match=key):
            ForgeConfig(env_path=str(tmp_path / "nonexistent.env"))

    @pytest.mark.parametrize("raw, expected", [("true", True), ("1", True), ("YES", True), ("no", False), ("0", False)])
    def test_bool_spellings(self, tmp_path, raw: str, expected: bool) -> None:
        os.environ["ZETA_FORGE_LOG_EVALUATIONS"] = raw
        cfg = ForgeConfig(env_path=str(tmp_path / "nonexistent.env"))
        assert cfg.log_evaluations is expected
