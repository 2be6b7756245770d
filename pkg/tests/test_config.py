"""Tests for environment-driven settings."""

import pytest
from pydantic import ValidationError

from firststory.core.config import Settings
from firststory.models.detection import WeightingMode


class TestSettings:
    def test_defaults(self):
        settings = Settings(_env_file=None)
        assert settings.mode is WeightingMode.INCREMENTAL
        assert settings.threshold == 0.5
        assert settings.lsh_bits == 13
        assert settings.lsh_tables is None

    def test_mode_from_environment_any_case(self, monkeypatch):
        monkeypatch.setenv("FIRSTSTORY_MODE", "Static")
        assert Settings(_env_file=None).mode is WeightingMode.STATIC

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, mode="sideways")

    def test_log_level_normalized(self, monkeypatch):
        monkeypatch.setenv("FIRSTSTORY_LOG_LEVEL", "debug")
        assert Settings(_env_file=None).log_level == "DEBUG"

    def test_invalid_log_level_rejected(self):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, log_level="LOUD")
