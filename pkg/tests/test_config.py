"""
Settings Tests.

Test Category: Unit
Related Code: stratzero/config.py

Coverage:
- Defaults and STRATZERO_ environment overrides
- Validation of log format, value range and limits
"""

import pytest
from pydantic import ValidationError

from stratzero.config import Settings, get_settings

pytestmark = pytest.mark.unit


class TestSettings:
    def test_defaults(self):
        settings = Settings()
        assert settings.value_range == (-50, 50)
        assert settings.log_level == "INFO"
        assert settings.bench_workers == 1
        assert settings.bench_inner_runs == 3

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("STRATZERO_VALUE_LOW", "-5")
        monkeypatch.setenv("STRATZERO_VALUE_HIGH", "5")
        monkeypatch.setenv("STRATZERO_LOG_LEVEL", "debug")
        settings = Settings()
        assert settings.value_range == (-5, 5)
        assert settings.log_level == "DEBUG"

    def test_get_settings_is_cached(self, monkeypatch):
        first = get_settings()
        monkeypatch.setenv("STRATZERO_MAX_REDRAWS", "7")
        assert get_settings() is first
        get_settings.cache_clear()
        assert get_settings().max_redraws == 7

    def test_bad_log_format(self):
        with pytest.raises(ValidationError, match="log_format"):
            Settings(log_format="xml")

    @pytest.mark.parametrize(("low", "high"), [(3, 1), (0, 0)])
    def test_bad_value_range(self, low, high):
        with pytest.raises(ValidationError):
            Settings(value_low=low, value_high=high)

    def test_single_nonzero_value_is_allowed(self):
        assert Settings(value_low=4, value_high=4).value_range == (4, 4)

    @pytest.mark.parametrize(
        "override",
        [
            {"float_tolerance": -1.0},
            {"support_enum_max_dim": 0},
            {"max_redraws": 0},
            {"bench_workers": 0},
            {"bench_inner_runs": 0},
        ],
    )
    def test_bad_limits(self, override):
        with pytest.raises(ValidationError):
            Settings(**override)
