#  Notch Studio - Config Validation Tests
#
#  Tests for validate_config() startup checks.
#
#  Depends on: notchstudio/config.py
#  Used by:    pytest

import logging
from unittest.mock import patch

import pytest

from notchstudio.config import ConfigError, cfg, validate_config


class TestValidateConfig:
    def test_defaults_pass(self):
        validate_config()  # should not raise

    @pytest.mark.parametrize("name,value,match", [
        ("DEFAULT_SAMPLE_RATE", 0, "sample_rate"),
        ("DEFAULT_POLE_RADIUS", 1.0, "pole_radius"),
        ("DEFAULT_POLE_RADIUS", "0.99", "pole_radius"),
        ("FRACTION_BITS", 0, "fraction_bits"),
        ("WORD_BITS", 15, "word_bits"),
        ("ROUNDING", "stochastic", "rounding"),
        ("SCALING_TERMS", 0, "scaling_terms"),
        ("FEEDBACK_GUARD_BITS", 9, "feedback_guard_bits"),
        ("SAMPLE_BITS", 16, "sample_bits"),
        ("SWEEP_POINTS", 1, "sweep_points"),
        ("SPECTRUM_NFFT", 1000, "spectrum_nfft"),
        ("COINCIDENCE_BAND_HZ", [4000.0, 1000.0], "coincidence_band_hz"),
    ])
    def test_raises_on_bad_value(self, name, value, match):
        with patch(f"notchstudio.config.{name}", value):
            with pytest.raises(ConfigError, match=match):
                validate_config()

    def test_warns_on_narrow_word(self, caplog):
        with patch("notchstudio.config.WORD_BITS", 16):
            with caplog.at_level(logging.WARNING):
                validate_config()
        assert "will overflow" in caplog.text

    def test_warns_on_narrow_accumulator(self, caplog):
        with patch("notchstudio.config.ACCUMULATOR_BITS", 24):
            with caplog.at_level(logging.WARNING):
                validate_config()
        assert "overflow-free" in caplog.text


class TestCfg:
    def test_missing_key_returns_default(self):
        assert cfg("no.such.key", 42) == 42
