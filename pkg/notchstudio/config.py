#  Notch Studio - Configuration
#
#  Loads config.json and provides typed access to all settings.
#  Dot-notation path lookup: cfg("engine.feedback_guard_bits")
#
#  Depends on: config.json (optional)
#  Used by:    all notchstudio modules

import json
import os
from pathlib import Path

# ---------------------------------------------------------------------------
# Path resolution
# ---------------------------------------------------------------------------

PROJECT_ROOT = Path(__file__).parent.parent
CONFIG_PATH = Path(os.environ.get("NOTCHSTUDIO_CONFIG", PROJECT_ROOT / "config.json"))

# ---------------------------------------------------------------------------
# Load config
# ---------------------------------------------------------------------------

_config: dict = {}


def _load_config(path: Path | None = None):
    """Load configuration from JSON file (internal, called once at import time).

    Module-level constants below are snapshots from _config.
    Do not call this function after import; constants won't update.
    """
    global _config
    config_path = path or CONFIG_PATH
    if not config_path.exists():
        raise FileNotFoundError(
            f"Config file not found: {config_path}. "
            "Copy config.example.json to config.json."
        )
    with open(config_path) as f:
        _config = json.load(f)


# Every key has a default, so a checkout without config.json still runs.
# A path named by NOTCHSTUDIO_CONFIG must exist.
if "NOTCHSTUDIO_CONFIG" in os.environ or CONFIG_PATH.exists():
    _load_config()


def cfg(path: str, default=None):
    """Get a config value by dot-notation path.

    Example: cfg("design.sample_rate") -> 7400
    """
    keys = path.split(".")
    val = _config
    for key in keys:
        if isinstance(val, dict) and key in val:
            val = val[key]
        else:
            return default
    return val


# ---------------------------------------------------------------------------
# Convenience constants
# ---------------------------------------------------------------------------

# Design
DEFAULT_SAMPLE_RATE = cfg("design.sample_rate", 7400.0)
DEFAULT_POLE_RADIUS = cfg("design.pole_radius", 0.99)

# Quantization
FRACTION_BITS = cfg("quantization.fraction_bits", 15)
WORD_BITS = cfg("quantization.word_bits", 17)
ROUNDING = cfg("quantization.rounding", "truncate")
SCALING_TERMS = cfg("quantization.scaling_terms", 4096)
SCALING_TAIL_BOUND = cfg("quantization.scaling_tail_bound", 1e-12)

# Fixed-point engine
SAMPLE_BITS = cfg("engine.sample_bits", 8)
ACCUMULATOR_BITS = cfg("engine.accumulator_bits", 28)
FEEDBACK_GUARD_BITS = cfg("engine.feedback_guard_bits", 0)

# Analysis
SWEEP_POINTS = cfg("analysis.sweep_points", 1024)
SPECTRUM_NFFT = cfg("analysis.spectrum_nfft", 1024)

# Acoustics
RESONANCE_BAND_MAX_HZ = cfg("acoustics.resonance_band_max_hz", 1000.0)
COINCIDENCE_BAND_HZ: list[float] = cfg("acoustics.coincidence_band_hz", [1000.0, 4000.0])

# Logging
LOG_LEVEL = cfg("logging.level", "INFO")
LOG_FORMAT = cfg("logging.format", "text")


# ---------------------------------------------------------------------------
# Startup validation
# ---------------------------------------------------------------------------

def validate_config():
    """Validate config values. Call from the CLI entry point (not at import time).

    Raises ConfigError for fatal issues, logs warnings for non-fatal ones.
    """
    import logging
    _logger = logging.getLogger("notchstudio.config")

    if not isinstance(DEFAULT_SAMPLE_RATE, (int, float)) or DEFAULT_SAMPLE_RATE <= 0:
        raise ConfigError(f"design.sample_rate must be > 0, got {DEFAULT_SAMPLE_RATE}")

    if not isinstance(DEFAULT_POLE_RADIUS, (int, float)) or not (0 < DEFAULT_POLE_RADIUS < 1):
        raise ConfigError(f"design.pole_radius must be in (0, 1), got {DEFAULT_POLE_RADIUS}")

    if not isinstance(FRACTION_BITS, int) or FRACTION_BITS < 1:
        raise ConfigError(f"quantization.fraction_bits must be >= 1, got {FRACTION_BITS}")

    if not isinstance(WORD_BITS, int) or WORD_BITS <= FRACTION_BITS:
        raise ConfigError(
            f"quantization.word_bits must exceed fraction_bits ({FRACTION_BITS}), got {WORD_BITS}"
        )

    if ROUNDING not in ("nearest_away", "nearest_even", "truncate"):
        raise ConfigError(
            "quantization.rounding must be one of nearest_away, nearest_even, truncate, "
            f"got '{ROUNDING}'"
        )

    if not isinstance(SCALING_TERMS, int) or SCALING_TERMS < 1:
        raise ConfigError(f"quantization.scaling_terms must be >= 1, got {SCALING_TERMS}")

    if not isinstance(FEEDBACK_GUARD_BITS, int) or not (0 <= FEEDBACK_GUARD_BITS <= 8):
        raise ConfigError(
            f"engine.feedback_guard_bits must be 0-8, got {FEEDBACK_GUARD_BITS}"
        )

    if SAMPLE_BITS != 8:
        raise ConfigError(
            f"engine.sample_bits must be 8 (lookup tables are 256 entries), got {SAMPLE_BITS}"
        )

    if not isinstance(SWEEP_POINTS, int) or SWEEP_POINTS < 2:
        raise ConfigError(f"analysis.sweep_points must be >= 2, got {SWEEP_POINTS}")

    if not isinstance(SPECTRUM_NFFT, int) or SPECTRUM_NFFT < 2 or SPECTRUM_NFFT & (SPECTRUM_NFFT - 1):
        raise ConfigError(f"analysis.spectrum_nfft must be a power of two, got {SPECTRUM_NFFT}")

    lo, hi = COINCIDENCE_BAND_HZ
    if not (0 < lo < hi):
        raise ConfigError(f"acoustics.coincidence_band_hz must be increasing, got {COINCIDENCE_BAND_HZ}")

    # Warning: a 1.15-style word cannot hold |a1| close to 2
    if WORD_BITS - FRACTION_BITS < 2:
        _logger.warning(
            "quantization.word_bits=%d leaves %d integer bit(s); notch coefficients "
            "near +/-2 will overflow",
            WORD_BITS, WORD_BITS - FRACTION_BITS,
        )

    if ACCUMULATOR_BITS < 28:
        _logger.warning(
            "engine.accumulator_bits=%d is below the 28-bit overflow-free width",
            ACCUMULATOR_BITS,
        )


class ConfigError(Exception):
    """Raised when critical configuration is invalid."""
