#  Notch Studio - Enums
#
#  Mode and kind enumerations used across the system.
#
#  Depends on: (none)
#  Used by:    models/schemas.py, services/*, commands/*

from enum import Enum


class RoundingMode(str, Enum):
    NEAREST_AWAY = "nearest_away"    # Ties away from zero
    NEAREST_EVEN = "nearest_even"    # Ties to even (banker's)
    TRUNCATE = "truncate"            # Drop LSBs: floor in two's complement


class EngineKind(str, Enum):
    FLOAT = "float"      # Double-precision reference recursion
    FIXED = "fixed"      # Bit-exact 8-bit sample / LUT datapath


class DipKind(str, Enum):
    RESONANCE = "resonance"
    COINCIDENCE = "coincidence"
