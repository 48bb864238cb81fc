#  Notch Studio - Pydantic Schemas
#
#  Validated specifications and serializable reports. Numeric value types
#  that live on the hot path (Biquad, Cascade, engine state) are frozen
#  dataclasses in their service modules instead.
#
#  Depends on: config.py, models/enums.py
#  Used by:    services/*, commands/*

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from notchstudio.config import COINCIDENCE_BAND_HZ
from notchstudio.models.enums import RoundingMode


# ---------------------------------------------------------------------------
# Filter design
# ---------------------------------------------------------------------------

class NotchSpec(BaseModel):
    """One notch: frequency to null, sampling rate and pole radius."""
    model_config = ConfigDict(frozen=True)

    notch_freq: float = Field(..., gt=0)
    sample_rate: float = Field(..., gt=0)
    pole_radius: float = Field(..., gt=0, lt=1)

    @model_validator(mode="after")
    def check_below_nyquist(self):
        nyquist = self.sample_rate / 2
        if self.notch_freq >= nyquist:
            raise ValueError(
                f"notch_freq {self.notch_freq:g} Hz must lie below the Nyquist "
                f"frequency {nyquist:g} Hz"
            )
        return self


# ---------------------------------------------------------------------------
# Response analysis
# ---------------------------------------------------------------------------

class StabilityReport(BaseModel):
    pole_magnitudes: list[float]
    stable: bool


class NotchMeasurement(BaseModel):
    notch_freq: float
    min_freq: float               # Grid frequency of the located minimum
    reference_magnitude: float    # Median passband magnitude
    depth_db: float               # Reference level minus minimum, in dB (inf for an exact zero)
    bandwidth_3db: float
    lower_3db: float
    upper_3db: float


# ---------------------------------------------------------------------------
# Quantization
# ---------------------------------------------------------------------------

class FixedFormat(BaseModel):
    """Fixed-point grid: step 2^-fraction_bits, signed storage of word_bits."""
    model_config = ConfigDict(frozen=True)

    fraction_bits: int = Field(default=15, ge=1)
    rounding: RoundingMode = RoundingMode.TRUNCATE
    word_bits: int = Field(default=17, ge=2)

    @model_validator(mode="after")
    def check_word_holds_fraction(self):
        if self.word_bits <= self.fraction_bits:
            raise ValueError(
                f"word_bits ({self.word_bits}) must exceed fraction_bits ({self.fraction_bits})"
            )
        return self

    @property
    def scale(self) -> int:
        return 1 << self.fraction_bits

    @property
    def max_word(self) -> int:
        return (1 << (self.word_bits - 1)) - 1

    @property
    def min_word(self) -> int:
        return -(1 << (self.word_bits - 1))


class RootDrift(BaseModel):
    kind: str = Field(..., pattern="^(pole|zero)$")
    original: complex
    quantized: complex
    distance: float = Field(..., ge=0)


class DriftReport(BaseModel):
    roots: list[RootDrift] = Field(default_factory=list)
    max_pole_drift: float = Field(..., ge=0)
    max_zero_drift: float = Field(..., ge=0)


class SectionScaling(BaseModel):
    norm: float          # L1 norm of the truncated impulse response
    scale: float         # Recommended input scale, 1 / norm
    n_terms: int
    tail: float          # |h[n_terms - 1]|
    converged: bool      # tail below the configured bound


# ---------------------------------------------------------------------------
# Fixed-point engine
# ---------------------------------------------------------------------------

class SectionStats(BaseModel):
    saturations: int = 0
    peak_accumulator: int = 0


class EngineReport(BaseModel):
    samples_processed: int = 0
    guard_bits: int = 0
    accumulator_bits: int = 28
    sections: list[SectionStats] = Field(default_factory=list)

    @property
    def total_saturations(self) -> int:
        return sum(s.saturations for s in self.sections)


# ---------------------------------------------------------------------------
# Acoustics
# ---------------------------------------------------------------------------

class RoomMeasurement(BaseModel):
    """Levels and room data for one band of a sound-insulation measurement."""
    model_config = ConfigDict(frozen=True)

    L1: float                     # Source-side average SPL, dB
    L2: float                     # Receiving-room average SPL, dB
    S: float = Field(..., gt=0)   # Partition area, m^2
    V: float = Field(..., gt=0)   # Receiving-room volume, m^3
    T: float = Field(..., gt=0)   # Reverberation time, s


class InsulationPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    freq: float = Field(..., gt=0)
    r_db: float


class InsulationCurve(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: list[InsulationPoint]

    @field_validator("points")
    @classmethod
    def check_increasing(cls, v):
        if len(v) < 3:
            raise ValueError(f"an insulation curve needs at least 3 points, got {len(v)}")
        for prev, cur in zip(v, v[1:]):
            if cur.freq <= prev.freq:
                raise ValueError(
                    f"frequencies must be strictly increasing ({prev.freq:g} Hz then {cur.freq:g} Hz)"
                )
        return v

    @property
    def freqs(self) -> list[float]:
        return [p.freq for p in self.points]

    @property
    def values(self) -> list[float]:
        return [p.r_db for p in self.points]


class DipReport(BaseModel):
    resonance_freq: float | None = None
    resonance_depth_db: float | None = None
    coincidence_freq: float | None = None
    coincidence_depth_db: float | None = None

    @field_validator("coincidence_freq")
    @classmethod
    def check_coincidence_band(cls, v):
        lo, hi = COINCIDENCE_BAND_HZ
        if v is not None and not (lo <= v <= hi):
            raise ValueError(f"coincidence_freq {v:g} Hz lies outside the {lo:g}-{hi:g} Hz band")
        return v

    def frequencies(self) -> list[float]:
        return [f for f in (self.resonance_freq, self.coincidence_freq) if f is not None]
