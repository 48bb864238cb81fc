#  Notch Studio - Fixed-Point Engine
#
#  Bit-exact software model of the 8-bit notch datapath: delay registers,
#  lookup-table multipliers and one accumulation per section per sample.
#
#      acc = a0*x + a1*x1 + a2*x2 - b1*y1 - b2*y2      (scaled by 2^fraction_bits)
#      y   = sat8(round(acc * 2^-fraction_bits))
#
#  Taps whose word is 0 or exactly 1.0 are hardwired (absent / shift), so a
#  notch section needs three tables (a1, b1, b2). With feedback guard bits
#  the y registers keep extra fraction bits; feedback products are then
#  assembled from the high-byte table and a small low-part table.
#
#  All arithmetic uses Python ints; numpy only carries the sample streams.
#
#  Depends on: services/quantization.py, services/filter_design.py,
#              models/schemas.py, config.py, exceptions.py
#  Used by:    commands/filter.py

import logging
from dataclasses import dataclass

import numpy as np
from scipy import signal

from notchstudio.config import ACCUMULATOR_BITS, FEEDBACK_GUARD_BITS
from notchstudio.exceptions import CoefficientRangeError, DomainError
from notchstudio.models.schemas import EngineReport, SectionStats
from notchstudio.services.filter_design import Cascade
from notchstudio.services.quantization import QuantizedBiquad

logger = logging.getLogger("notchstudio.fixed_point_engine")

SAMPLE_MIN = -128
SAMPLE_MAX = 127
MAX_GUARD_BITS = 8

# Table multiplier port: 17-bit signed coefficient words
_LUT_WORD_LIMIT = 1 << 16


def round_shift(value: int, shift: int) -> int:
    """value * 2^-shift rounded to nearest, ties away from zero."""
    if shift <= 0:
        return value << -shift
    half = 1 << (shift - 1)
    if value >= 0:
        return (value + half) >> shift
    return -((half - value) >> shift)


def _saturate(value: int, lo: int, hi: int) -> tuple[int, bool]:
    if value > hi:
        return hi, True
    if value < lo:
        return lo, True
    return value, False


# ---------------------------------------------------------------------------
# Lookup tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplierLut:
    """256 exact products sample * word, indexed by the signed 8-bit sample."""
    coefficient_word: int
    table: tuple[int, ...]

    def __getitem__(self, sample: int) -> int:
        return self.table[sample - SAMPLE_MIN]

    def __len__(self) -> int:
        return len(self.table)


@dataclass(frozen=True)
class LowPartLut:
    """Products of the unsigned guard bits (0 .. 2^bits - 1) with a word."""
    coefficient_word: int
    bits: int
    table: tuple[int, ...]

    def __getitem__(self, low: int) -> int:
        return self.table[low]


def _check_word(coefficient_word: int):
    if abs(coefficient_word) >= _LUT_WORD_LIMIT:
        raise CoefficientRangeError(
            f"coefficient word {coefficient_word} does not fit the 17-bit table multiplier"
        )


def build_lut(coefficient_word: int) -> MultiplierLut:
    _check_word(coefficient_word)
    return MultiplierLut(
        coefficient_word=coefficient_word,
        table=tuple(s * coefficient_word for s in range(SAMPLE_MIN, SAMPLE_MAX + 1)),
    )


def build_low_lut(coefficient_word: int, bits: int) -> LowPartLut:
    _check_word(coefficient_word)
    return LowPartLut(
        coefficient_word=coefficient_word,
        bits=bits,
        table=tuple(low * coefficient_word for low in range(1 << bits)),
    )


# ---------------------------------------------------------------------------
# Section engine
# ---------------------------------------------------------------------------

@dataclass
class EngineState:
    """Delay registers. y1/y2 carry guard_bits extra fraction bits."""
    x1: int = 0
    x2: int = 0
    y1: int = 0
    y2: int = 0
    accumulator: int = 0


@dataclass
class _FeedforwardTap:
    """a0 or a2: absent, a plain shift for 1.0, or a table."""
    word: int
    shift: int
    lut: MultiplierLut | None = None

    @classmethod
    def for_word(cls, word: int, fraction_bits: int) -> "_FeedforwardTap":
        if word == 0 or word == 1 << fraction_bits:
            return cls(word, fraction_bits)
        return cls(word, fraction_bits, build_lut(word))

    @property
    def hardwired(self) -> bool:
        return self.lut is None

    def __call__(self, sample: int) -> int:
        if self.lut is not None:
            return self.lut[sample]
        return sample << self.shift if self.word else 0


@dataclass
class _FeedbackTap:
    lut: MultiplierLut
    low: LowPartLut | None = None

    def __call__(self, register: int, guard_bits: int) -> int:
        if not guard_bits:
            return self.lut[register]
        high = register >> guard_bits
        low = register & ((1 << guard_bits) - 1)
        return (self.lut[high] << guard_bits) + self.low[low]


class SectionEngine:
    """One biquad of the datapath. Stateful; one instance per thread."""

    def __init__(self, section: QuantizedBiquad, guard_bits: int = FEEDBACK_GUARD_BITS):
        if not (0 <= guard_bits <= MAX_GUARD_BITS):
            raise DomainError(f"guard_bits must be 0-{MAX_GUARD_BITS}, got {guard_bits}")
        self.section = section
        self.fraction_bits = section.format.fraction_bits
        self.guard_bits = guard_bits
        self.accumulator_bits = ACCUMULATOR_BITS + guard_bits

        self._a0 = _FeedforwardTap.for_word(section.a0_q, self.fraction_bits)
        self._a1 = build_lut(section.a1_q)
        self._a2 = _FeedforwardTap.for_word(section.a2_q, self.fraction_bits)
        low = (lambda w: build_low_lut(w, guard_bits)) if guard_bits else (lambda w: None)
        self._b1 = _FeedbackTap(build_lut(section.b1_q), low(section.b1_q))
        self._b2 = _FeedbackTap(build_lut(section.b2_q), low(section.b2_q))

        self._feedback_max = ((SAMPLE_MAX + 1) << guard_bits) - 1
        self._feedback_min = SAMPLE_MIN << guard_bits
        self.state = EngineState()
        self.stats = SectionStats()
        self._overflow_logged = False

    @classmethod
    def from_quantized(cls, section: QuantizedBiquad, guard_bits: int = FEEDBACK_GUARD_BITS) -> "SectionEngine":
        return cls(section, guard_bits)

    @property
    def table_count(self) -> int:
        """Sample-indexed multiplier tables in use (low-part tables excluded)."""
        return 3 + sum(not t.hardwired for t in (self._a0, self._a2))

    def reset(self):
        self.state = EngineState()
        self.stats = SectionStats()

    def begin_run(self):
        """Zero the counters; registers carry over."""
        self.stats = SectionStats()

    def step(self, x: int) -> int:
        if not (SAMPLE_MIN <= x <= SAMPLE_MAX):
            raise DomainError(f"sample {x} is outside the signed 8-bit range")
        st = self.state
        g = self.guard_bits

        acc = (self._a0(x) + self._a1[st.x1] + self._a2(st.x2)) << g
        acc -= self._b1(st.y1, g) + self._b2(st.y2, g)
        st.accumulator = acc

        magnitude = abs(acc)
        if magnitude > self.stats.peak_accumulator:
            self.stats.peak_accumulator = magnitude
            if magnitude >= 1 << (self.accumulator_bits - 1) and not self._overflow_logged:
                logger.warning(
                    "Accumulator reached %d, beyond the %d-bit width",
                    acc, self.accumulator_bits,
                )
                self._overflow_logged = True

        y_fb, clipped_fb = _saturate(
            round_shift(acc, self.fraction_bits), self._feedback_min, self._feedback_max
        )
        y, clipped = _saturate(round_shift(acc, self.fraction_bits + g), SAMPLE_MIN, SAMPLE_MAX)
        if clipped or clipped_fb:
            self.stats.saturations += 1

        st.x2, st.x1 = st.x1, x
        st.y2, st.y1 = st.y1, y_fb
        return y


def engines_from_quantized(
    sections: list[QuantizedBiquad], guard_bits: int = FEEDBACK_GUARD_BITS
) -> list[SectionEngine]:
    return [SectionEngine.from_quantized(s, guard_bits) for s in sections]


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------

def run(engines: list[SectionEngine], samples) -> tuple[np.ndarray, EngineReport]:
    """Feed each sample through every section in order within one sample period."""
    if not engines:
        raise DomainError("run needs at least one section engine")
    for e in engines:
        e.begin_run()

    stream = np.asarray(samples)
    out = np.empty(len(stream), dtype=np.int16)
    steps = [e.step for e in engines]
    for n, x in enumerate(stream.tolist()):
        v = int(x)
        for step in steps:
            v = step(v)
        out[n] = v

    report = EngineReport(
        samples_processed=len(stream),
        guard_bits=engines[0].guard_bits,
        accumulator_bits=engines[0].accumulator_bits,
        sections=[e.stats.model_copy() for e in engines],
    )
    if report.total_saturations:
        logger.warning(
            "%d saturation(s) over %d samples: %s",
            report.total_saturations, report.samples_processed,
            [s.saturations for s in report.sections],
        )
    return out, report


def run_reference(filt: Cascade, samples) -> np.ndarray:
    """Double-precision recursion, section by section."""
    y = np.asarray(samples, dtype=float)
    for section in filt.sections:
        y = signal.lfilter(section.numerator(), section.denominator(), y)
    return y
