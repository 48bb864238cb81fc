#  Notch Studio - Coefficient Quantization
#
#  Rounds section coefficients onto a 2^-fraction_bits grid held in signed
#  words, reports how far the roots move, and computes L1-norm input scaling
#  that keeps the adders from overflowing.
#
#  Words are plain Python ints (unbounded); numpy integer dtypes are never
#  used for coefficient arithmetic.
#
#  Depends on: services/filter_design.py, services/response_analysis.py,
#              models/schemas.py, config.py, exceptions.py
#  Used by:    services/fixed_point_engine.py, commands/*, utils/coefficient_file.py

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from notchstudio.config import SCALING_TAIL_BOUND, SCALING_TERMS
from notchstudio.exceptions import CoefficientRangeError, DomainError
from notchstudio.models.enums import RoundingMode
from notchstudio.models.schemas import DriftReport, FixedFormat, RootDrift, SectionScaling
from notchstudio.services.filter_design import Biquad, Cascade
from notchstudio.services.response_analysis import check_stability

logger = logging.getLogger("notchstudio.quantization")

_COEFFICIENTS = ("a0", "a1", "a2", "b1", "b2")
_HARDWIRED = ("a0", "a2")
_GRID_TOLERANCE = 1e-9    # in LSBs


# ---------------------------------------------------------------------------
# Quantized section
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuantizedBiquad:
    """Integer coefficient words; real value of each is word * 2^-fraction_bits."""
    a0_q: int
    a1_q: int
    a2_q: int
    b1_q: int
    b2_q: int
    format: FixedFormat

    def words(self) -> dict[str, int]:
        return {name: getattr(self, f"{name}_q") for name in _COEFFICIENTS}

    def value(self, name: str) -> float:
        return getattr(self, f"{name}_q") / self.format.scale

    def to_biquad(self) -> Biquad:
        return Biquad(*(self.value(name) for name in _COEFFICIENTS))


def round_to_grid(value: float, fmt: FixedFormat) -> int:
    """Word for value on the 2^-fraction_bits grid under the format's rounding mode."""
    scaled = value * fmt.scale
    if fmt.rounding == RoundingMode.NEAREST_AWAY:
        word = int(math.copysign(math.floor(abs(scaled) + 0.5), scaled))
    elif fmt.rounding == RoundingMode.NEAREST_EVEN:
        word = round(scaled)
    else:
        # Floating-point residue such as -2*cos(pi/2) = -1.2e-16 sits on the grid
        nearest = round(scaled)
        word = nearest if abs(scaled - nearest) < _GRID_TOLERANCE else math.floor(scaled)
    return word


def is_hardwired(name: str, word: int, fmt: FixedFormat) -> bool:
    """a0/a2 words of 0 or exactly 1.0 become a wire or a shift, never a stored word."""
    return name in _HARDWIRED and word in (0, fmt.scale)


def quantize(filt: Biquad, fmt: FixedFormat | None = None) -> QuantizedBiquad:
    fmt = fmt or FixedFormat()
    words = {}
    for name in _COEFFICIENTS:
        value = getattr(filt, name)
        word = round_to_grid(value, fmt)
        if not is_hardwired(name, word, fmt) and not (fmt.min_word <= word <= fmt.max_word):
            raise CoefficientRangeError(
                f"{name} = {value:.15g} needs word {word}, outside the signed "
                f"{fmt.word_bits}-bit range [{fmt.min_word}, {fmt.max_word}]"
            )
        words[f"{name}_q"] = word
    q = QuantizedBiquad(format=fmt, **words)
    logger.debug("Quantized %s -> %s", filt, q.words())
    return q


def quantize_cascade(filt: Cascade, fmt: FixedFormat | None = None) -> list[QuantizedBiquad]:
    return [quantize(s, fmt) for s in filt.sections]


# ---------------------------------------------------------------------------
# Root drift
# ---------------------------------------------------------------------------

def _section_roots(coeffs: list[float]) -> list[complex]:
    return [complex(r) for r in np.roots(coeffs)]


def _pair_roots(original: list[complex], quantized: list[complex]) -> list[tuple[complex, complex]]:
    """Greedy minimal-distance pairing; exact for degree <= 2."""
    remaining = list(quantized)
    pairs = []
    for r in original:
        if not remaining:
            break
        idx = min(range(len(remaining)), key=lambda i: abs(remaining[i] - r))
        pairs.append((r, remaining.pop(idx)))
    return pairs


def drift(original: Biquad, quantized: QuantizedBiquad) -> DriftReport:
    """How far each pole and zero moved in the z-plane after quantization."""
    q = quantized.to_biquad()
    entries: list[RootDrift] = []
    for kind, orig_coeffs, q_coeffs in (
        ("zero", list(original.numerator()), list(q.numerator())),
        ("pole", list(original.denominator()), list(q.denominator())),
    ):
        pairs = _pair_roots(_section_roots(orig_coeffs), _section_roots(q_coeffs))
        entries.extend(
            RootDrift(kind=kind, original=a, quantized=b, distance=abs(a - b)) for a, b in pairs
        )

    def _max(kind: str) -> float:
        return max((e.distance for e in entries if e.kind == kind), default=0.0)

    report = DriftReport(roots=entries, max_pole_drift=_max("pole"), max_zero_drift=_max("zero"))
    if not check_stability(q).stable:
        logger.warning(
            "Quantized section at %d fraction bits is unstable (pole drift %.3g)",
            quantized.format.fraction_bits, report.max_pole_drift,
        )
    return report


# ---------------------------------------------------------------------------
# Adder scaling
# ---------------------------------------------------------------------------

def impulse_response(section: Biquad, n_terms: int) -> np.ndarray:
    impulse = np.zeros(n_terms)
    impulse[0] = 1.0
    return signal.lfilter(section.numerator(), section.denominator(), impulse)


def scaling_factor(filt: Cascade, n_terms: int = SCALING_TERMS) -> list[SectionScaling]:
    """Per-section L1 norm of the truncated impulse response and its reciprocal.

    An input bounded by scale * full_scale keeps the section output within
    full scale.
    """
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    report = check_stability(filt)
    if not report.stable:
        raise DomainError(
            f"L1 norm diverges: pole magnitude {max(report.pole_magnitudes):.12g} >= 1"
        )

    out = []
    for i, section in enumerate(filt.sections):
        h = impulse_response(section, n_terms)
        norm = float(np.sum(np.abs(h)))
        tail = float(abs(h[-1]))
        converged = tail < SCALING_TAIL_BOUND
        if not converged:
            logger.warning(
                "Section %d impulse response not settled after %d terms (|h| = %.3g)",
                i + 1, n_terms, tail,
            )
        out.append(SectionScaling(
            norm=norm, scale=1.0 / norm if norm > 0 else 1.0,
            n_terms=n_terms, tail=tail, converged=converged,
        ))
    return out
