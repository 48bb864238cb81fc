#  Notch Studio - Coefficient File
#
#  Plain-text, lossless store for designed and quantized sections:
#
#      # notchstudio coefficients
#      sample_rate = 7400
#      fraction_bits = 15
#      word_bits = 17
#      rounding = truncate
#
#      [section 1]
#      notch_hz = 315
#      pole_radius = 0.98999999999999999
#      a0 = 1
#      ...
#      a0_q = 32768
#      ...
#
#  Floats are written at 17 significant digits so they read back bit-exact.
#  notch_hz, pole_radius and the *_q words are optional per section.
#
#  Depends on: services/filter_design.py, services/quantization.py,
#              models/schemas.py, exceptions.py
#  Used by:    commands/*

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from pydantic import ValidationError

from notchstudio.exceptions import CoefficientFileError
from notchstudio.models.enums import RoundingMode
from notchstudio.models.schemas import FixedFormat
from notchstudio.services.filter_design import Biquad, Cascade, cascade
from notchstudio.services.quantization import QuantizedBiquad, is_hardwired, quantize

logger = logging.getLogger("notchstudio.coefficient_file")

_HEADER_LINE = "# notchstudio coefficients"
_SECTION_RE = re.compile(r"^\[section\s+(\d+)\]$")
_COEFFICIENTS = ("a0", "a1", "a2", "b1", "b2")
_WORDS = tuple(f"{c}_q" for c in _COEFFICIENTS)
_HEADER_KEYS = {"sample_rate", "fraction_bits", "word_bits", "rounding"}
_SECTION_KEYS = {"notch_hz", "pole_radius", *_COEFFICIENTS, *_WORDS}


@dataclass(frozen=True)
class SectionRecord:
    biquad: Biquad
    quantized: QuantizedBiquad | None = None
    notch_hz: float | None = None
    pole_radius: float | None = None


@dataclass(frozen=True)
class CoefficientSet:
    sample_rate: float
    format: FixedFormat
    sections: list[SectionRecord] = field(default_factory=list)

    def cascade(self) -> Cascade:
        return cascade([s.biquad for s in self.sections])

    def quantized(self) -> list[QuantizedBiquad]:
        """Stored words, or the float coefficients quantized where none were stored."""
        return [s.quantized or quantize(s.biquad, self.format) for s in self.sections]

    def notch_freqs(self) -> list[float]:
        return [s.notch_hz for s in self.sections if s.notch_hz is not None]


def _g(value: float) -> str:
    return format(float(value), ".17g")


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------

def format_coefficients(coeffs: CoefficientSet) -> str:
    fmt = coeffs.format
    lines = [
        _HEADER_LINE,
        f"sample_rate = {_g(coeffs.sample_rate)}",
        f"fraction_bits = {fmt.fraction_bits}",
        f"word_bits = {fmt.word_bits}",
        f"rounding = {fmt.rounding.value}",
    ]
    for i, rec in enumerate(coeffs.sections, start=1):
        lines += ["", f"[section {i}]"]
        if rec.notch_hz is not None:
            lines.append(f"notch_hz = {_g(rec.notch_hz)}")
        if rec.pole_radius is not None:
            lines.append(f"pole_radius = {_g(rec.pole_radius)}")
        lines += [f"{name} = {_g(getattr(rec.biquad, name))}" for name in _COEFFICIENTS]
        if rec.quantized is not None:
            lines += [f"{name} = {word}" for name, word in zip(_WORDS, rec.quantized.words().values())]
    return "\n".join(lines) + "\n"


def write_coefficients(path: Path, coeffs: CoefficientSet):
    path = Path(path)
    path.write_text(format_coefficients(coeffs))
    logger.info("Wrote %d section(s) to %s", len(coeffs.sections), path)


# ---------------------------------------------------------------------------
# Reading
# ---------------------------------------------------------------------------

def _number(raw: str, lineno: int, integer: bool = False):
    try:
        return int(raw) if integer else float(raw)
    except ValueError:
        kind = "an integer" if integer else "a number"
        raise CoefficientFileError(f"expected {kind}, got '{raw}'", line=lineno) from None


def _build_section(values: dict, start_line: int, fmt: FixedFormat) -> SectionRecord:
    missing = [k for k in _COEFFICIENTS if k not in values]
    if missing:
        raise CoefficientFileError(f"section is missing {', '.join(missing)}", line=start_line)
    biquad = Biquad(*(values[k] for k in _COEFFICIENTS))

    present = [k for k in _WORDS if k in values]
    quantized = None
    if present:
        if len(present) != len(_WORDS):
            missing = sorted(set(_WORDS) - set(present))
            raise CoefficientFileError(
                f"section has partial quantized words; missing {', '.join(missing)}", line=start_line
            )
        words = {k: values[k] for k in _WORDS}
        for k, w in words.items():
            if not is_hardwired(k.removesuffix("_q"), w, fmt) and not (fmt.min_word <= w <= fmt.max_word):
                raise CoefficientFileError(
                    f"{k} = {w} does not fit {fmt.word_bits} signed bits", line=start_line
                )
        quantized = QuantizedBiquad(format=fmt, **words)

    return SectionRecord(
        biquad=biquad,
        quantized=quantized,
        notch_hz=values.get("notch_hz"),
        pole_radius=values.get("pole_radius"),
    )


def parse_coefficients(text: str) -> CoefficientSet:
    header: dict = {}
    raw_sections: list[tuple[int, dict]] = []
    current: dict | None = None

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue

        m = _SECTION_RE.match(line)
        if m:
            number = int(m.group(1))
            if number != len(raw_sections) + 1:
                raise CoefficientFileError(
                    f"expected [section {len(raw_sections) + 1}], got [section {number}]", line=lineno
                )
            current = {}
            raw_sections.append((lineno, current))
            continue

        if "=" not in line:
            raise CoefficientFileError(f"expected 'key = value', got '{line}'", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        target, allowed = (header, _HEADER_KEYS) if current is None else (current, _SECTION_KEYS)
        if key not in allowed:
            where = "header" if current is None else "section"
            raise CoefficientFileError(f"unknown {where} key '{key}'", line=lineno)
        if key in target:
            raise CoefficientFileError(f"duplicate key '{key}'", line=lineno)

        if key == "rounding":
            try:
                target[key] = RoundingMode(value)
            except ValueError:
                raise CoefficientFileError(f"unknown rounding mode '{value}'", line=lineno) from None
        else:
            integer = key in ("fraction_bits", "word_bits") or key.endswith("_q")
            target[key] = _number(value, lineno, integer=integer)

    if "sample_rate" not in header:
        raise CoefficientFileError("header is missing sample_rate")
    if header["sample_rate"] <= 0:
        raise CoefficientFileError(f"sample_rate must be positive, got {header['sample_rate']:g}")
    if not raw_sections:
        raise CoefficientFileError("file contains no [section N] blocks")

    try:
        fmt = FixedFormat(**{k: header[k] for k in ("fraction_bits", "word_bits", "rounding") if k in header})
    except ValidationError as e:
        raise CoefficientFileError(f"invalid fixed-point format: {e.errors()[0]['msg']}") from None

    sections = [_build_section(values, start, fmt) for start, values in raw_sections]
    return CoefficientSet(sample_rate=header["sample_rate"], format=fmt, sections=sections)


def read_coefficients(path: Path) -> CoefficientSet:
    path = Path(path)
    if not path.exists():
        raise CoefficientFileError(f"coefficient file not found: {path}")
    coeffs = parse_coefficients(path.read_text())
    logger.debug("Read %d section(s) from %s", len(coeffs.sections), path)
    return coeffs
