#  Notch Studio - Test Fixtures
#
#  Shared fixtures for the test suite: the reference two-notch design at
#  fs = 7400 Hz, its quantized words, the synthetic insulation curve and
#  WAV/coefficient file writers.
#
#  Depends on: notchstudio/services/*, notchstudio/utils/*
#  Used by:    all test files

import json
import logging
from pathlib import Path

import numpy as np
import pytest

from notchstudio.cli import main
from notchstudio.models.schemas import FixedFormat, NotchSpec
from notchstudio.services.filter_design import cascade, design_notch
from notchstudio.services.quantization import quantize
from notchstudio.utils.coefficient_file import CoefficientSet, SectionRecord, write_coefficients
from notchstudio.utils.wav_io import AudioBuffer, write_wav

FIXTURES = Path(__file__).parent / "fixtures"

FS = 7400.0
RADIUS = 0.99

# Reference coefficients of the two notch sections
A1_315 = -1.92889061398584
B1_315 = -1.90960170784598
A1_2500 = 1.048614567114460
B1_2500 = 1.03812842144331
B2 = 0.9801


# ---------------------------------------------------------------------------
# Global cleanup fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(autouse=True)
def _reset_notchstudio_logging():
    """The CLI installs a stderr handler; drop it so it never outlives a captured stream."""
    yield
    logger = logging.getLogger("notchstudio")
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)


# ---------------------------------------------------------------------------
# Designs
# ---------------------------------------------------------------------------

@pytest.fixture
def spec_315():
    return NotchSpec(notch_freq=315.0, sample_rate=FS, pole_radius=RADIUS)


@pytest.fixture
def spec_2500():
    return NotchSpec(notch_freq=2500.0, sample_rate=FS, pole_radius=RADIUS)


@pytest.fixture
def section_315(spec_315):
    return design_notch(spec_315)


@pytest.fixture
def section_2500(spec_2500):
    return design_notch(spec_2500)


@pytest.fixture
def reference_cascade(section_315, section_2500):
    return cascade([section_315, section_2500])


@pytest.fixture
def q_315(section_315):
    return quantize(section_315, FixedFormat())


@pytest.fixture
def q_2500(section_2500):
    return quantize(section_2500, FixedFormat())


@pytest.fixture
def quantized_cascade(q_315, q_2500):
    return cascade([q_315.to_biquad(), q_2500.to_biquad()])


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------

@pytest.fixture
def insulation_curve_path():
    return FIXTURES / "insulation_curve.csv"


@pytest.fixture
def coefficient_path(tmp_path, spec_315, spec_2500, section_315, section_2500, q_315, q_2500):
    """Coefficient file holding the two-notch design and its words."""
    path = tmp_path / "reference.coef"
    write_coefficients(path, CoefficientSet(
        sample_rate=FS,
        format=FixedFormat(),
        sections=[
            SectionRecord(section_315, q_315, spec_315.notch_freq, spec_315.pole_radius),
            SectionRecord(section_2500, q_2500, spec_2500.notch_freq, spec_2500.pole_radius),
        ],
    ))
    return path


@pytest.fixture
def wav_writer(tmp_path):
    """Write a float stream in [-1, 1) as 16-bit PCM mono and return its path."""
    def _write(name: str, samples, sample_rate: int = int(FS)) -> Path:
        path = tmp_path / name
        write_wav(path, AudioBuffer.from_float(sample_rate, np.asarray(samples, dtype=float)))
        return path
    return _write


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

@pytest.fixture
def cli(capsys):
    """Run the CLI in-process; returns (exit code, parsed stdout JSON or None, stderr)."""
    def _run(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        result = json.loads(captured.out) if captured.out.strip() else None
        return code, result, captured.err
    return _run
