#  Notch Studio - E2E Pipeline Test
#
#  Full workflow: insulation curve -> acoustics -> coefficient file ->
#  filter (float and fixed) -> tone rejection and passband checks.
#  Speech-shaped noise carries two interfering tones at the dip frequencies.
#
#  Depends on: all notchstudio modules, tests/conftest.py
#  Used by:    pytest

import numpy as np
import pytest
from scipy import signal

from notchstudio.cli import EXIT_OK
from notchstudio.utils.signals import speech_shaped_noise, tone
from notchstudio.utils.spectrum import compute_spectrum
from notchstudio.utils.wav_io import read_wav
from tests.conftest import FS

pytestmark = pytest.mark.e2e

DURATION = 10.0
TONE_AMPLITUDE = 0.25
NOISE_RMS = 0.03


def _tone_magnitude(x: np.ndarray, freq: float) -> float:
    """Hann-windowed DFT magnitude at freq, skipping the first second of settling."""
    seg = x[int(FS):]
    spec = np.abs(np.fft.rfft(seg * signal.windows.hann(len(seg), sym=False)))
    return float(spec[int(round(freq * len(seg) / FS))])


def _band_power_db(x: np.ndarray, lo: float, hi: float) -> float:
    spec = compute_spectrum(x[int(FS):], FS, 1024)
    band = (spec.freqs >= lo) & (spec.freqs <= hi)
    return float(10 * np.log10(np.mean(10 ** (spec.magnitude_db[band] / 10))))


@pytest.fixture
def noisy_speech(wav_writer):
    x = (
        speech_shaped_noise(FS, DURATION, NOISE_RMS, seed=7)
        + tone(315.0, FS, DURATION, amplitude=TONE_AMPLITUDE)
        + tone(2500.0, FS, DURATION, amplitude=TONE_AMPLITUDE, phase=0.3)
    )
    return wav_writer("noisy.wav", x)


@pytest.fixture
def room_coefficients(cli, insulation_curve_path, tmp_path):
    path = tmp_path / "room.coef"
    code, result, _ = cli("acoustics", insulation_curve_path, "-o", path)
    assert code == EXIT_OK
    assert [s["notch_hz"] for s in result["sections"]] == [315.0, 2500.0]
    return path


class TestFullPipeline:
    def test_dft_bins_are_exact(self):
        n = int(FS * DURATION) - int(FS)
        assert 315.0 * n / FS == 2835
        assert 2500.0 * n / FS == 22500

    def test_float_engine_rejects_tones(self, cli, noisy_speech, room_coefficients, tmp_path):
        out = tmp_path / "float.wav"
        code, _, _ = cli("filter", noisy_speech, "--coefficients", room_coefficients,
                         "--engine", "float", "-o", out)
        assert code == EXIT_OK

        x, y = read_wav(noisy_speech).to_float(), read_wav(out).to_float()
        for f in (315.0, 2500.0):
            assert 20 * np.log10(_tone_magnitude(x, f) / _tone_magnitude(y, f)) >= 80.0
        assert abs(_band_power_db(y, 500, 2000) - _band_power_db(x, 500, 2000)) < 3.0

    def test_fixed_engine_rejects_tones(self, cli, noisy_speech, room_coefficients, tmp_path):
        out = tmp_path / "fixed.wav"
        code, result, _ = cli("filter", noisy_speech, "--coefficients", room_coefficients,
                              "--engine", "fixed", "--guard-bits", 8, "-o", out)
        assert code == EXIT_OK
        assert result["report"]["samples_processed"] == int(FS * DURATION)
        assert all(s["saturations"] == 0 for s in result["report"]["sections"])

        x, y = read_wav(noisy_speech).to_float(), read_wav(out).to_float()
        for f in (315.0, 2500.0):
            assert 20 * np.log10(_tone_magnitude(x, f) / _tone_magnitude(y, f)) >= 30.0
        assert abs(_band_power_db(y, 500, 2000) - _band_power_db(x, 500, 2000)) < 3.0

    def test_spectrum_shows_the_tones_removed(self, cli, noisy_speech, room_coefficients, tmp_path):
        filtered = tmp_path / "filtered.wav"
        assert cli("filter", noisy_speech, "--coefficients", room_coefficients,
                   "--engine", "float", "-o", filtered)[0] == EXIT_OK

        code, before, _ = cli("spectrum", noisy_speech, "--nfft", 1024, "-o", tmp_path / "before.csv")
        assert code == EXIT_OK
        assert before["peak_hz"] in (pytest.approx(317.97, abs=0.01), pytest.approx(2500.0, abs=4.0))

        code, after, _ = cli("spectrum", filtered, "--nfft", 1024, "-o", tmp_path / "after.csv")
        assert code == EXIT_OK
        assert after["peak_db"] < before["peak_db"] - 20.0

    def test_analyze_the_designed_file(self, cli, room_coefficients):
        code, result, _ = cli("analyze", room_coefficients, "--quantized", "--points", 8192)
        assert code == EXIT_OK
        assert result["stability"]["stable"]
        for n in result["notches"]:
            assert n["depth_db"] > 30.0
            assert n["bandwidth_3db"] == pytest.approx((1 - 0.99) * FS / np.pi, rel=0.25)
