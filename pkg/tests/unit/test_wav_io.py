#  Notch Studio - WAV I/O Tests
#
#  Depends on: notchstudio/utils/wav_io.py
#  Used by:    pytest

import logging

import numpy as np
import pytest
from scipy.io import wavfile

from notchstudio.exceptions import AudioFormatError, DomainError
from notchstudio.utils.wav_io import AudioBuffer, read_wav, write_wav


class TestAudioBuffer:
    def test_requires_int16(self):
        with pytest.raises(DomainError):
            AudioBuffer(7400, np.zeros(10, dtype=np.int32))

    def test_requires_mono(self):
        with pytest.raises(DomainError):
            AudioBuffer(7400, np.zeros((10, 2), dtype=np.int16))

    def test_duration(self):
        assert AudioBuffer(7400, np.zeros(3700, dtype=np.int16)).duration == 0.5

    def test_to_engine_samples(self):
        audio = AudioBuffer(7400, np.array([256, 128, 127, -128, -129, 32767, -32768], dtype=np.int16))
        assert audio.to_engine_samples().tolist() == [1, 1, 0, 0, -1, 127, -128]

    def test_from_engine_samples(self):
        audio = AudioBuffer.from_engine_samples(7400, [1, -128, 127, 0])
        assert audio.samples.tolist() == [256, -32768, 32512, 0]

    def test_engine_samples_survive_the_round_trip(self):
        s = np.arange(-128, 128)
        assert AudioBuffer.from_engine_samples(7400, s).to_engine_samples().tolist() == s.tolist()

    def test_engine_samples_out_of_range(self):
        with pytest.raises(DomainError):
            AudioBuffer.from_engine_samples(7400, [0, 128])

    def test_from_float_rounds(self):
        audio = AudioBuffer.from_float(7400, [0.0, 0.5, -0.5, -1.0])
        assert audio.samples.tolist() == [0, 16384, -16384, -32768]

    def test_from_float_clips_and_warns(self, caplog):
        with caplog.at_level(logging.WARNING):
            audio = AudioBuffer.from_float(7400, [1.0, 2.0, -3.0])
        assert audio.samples.tolist() == [32767, 32767, -32768]
        assert "Clipped 3" in caplog.text

    def test_to_float(self):
        audio = AudioBuffer(7400, np.array([16384, -32768], dtype=np.int16))
        assert audio.to_float().tolist() == [0.5, -1.0]


class TestWavFiles:
    def test_write_then_read(self, tmp_path):
        audio = AudioBuffer(7400, np.array([0, 1, -1, 32767, -32768], dtype=np.int16))
        path = tmp_path / "x.wav"
        write_wav(path, audio)
        back = read_wav(path, expected_rate=7400)
        assert back.sample_rate == 7400
        assert back.samples.tolist() == audio.samples.tolist()

    def test_float_rate_matches_integer_rate(self, wav_writer):
        assert read_wav(wav_writer("a.wav", np.zeros(10)), expected_rate=7400.0).sample_rate == 7400

    def test_rate_mismatch(self, wav_writer):
        path = wav_writer("a.wav", np.zeros(10), sample_rate=8000)
        with pytest.raises(AudioFormatError, match="8000"):
            read_wav(path, expected_rate=7400)

    def test_stereo_rejected(self, tmp_path):
        path = tmp_path / "stereo.wav"
        wavfile.write(path, 7400, np.zeros((100, 2), dtype=np.int16))
        with pytest.raises(AudioFormatError, match="mono"):
            read_wav(path)

    @pytest.mark.parametrize("dtype", [np.uint8, np.float32, np.int32])
    def test_non_16_bit_rejected(self, tmp_path, dtype):
        path = tmp_path / "other.wav"
        wavfile.write(path, 7400, np.zeros(100, dtype=dtype))
        with pytest.raises(AudioFormatError, match="16-bit"):
            read_wav(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(AudioFormatError, match="not found"):
            read_wav(tmp_path / "missing.wav")

    def test_not_a_wav(self, tmp_path):
        path = tmp_path / "text.wav"
        path.write_text("this is not audio data at all")
        with pytest.raises(AudioFormatError, match="not a readable WAV"):
            read_wav(path)
