#  Notch Studio - WAV I/O
#
#  16-bit PCM mono WAV files and the AudioBuffer they load into. The fixed
#  engine sees 8-bit samples: 16-bit values are requantized by a rounded
#  arithmetic shift of 8 and restored by shifting back.
#
#  Depends on: exceptions.py
#  Used by:    commands/filter.py, commands/spectrum.py

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from notchstudio.exceptions import AudioFormatError, DomainError

logger = logging.getLogger("notchstudio.wav_io")

FULL_SCALE = 32768
_ENGINE_SHIFT = 8


@dataclass(frozen=True)
class AudioBuffer:
    sample_rate: int
    samples: np.ndarray   # int16, mono

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise DomainError(f"sample_rate must be positive, got {self.sample_rate}")
        if self.samples.dtype != np.int16 or self.samples.ndim != 1:
            raise DomainError("AudioBuffer holds a 1-D int16 sample array")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate

    def to_engine_samples(self) -> np.ndarray:
        """8-bit view in [-128, 127], as int64 for the integer engine."""
        wide = self.samples.astype(np.int64)
        return np.clip((wide + (1 << (_ENGINE_SHIFT - 1))) >> _ENGINE_SHIFT, -128, 127)

    @classmethod
    def from_engine_samples(cls, sample_rate: int, samples) -> "AudioBuffer":
        wide = np.asarray(samples, dtype=np.int64)
        if wide.size and (wide.min() < -128 or wide.max() > 127):
            raise DomainError("engine samples must lie in the signed 8-bit range")
        return cls(sample_rate, (wide << _ENGINE_SHIFT).astype(np.int16))

    def to_float(self) -> np.ndarray:
        return self.samples.astype(float) / FULL_SCALE

    @classmethod
    def from_float(cls, sample_rate: int, samples) -> "AudioBuffer":
        """Round and clip a float stream in [-1, 1) to 16-bit PCM."""
        scaled = np.round(np.asarray(samples, dtype=float) * FULL_SCALE)
        clipped = np.clip(scaled, -FULL_SCALE, FULL_SCALE - 1)
        n_clipped = int(np.count_nonzero(clipped != scaled))
        if n_clipped:
            logger.warning("Clipped %d sample(s) converting to 16-bit PCM", n_clipped)
        return cls(sample_rate, clipped.astype(np.int16))


def read_wav(path: Path, expected_rate: int | float | None = None) -> AudioBuffer:
    path = Path(path)
    if not path.exists():
        raise AudioFormatError(f"WAV file not found: {path}")
    try:
        rate, data = wavfile.read(path)
    except ValueError as e:
        raise AudioFormatError(f"{path}: not a readable WAV file ({e})") from None

    if data.ndim != 1:
        raise AudioFormatError(f"{path}: expected mono, got {data.shape[1]} channels")
    if data.dtype != np.int16:
        raise AudioFormatError(f"{path}: expected 16-bit PCM, got {data.dtype}")
    if expected_rate is not None and rate != expected_rate:
        raise AudioFormatError(
            f"{path}: sample rate {rate} Hz does not match the design rate {expected_rate:g} Hz "
            "(resampling is not supported)"
        )
    logger.debug("Read %d samples at %d Hz from %s", len(data), rate, path)
    return AudioBuffer(int(rate), data)


def write_wav(path: Path, audio: AudioBuffer):
    path = Path(path)
    wavfile.write(path, audio.sample_rate, audio.samples)
    logger.info("Wrote %d samples at %d Hz to %s", len(audio), audio.sample_rate, path)
