#  Notch Studio - Test Signals
#
#  Tones and speech-shaped noise for experiments and tests. Amplitudes are
#  relative to full scale (1.0). Noise is seeded so every run is repeatable.
#
#  Depends on: exceptions.py
#  Used by:    tests/*, experiments

import numpy as np
from scipy import signal

from notchstudio.exceptions import DomainError

# Band of the shaping filter that gives white noise a speech-like spectrum
SPEECH_BAND_HZ = (100.0, 3000.0)


def dbfs_to_amplitude(level_dbfs: float) -> float:
    return float(10.0 ** (level_dbfs / 20.0))


def _n_samples(sample_rate: float, duration: float) -> int:
    if sample_rate <= 0 or duration <= 0:
        raise DomainError(f"sample_rate and duration must be positive, got {sample_rate:g}, {duration:g}")
    return int(round(sample_rate * duration))


def tone(freq: float, sample_rate: float, duration: float, amplitude: float = 1.0, phase: float = 0.0) -> np.ndarray:
    n = np.arange(_n_samples(sample_rate, duration))
    return amplitude * np.sin(2.0 * np.pi * freq * n / sample_rate + phase)


def speech_shaped_noise(sample_rate: float, duration: float, rms: float, seed: int = 0) -> np.ndarray:
    """Gaussian noise band-limited to the speech band and scaled to the given RMS."""
    rng = np.random.default_rng(seed)
    white = rng.standard_normal(_n_samples(sample_rate, duration))
    hi = min(SPEECH_BAND_HZ[1], 0.45 * sample_rate)
    sos = signal.butter(4, [SPEECH_BAND_HZ[0], hi], btype="bandpass", fs=sample_rate, output="sos")
    shaped = signal.sosfilt(sos, white)
    return shaped * (rms / np.sqrt(np.mean(shaped ** 2)))


def white_noise(n_samples: int, std: float, seed: int = 0) -> np.ndarray:
    return np.random.default_rng(seed).normal(0.0, std, n_samples)
