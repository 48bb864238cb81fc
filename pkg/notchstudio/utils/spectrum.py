#  Notch Studio - Spectrum
#
#  Averaged magnitude spectrum of an audio stream: Hann frames of n_fft
#  samples at 50% overlap, power averaged across frames, reported in dB
#  relative to full scale. Exact silence maps to -inf.
#
#  Depends on: services/response_analysis.py, exceptions.py
#  Used by:    commands/spectrum.py

import logging
from dataclasses import dataclass

import numpy as np
from scipy import signal

from notchstudio.exceptions import DomainError
from notchstudio.services.response_analysis import magnitude_to_db

logger = logging.getLogger("notchstudio.spectrum")


@dataclass(frozen=True)
class SpectrumCurve:
    """Bins from 0 Hz to Nyquist."""
    freqs: np.ndarray
    magnitude_db: np.ndarray
    frames: int

    def __len__(self) -> int:
        return len(self.freqs)

    def bin_index(self, freq: float) -> int:
        return int(np.argmin(np.abs(self.freqs - freq)))

    def level_at(self, freq: float) -> float:
        return float(self.magnitude_db[self.bin_index(freq)])


def check_nfft(n_fft: int):
    if n_fft < 2 or n_fft & (n_fft - 1):
        raise DomainError(f"n_fft must be a power of two, got {n_fft}")


def compute_spectrum(samples, sample_rate: float, n_fft: int) -> SpectrumCurve:
    check_nfft(n_fft)
    x = np.asarray(samples, dtype=float)
    if len(x) < n_fft:
        raise DomainError(f"need at least n_fft={n_fft} samples, got {len(x)}")

    hop = n_fft // 2
    freqs, power = signal.welch(
        x, fs=sample_rate, window="hann", nperseg=n_fft, noverlap=n_fft - hop,
        detrend=False, scaling="spectrum",
    )
    frames = 1 + (len(x) - n_fft) // hop
    logger.debug("Spectrum: %d bins, %d frame(s)", len(freqs), frames)
    # Power spectrum -> amplitude in dB
    return SpectrumCurve(
        freqs=freqs,
        magnitude_db=np.atleast_1d(magnitude_to_db(np.sqrt(power))),
        frames=frames,
    )
