#  Notch Studio - Response Analysis
#
#  Frequency response by polynomial evaluation and by the geometric
#  pole/zero vector method, stability checks, and notch depth/bandwidth
#  measurement on a sampled response curve.
#
#  Depends on: services/filter_design.py, models/schemas.py, exceptions.py
#  Used by:    services/quantization.py, commands/analyze.py, commands/design.py

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from notchstudio.exceptions import DomainError, MeasurementError, SingularityError
from notchstudio.models.schemas import NotchMeasurement, StabilityReport
from notchstudio.services.filter_design import Biquad, Cascade, PoleZeroSet, PolynomialFilter

logger = logging.getLogger("notchstudio.response_analysis")

# Distance below which the evaluation point is treated as sitting on a pole
_SINGULAR_EPS = 1e-15


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

def magnitude_to_db(magnitude):
    """20*log10(|H|), with -inf as the sentinel for an exact zero."""
    mag = np.asarray(magnitude, dtype=float)
    with np.errstate(divide="ignore"):
        db = np.where(mag > 0, 20.0 * np.log10(np.where(mag > 0, mag, 1.0)), -np.inf)
    return float(db) if db.ndim == 0 else db


@dataclass(frozen=True)
class ResponsePoint:
    freq: float
    magnitude: float
    magnitude_db: float
    phase: float

    @classmethod
    def from_complex(cls, freq: float, h: complex) -> "ResponsePoint":
        mag = abs(h)
        return cls(freq, mag, magnitude_to_db(mag), cmath.phase(h))


@dataclass(frozen=True)
class ResponseCurve:
    """Sampled response from 0 Hz to Nyquist, held column-wise."""
    sample_rate: float
    freqs: np.ndarray
    magnitude: np.ndarray
    magnitude_db: np.ndarray
    phase: np.ndarray

    def __post_init__(self):
        if len(self.freqs) < 2 or np.any(np.diff(self.freqs) <= 0):
            raise DomainError("response curve frequencies must be strictly increasing")
        if self.freqs[0] != 0 or not math.isclose(self.freqs[-1], self.sample_rate / 2):
            raise DomainError("response curve must span 0 Hz to Nyquist")

    def __len__(self) -> int:
        return len(self.freqs)

    @property
    def points(self) -> list[ResponsePoint]:
        return [
            ResponsePoint(float(f), float(m), float(d), float(p))
            for f, m, d, p in zip(self.freqs, self.magnitude, self.magnitude_db, self.phase)
        ]


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _check_band(freq, sample_rate: float):
    f = np.asarray(freq, dtype=float)
    if sample_rate <= 0:
        raise DomainError(f"sample_rate must be positive, got {sample_rate:g}")
    if np.any(f < 0) or np.any(f > sample_rate / 2):
        raise DomainError(f"frequency must lie in [0, {sample_rate / 2:g}] Hz")


def _sections(filt) -> list:
    if isinstance(filt, Cascade):
        return list(filt.sections)
    if hasattr(filt, "to_biquad") and not isinstance(filt, PolynomialFilter):
        return [filt.to_biquad()]    # QuantizedBiquad
    return [filt]


def frequency_response(filt, freqs, sample_rate: float) -> np.ndarray:
    """Complex H(e^{j omega T}) at each frequency (vectorized)."""
    _check_band(freqs, sample_rate)
    zinv = np.exp(-2j * np.pi * np.asarray(freqs, dtype=float) / sample_rate)
    h = np.ones_like(zinv)
    for s in _sections(filt):
        h = h * P.polyval(zinv, s.numerator()) / P.polyval(zinv, s.denominator())
    return h


def evaluate_polynomial(filt, freq: float, sample_rate: float) -> ResponsePoint:
    """Numerator over denominator polynomial at z = e^{j omega T}."""
    h = complex(frequency_response(filt, [freq], sample_rate)[0])
    return ResponsePoint.from_complex(freq, h)


def evaluate_geometric(pz: PoleZeroSet, freq: float, sample_rate: float) -> ResponsePoint:
    """Magnitude and phase from the vectors joining each root to e^{j omega T}.

    |H| = k * prod|U_i| / prod|V_i|,  angle H = sum(Theta_i) - sum(Phi_i).
    """
    _check_band(freq, sample_rate)
    point = cmath.exp(2j * math.pi * freq / sample_rate)

    magnitude = abs(pz.gain)
    phase = 0.0 if pz.gain >= 0 else math.pi
    for z in pz.zeros:
        u = point - z
        magnitude *= abs(u)
        phase += cmath.phase(u)
    for p in pz.poles:
        v = point - p
        if abs(v) < _SINGULAR_EPS:
            raise SingularityError(f"evaluation point {freq:g} Hz coincides with pole {p}")
        magnitude /= abs(v)
        phase -= cmath.phase(v)

    # Wrap to (-pi, pi] so phases compare with the polynomial form
    phase = math.atan2(math.sin(phase), math.cos(phase))
    return ResponsePoint(freq, magnitude, magnitude_to_db(magnitude), phase)


def sweep(filt, sample_rate: float, n_points: int) -> ResponseCurve:
    """Uniform grid from 0 Hz to Nyquist."""
    if n_points < 2:
        raise DomainError(f"a sweep needs at least 2 points, got {n_points}")
    freqs = np.linspace(0.0, sample_rate / 2, n_points)
    h = frequency_response(filt, freqs, sample_rate)
    mag = np.abs(h)
    return ResponseCurve(
        sample_rate=sample_rate,
        freqs=freqs,
        magnitude=mag,
        magnitude_db=magnitude_to_db(mag),
        phase=np.angle(h),
    )


# ---------------------------------------------------------------------------
# Stability
# ---------------------------------------------------------------------------

def _quadratic_roots(b1: float, b2: float) -> list[complex]:
    """Roots of z^2 + b1 z + b2."""
    disc = cmath.sqrt(b1 * b1 - 4.0 * b2)
    return [(-b1 + disc) / 2.0, (-b1 - disc) / 2.0]


def denominator_roots(filt) -> list[complex]:
    """Poles of every section: closed form for biquads, companion matrix otherwise."""
    roots: list[complex] = []
    for s in _sections(filt):
        if isinstance(s, Biquad):
            roots.extend(_quadratic_roots(s.b1, s.b2))
        else:
            roots.extend(complex(r) for r in np.roots(s.denominator()))
    return roots


def check_stability(filt) -> StabilityReport:
    """Stable iff every pole magnitude is strictly below 1."""
    mags = [abs(p) for p in denominator_roots(filt)]
    stable = all(m < 1.0 for m in mags)
    if not stable:
        logger.warning("Unstable filter: max pole magnitude %.12g", max(mags))
    return StabilityReport(pole_magnitudes=mags, stable=stable)


# ---------------------------------------------------------------------------
# Notch measurement
# ---------------------------------------------------------------------------

def _crossing(freqs, mag, i_from: int, i_to: int, threshold: float) -> float:
    """Linear interpolation of the frequency where mag passes threshold between two grid points."""
    f0, f1 = freqs[i_from], freqs[i_to]
    m0, m1 = mag[i_from], mag[i_to]
    if m1 == m0:
        return float(f1)
    return float(f0 + (threshold - m0) * (f1 - f0) / (m1 - m0))


def measure_notch(curve: ResponseCurve, notch_freq: float) -> NotchMeasurement:
    """Depth and -3 dB width of the notch nearest notch_freq.

    The reference is the median magnitude of the sweep; the -3 dB level is
    reference / sqrt(2). Crossings are linearly interpolated.
    """
    freqs, mag = curve.freqs, curve.magnitude
    if not (freqs[0] <= notch_freq <= freqs[-1]):
        raise DomainError(f"notch {notch_freq:g} Hz lies outside the curve")

    # Walk downhill from the nearest grid point to the local minimum
    i = int(np.argmin(np.abs(freqs - notch_freq)))
    while True:
        if i > 0 and mag[i - 1] < mag[i]:
            i -= 1
        elif i < len(mag) - 1 and mag[i + 1] < mag[i]:
            i += 1
        else:
            break

    reference = float(np.median(mag))
    threshold = reference / math.sqrt(2.0)
    if mag[i] >= threshold:
        raise MeasurementError(f"no notch below -3 dB near {notch_freq:g} Hz")

    lo = i
    while lo > 0 and mag[lo] < threshold:
        lo -= 1
    hi = i
    while hi < len(mag) - 1 and mag[hi] < threshold:
        hi += 1
    if mag[lo] < threshold or mag[hi] < threshold:
        raise MeasurementError(f"notch at {notch_freq:g} Hz has no -3 dB crossing on both sides")

    lower = _crossing(freqs, mag, lo, lo + 1, threshold)
    upper = _crossing(freqs, mag, hi - 1, hi, threshold)
    depth = float(magnitude_to_db(reference) - magnitude_to_db(mag[i]))

    return NotchMeasurement(
        notch_freq=notch_freq,
        min_freq=float(freqs[i]),
        reference_magnitude=reference,
        depth_db=depth,
        bandwidth_3db=upper - lower,
        lower_3db=lower,
        upper_3db=upper,
    )
