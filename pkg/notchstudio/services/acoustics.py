#  Notch Studio - Building Acoustics
#
#  Sound-insulation quantities from room measurements, and detection of the
#  resonance and coincidence dips of an insulation curve. Each dip becomes
#  a NotchSpec for the filter designer.
#
#  Depends on: models/schemas.py, config.py, exceptions.py
#  Used by:    commands/acoustics.py

import logging
import math

from notchstudio.config import COINCIDENCE_BAND_HZ, RESONANCE_BAND_MAX_HZ
from notchstudio.exceptions import DomainError
from notchstudio.models.enums import DipKind
from notchstudio.models.schemas import (
    DipReport,
    InsulationCurve,
    InsulationPoint,
    NotchSpec,
    RoomMeasurement,
)

logger = logging.getLogger("notchstudio.acoustics")

# Sabine constant, s/m
SABINE = 0.161

# Preferred one-third-octave band centres of a building-acoustics measurement
THIRD_OCTAVE_CENTRES = (
    100.0, 125.0, 160.0, 200.0, 250.0, 315.0, 400.0, 500.0, 630.0,
    800.0, 1000.0, 1250.0, 1600.0, 2000.0, 2500.0, 3150.0, 4000.0, 5000.0,
)


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

def absorption_area(volume: float, reverb_time: float) -> float:
    """Equivalent absorption area A = 0.161 V / T, in m^2."""
    if volume <= 0 or reverb_time <= 0:
        raise DomainError(
            f"volume and reverberation time must be positive, got V={volume:g}, T={reverb_time:g}"
        )
    return SABINE * volume / reverb_time


def transmission_loss(l1: float, l2: float, area: float, absorption: float) -> float:
    """R = L1 - L2 + 10 log10(S / A), in dB."""
    if area <= 0 or absorption <= 0:
        raise DomainError(
            f"partition area and absorption area must be positive, got S={area:g}, A={absorption:g}"
        )
    return l1 - l2 + 10.0 * math.log10(area / absorption)


def sound_reduction(m: RoomMeasurement) -> float:
    return transmission_loss(m.L1, m.L2, m.S, absorption_area(m.V, m.T))


def curve_from_levels(
    freqs: list[float],
    source_levels: list[float],
    receiving_levels: list[float],
    area: float,
    volume: float,
    reverb_times: list[float],
) -> InsulationCurve:
    """Insulation curve built band by band from level and reverberation readings."""
    n = len(freqs)
    if not (len(source_levels) == len(receiving_levels) == len(reverb_times) == n):
        raise DomainError("every band needs a source level, a receiving level and a reverberation time")
    points = [
        InsulationPoint(
            freq=f,
            r_db=sound_reduction(RoomMeasurement(L1=l1, L2=l2, S=area, V=volume, T=t)),
        )
        for f, l1, l2, t in zip(freqs, source_levels, receiving_levels, reverb_times)
    ]
    return InsulationCurve(points=points)


# ---------------------------------------------------------------------------
# Dip detection
# ---------------------------------------------------------------------------

def _uphill_max(values: list[float], i: int, direction: int) -> float:
    """Climb from index i while the curve keeps rising; return the top value."""
    j = i
    while 0 <= j + direction < len(values) and values[j + direction] > values[j]:
        j += direction
    return values[j]


def _local_minima(curve: InsulationCurve) -> list[tuple[float, float]]:
    """(freq, depth) for each interior point lower than both neighbours."""
    freqs, values = curve.freqs, curve.values
    out = []
    for i in range(1, len(values) - 1):
        if values[i - 1] > values[i] < values[i + 1]:
            depth = min(_uphill_max(values, i, -1), _uphill_max(values, i, +1)) - values[i]
            out.append((freqs[i], depth))
    return out


def _deepest(candidates: list[tuple[float, float]]) -> tuple[float, float] | tuple[None, None]:
    if not candidates:
        return None, None
    return max(candidates, key=lambda c: c[1])


def find_dips(curve: InsulationCurve) -> DipReport:
    """Deepest resonance dip below the resonance limit and deepest dip in the coincidence band."""
    minima = _local_minima(curve)
    lo, hi = COINCIDENCE_BAND_HZ
    resonance = _deepest([m for m in minima if m[0] < RESONANCE_BAND_MAX_HZ])
    coincidence = _deepest([m for m in minima if lo <= m[0] <= hi])

    report = DipReport(
        resonance_freq=resonance[0],
        resonance_depth_db=resonance[1],
        coincidence_freq=coincidence[0],
        coincidence_depth_db=coincidence[1],
    )
    for kind, freq in ((DipKind.RESONANCE, report.resonance_freq),
                       (DipKind.COINCIDENCE, report.coincidence_freq)):
        if freq is None:
            logger.info("No %s dip found", kind.value)
        else:
            logger.info("%s dip at %g Hz", kind.value.capitalize(), freq)
    return report


def notch_specs_from_dips(report: DipReport, sample_rate: float, pole_radius: float) -> list[NotchSpec]:
    nyquist = sample_rate / 2
    specs = []
    for freq in report.frequencies():
        if freq >= nyquist:
            raise DomainError(
                f"dip at {freq:g} Hz lies at or above the Nyquist frequency {nyquist:g} Hz "
                f"for fs={sample_rate:g} Hz"
            )
        specs.append(NotchSpec(notch_freq=freq, sample_rate=sample_rate, pole_radius=pole_radius))
    return specs
