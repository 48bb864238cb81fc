#  Notch Studio - Filter Design
#
#  Pole/zero placement of second-order notch sections and their cascades.
#  Zeros sit on the unit circle at the notch angle, poles at radius r on the
#  same angle. Convention for every section:
#
#      H(z) = (a0 + a1 z^-1 + a2 z^-2) / (1 + b1 z^-1 + b2 z^-2)
#
#  Angles are carried in radians internally; degrees only at the API edge.
#
#  Depends on: models/schemas.py, exceptions.py
#  Used by:    services/response_analysis.py, services/quantization.py,
#              services/acoustics.py, commands/*

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import signal

from notchstudio.exceptions import DomainError
from notchstudio.models.schemas import NotchSpec

logger = logging.getLogger("notchstudio.filter_design")

# Tolerance for pairing a complex root with its conjugate
_CONJUGATE_TOL = 1e-9


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Biquad:
    """One second-order section with a monic denominator."""
    a0: float
    a1: float
    a2: float
    b1: float
    b2: float

    @classmethod
    def unity(cls) -> "Biquad":
        return cls(1.0, 0.0, 0.0, 0.0, 0.0)

    def numerator(self) -> np.ndarray:
        """Coefficients in ascending powers of z^-1."""
        return np.array([self.a0, self.a1, self.a2], dtype=float)

    def denominator(self) -> np.ndarray:
        return np.array([1.0, self.b1, self.b2], dtype=float)


@dataclass(frozen=True)
class PolynomialFilter:
    """Numerator/denominator pair of arbitrary order (ascending powers of z^-1).

    Produced when a pole/zero set is larger than one section; the fixed-point
    engine only accepts Biquads.
    """
    num: tuple[float, ...]
    den: tuple[float, ...]

    def numerator(self) -> np.ndarray:
        return np.array(self.num, dtype=float)

    def denominator(self) -> np.ndarray:
        return np.array(self.den, dtype=float)

    def to_biquad(self) -> Biquad:
        if len(self.num) > 3 or len(self.den) > 3:
            raise DomainError(
                f"order {max(len(self.num), len(self.den)) - 1} filter does not fit one biquad section"
            )
        num = list(self.num) + [0.0] * (3 - len(self.num))
        den = list(self.den) + [0.0] * (3 - len(self.den))
        return Biquad(num[0], num[1], num[2], den[1], den[2])


@dataclass(frozen=True)
class Cascade:
    """Ordered sections; H(z) is the product of the section responses."""
    sections: tuple[Biquad, ...]

    def __post_init__(self):
        if not self.sections:
            raise DomainError("a cascade needs at least one section")

    def __len__(self) -> int:
        return len(self.sections)

    def __iter__(self):
        return iter(self.sections)

    def numerator(self) -> np.ndarray:
        out = np.array([1.0])
        for s in self.sections:
            out = np.convolve(out, s.numerator())
        return out

    def denominator(self) -> np.ndarray:
        out = np.array([1.0])
        for s in self.sections:
            out = np.convolve(out, s.denominator())
        return out


@dataclass(frozen=True)
class PoleZeroSet:
    """Roots of H(z) = k * prod(z - z_i) / prod(z - p_i)."""
    zeros: tuple[complex, ...] = field(default_factory=tuple)
    poles: tuple[complex, ...] = field(default_factory=tuple)
    gain: float = 1.0


# ---------------------------------------------------------------------------
# Angles and radii
# ---------------------------------------------------------------------------

def _check_below_nyquist(freq: float, sample_rate: float):
    if sample_rate <= 0:
        raise DomainError(f"sample_rate must be positive, got {sample_rate:g} Hz")
    nyquist = sample_rate / 2
    if not (0 < freq < nyquist):
        raise DomainError(
            f"frequency {freq:g} Hz must lie in (0, {nyquist:g}) Hz, below the Nyquist frequency"
        )


def angle_radians(freq: float, sample_rate: float) -> float:
    """z-plane angle omega*T = 2*pi*freq/sample_rate."""
    _check_below_nyquist(freq, sample_rate)
    return 2.0 * math.pi * freq / sample_rate


def angle_for_frequency(freq: float, sample_rate: float) -> float:
    """z-plane angle in degrees, 360*freq/sample_rate."""
    _check_below_nyquist(freq, sample_rate)
    return 360.0 * freq / sample_rate


def radius_from_bandwidth(bandwidth: float, sample_rate: float) -> float:
    """Pole radius for a -3 dB notch width: r = 1 - pi * BW / fs."""
    if sample_rate <= 0:
        raise DomainError(f"sample_rate must be positive, got {sample_rate:g} Hz")
    if bandwidth < 0:
        raise DomainError(f"bandwidth must be non-negative, got {bandwidth:g} Hz")
    r = 1.0 - math.pi * bandwidth / sample_rate
    if r <= 0:
        raise DomainError(
            f"bandwidth {bandwidth:g} Hz is too wide for fs={sample_rate:g} Hz "
            f"(must be below fs/pi = {sample_rate / math.pi:g} Hz)"
        )
    return r


def notch_spec_from_bandwidth(notch_freq: float, bandwidth: float, sample_rate: float) -> NotchSpec:
    r = radius_from_bandwidth(bandwidth, sample_rate)
    if r >= 1.0:
        raise DomainError("zero bandwidth puts the poles on the unit circle")
    return NotchSpec(notch_freq=notch_freq, sample_rate=sample_rate, pole_radius=r)


# ---------------------------------------------------------------------------
# Design
# ---------------------------------------------------------------------------

def design_notch(spec: NotchSpec, unity_dc_gain: bool = False) -> Biquad:
    """Place zeros at e^{+-j theta} and poles at r e^{+-j theta}.

    With unity_dc_gain the numerator is scaled so that H(1) = 1; by default
    a0 = a2 = 1 and the DC gain sits slightly above 1.
    """
    theta = angle_radians(spec.notch_freq, spec.sample_rate)
    c = math.cos(theta)
    r = spec.pole_radius
    a0, a1, a2 = 1.0, -2.0 * c, 1.0
    b1, b2 = -2.0 * r * c, r * r

    if unity_dc_gain:
        num_dc = a0 + a1 + a2
        den_dc = 1.0 + b1 + b2
        if num_dc == 0:
            raise DomainError("cannot normalize DC gain: the notch sits at DC")
        g = den_dc / num_dc
        a0, a1, a2 = a0 * g, a1 * g, a2 * g

    logger.debug(
        "Notch %.6g Hz @ fs=%.6g, r=%.6g: theta=%.6f deg a1=%.15g b1=%.15g b2=%.15g",
        spec.notch_freq, spec.sample_rate, r, math.degrees(theta), a1, b1, b2,
    )
    return Biquad(a0, a1, a2, b1, b2)


def _check_conjugates(roots: tuple[complex, ...], label: str):
    unmatched = [complex(x) for x in roots]
    while unmatched:
        x = unmatched.pop()
        if abs(x.imag) <= _CONJUGATE_TOL:
            continue
        target = x.conjugate()
        idx = min(range(len(unmatched)), key=lambda i: abs(unmatched[i] - target), default=None)
        if idx is None or abs(unmatched[idx] - target) > _CONJUGATE_TOL:
            raise DomainError(f"{label} {x} has no conjugate partner; coefficients would not be real")
        unmatched.pop(idx)


def transfer_from_pole_zero(pz: PoleZeroSet) -> Biquad | PolynomialFilter:
    """Expand k * prod(z - z_i) / prod(z - p_i) into real coefficients.

    Returns a Biquad when at most two poles are given, otherwise a
    PolynomialFilter. The denominator comes out monic with the gain folded
    into the numerator; a shorter numerator is delayed (left-padded).
    """
    _check_conjugates(pz.zeros, "zero")
    _check_conjugates(pz.poles, "pole")
    if len(pz.zeros) > len(pz.poles):
        raise DomainError(
            f"{len(pz.zeros)} zeros over {len(pz.poles)} poles is not causal"
        )

    b, a = signal.zpk2tf(list(pz.zeros), list(pz.poles), pz.gain)
    b = np.atleast_1d(np.real_if_close(b, tol=1e6)).astype(float)
    a = np.atleast_1d(np.real_if_close(a, tol=1e6)).astype(float)
    # Descending powers of z -> ascending powers of z^-1 of equal length
    b = np.concatenate([np.zeros(len(a) - len(b)), b])

    if len(a) <= 3:
        return PolynomialFilter(tuple(b), tuple(a)).to_biquad()
    return PolynomialFilter(tuple(b), tuple(a))


def pole_zero_set(section: Biquad) -> PoleZeroSet:
    """Roots and gain of one section (inverse of transfer_from_pole_zero)."""
    if section.a0 == 0:
        raise DomainError("a0 = 0: the section has fewer than two finite zeros")
    zeros = np.roots([section.a0, section.a1, section.a2])
    poles = np.roots([1.0, section.b1, section.b2])
    # Trailing zero coefficients give roots at the origin that np.roots drops
    zeros = np.concatenate([zeros, np.zeros(2 - len(zeros))])
    poles = np.concatenate([poles, np.zeros(2 - len(poles))])
    return PoleZeroSet(
        zeros=tuple(complex(z) for z in zeros),
        poles=tuple(complex(p) for p in poles),
        gain=section.a0,
    )


def cascade(filters: list[Biquad]) -> Cascade:
    if not filters:
        raise DomainError("cannot cascade an empty list of sections")
    return Cascade(tuple(filters))
