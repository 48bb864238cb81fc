#  Notch Studio - design subcommand
#
#  Notch frequencies -> float sections -> quantized words -> coefficient
#  file, with a stability summary for both coefficient sets.
#
#  Depends on: services/filter_design.py, services/quantization.py,
#              services/response_analysis.py, utils/coefficient_file.py, config.py
#  Used by:    commands/registry.py, commands/acoustics.py

import argparse
import logging
from dataclasses import asdict
from pathlib import Path

from notchstudio.commands.base import Command
from notchstudio.config import (
    DEFAULT_POLE_RADIUS,
    DEFAULT_SAMPLE_RATE,
    FRACTION_BITS,
    ROUNDING,
    WORD_BITS,
)
from notchstudio.models.schemas import FixedFormat, NotchSpec
from notchstudio.services.filter_design import cascade, design_notch, notch_spec_from_bandwidth
from notchstudio.services.quantization import quantize
from notchstudio.services.response_analysis import check_stability
from notchstudio.utils.coefficient_file import CoefficientSet, SectionRecord, write_coefficients

logger = logging.getLogger("notchstudio.commands.design")


def add_design_arguments(parser: argparse.ArgumentParser):
    """Flags shared by every subcommand that designs sections."""
    parser.add_argument("--fs", type=float, default=DEFAULT_SAMPLE_RATE, help="Sample rate, Hz")
    parser.add_argument("--r", type=float, default=DEFAULT_POLE_RADIUS, help="Pole radius in (0, 1)")
    parser.add_argument("--bandwidth", type=float, default=None,
                        help="-3 dB notch width in Hz (overrides --r)")
    parser.add_argument("--unity-dc", action="store_true", help="Scale each numerator for unity DC gain")
    parser.add_argument("--fraction-bits", type=int, default=FRACTION_BITS)
    parser.add_argument("--word-bits", type=int, default=WORD_BITS)
    parser.add_argument("-o", "--output", type=Path, required=True, help="Coefficient file to write")


def specs_for(freqs: list[float], args: argparse.Namespace) -> list[NotchSpec]:
    if args.bandwidth is not None:
        return [notch_spec_from_bandwidth(f, args.bandwidth, args.fs) for f in freqs]
    return [NotchSpec(notch_freq=f, sample_rate=args.fs, pole_radius=args.r) for f in freqs]


def design_and_write(specs: list[NotchSpec], args: argparse.Namespace) -> dict:
    """Design, quantize, check and write; returns the summary printed on stdout."""
    fmt = FixedFormat(fraction_bits=args.fraction_bits, word_bits=args.word_bits, rounding=ROUNDING)
    records = []
    for spec in specs:
        biquad = design_notch(spec, unity_dc_gain=args.unity_dc)
        records.append(SectionRecord(
            biquad=biquad,
            quantized=quantize(biquad, fmt),
            notch_hz=spec.notch_freq,
            pole_radius=spec.pole_radius,
        ))

    coeffs = CoefficientSet(sample_rate=args.fs, format=fmt, sections=records)
    designed = check_stability(coeffs.cascade())
    quantized = check_stability(cascade([q.to_biquad() for q in coeffs.quantized()]))
    write_coefficients(args.output, coeffs)
    logger.info("Designed %d section(s) at fs=%g Hz", len(records), args.fs)

    return {
        "output": str(args.output),
        "sample_rate": args.fs,
        "format": fmt.model_dump(mode="json"),
        "sections": [
            {
                "notch_hz": r.notch_hz,
                "pole_radius": r.pole_radius,
                "coefficients": asdict(r.biquad),
                "words": r.quantized.words(),
            }
            for r in records
        ],
        "stability": {
            "designed": designed.model_dump(mode="json"),
            "quantized": quantized.model_dump(mode="json"),
        },
    }


class DesignCommand(Command):
    name = "design"
    help = "Design notch sections and write a coefficient file"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("--notch", type=float, action="append", required=True,
                            help="Notch frequency in Hz (repeat for a cascade)")
        add_design_arguments(parser)

    def run(self, args: argparse.Namespace) -> dict:
        return design_and_write(specs_for(args.notch, args), args)
