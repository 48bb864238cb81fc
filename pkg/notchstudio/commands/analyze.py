#  Notch Studio - analyze subcommand
#
#  Coefficient file -> stability check -> response sweep CSV and per-notch
#  depth / -3 dB bandwidth. Exit code 4 when any section is unstable.
#
#  Depends on: services/response_analysis.py, services/quantization.py,
#              utils/coefficient_file.py, utils/csv_io.py, config.py
#  Used by:    commands/registry.py

import argparse
import logging
from pathlib import Path

from notchstudio.commands.base import Command
from notchstudio.config import SWEEP_POINTS
from notchstudio.exceptions import StabilityError
from notchstudio.services.filter_design import cascade
from notchstudio.services.quantization import drift
from notchstudio.services.response_analysis import check_stability, measure_notch, sweep
from notchstudio.utils.coefficient_file import read_coefficients
from notchstudio.utils.csv_io import write_response_csv

logger = logging.getLogger("notchstudio.commands.analyze")


class AnalyzeCommand(Command):
    name = "analyze"
    help = "Sweep the response of a coefficient file and measure its notches"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("coefficients", type=Path, help="Coefficient file")
        parser.add_argument("--points", type=int, default=SWEEP_POINTS, help="Sweep points, 0 Hz to Nyquist")
        parser.add_argument("--quantized", action="store_true",
                            help="Analyze the quantized words instead of the float coefficients")
        parser.add_argument("-o", "--output", type=Path, default=None, help="Response CSV to write")

    def run(self, args: argparse.Namespace) -> dict:
        coeffs = read_coefficients(args.coefficients)
        quantized = coeffs.quantized()
        filt = cascade([q.to_biquad() for q in quantized]) if args.quantized else coeffs.cascade()

        stability = check_stability(filt)
        if not stability.stable:
            raise StabilityError(
                f"{args.coefficients}: pole magnitude {max(stability.pole_magnitudes):.12g} "
                "is on or outside the unit circle"
            )

        curve = sweep(filt, coeffs.sample_rate, args.points)
        if args.output is not None:
            write_response_csv(args.output, curve)

        measurements = [measure_notch(curve, f) for f in coeffs.notch_freqs()]
        for m in measurements:
            logger.info(
                "Notch %g Hz: depth %.1f dB, -3 dB width %.2f Hz",
                m.notch_freq, m.depth_db, m.bandwidth_3db,
            )

        return {
            "coefficients": str(args.coefficients),
            "response_csv": str(args.output) if args.output is not None else None,
            "analyzed": "quantized" if args.quantized else "float",
            "stability": stability.model_dump(mode="json"),
            "notches": [m.model_dump(mode="json") for m in measurements],
            "drift": [
                drift(rec.biquad, q).model_dump(mode="json", exclude={"roots"})
                for rec, q in zip(coeffs.sections, quantized)
            ],
        }
