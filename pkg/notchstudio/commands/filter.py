#  Notch Studio - filter subcommand
#
#  WAV in -> float reference or bit-exact 8-bit engine -> WAV out, with
#  engine statistics (fixed) or peak levels (float).
#
#  Depends on: services/fixed_point_engine.py, services/response_analysis.py,
#              utils/coefficient_file.py, utils/wav_io.py, config.py
#  Used by:    commands/registry.py

import argparse
import logging
from pathlib import Path

import numpy as np

from notchstudio.commands.base import Command
from notchstudio.config import FEEDBACK_GUARD_BITS
from notchstudio.exceptions import StabilityError
from notchstudio.models.enums import EngineKind
from notchstudio.services.fixed_point_engine import engines_from_quantized, run, run_reference
from notchstudio.services.filter_design import cascade
from notchstudio.services.response_analysis import check_stability, magnitude_to_db
from notchstudio.utils.coefficient_file import read_coefficients
from notchstudio.utils.wav_io import FULL_SCALE, AudioBuffer, read_wav, write_wav

logger = logging.getLogger("notchstudio.commands.filter")


def peak_dbfs(audio: AudioBuffer) -> float | None:
    if not len(audio):
        return None
    peak = int(np.max(np.abs(audio.samples.astype(np.int64))))
    db = magnitude_to_db(peak / FULL_SCALE)
    return db if np.isfinite(db) else None


class FilterCommand(Command):
    name = "filter"
    help = "Filter a 16-bit mono WAV file through the sections of a coefficient file"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("input", type=Path, help="Input WAV (16-bit PCM, mono)")
        parser.add_argument("--coefficients", type=Path, required=True, help="Coefficient file")
        parser.add_argument("--engine", choices=[e.value for e in EngineKind], default=EngineKind.FIXED.value)
        parser.add_argument("--guard-bits", type=int, default=FEEDBACK_GUARD_BITS,
                            help="Extra feedback fraction bits in the fixed engine (0-8)")
        parser.add_argument("-o", "--output", type=Path, required=True, help="Output WAV")

    def run(self, args: argparse.Namespace) -> dict:
        engine = EngineKind(args.engine)
        coeffs = read_coefficients(args.coefficients)
        if engine == EngineKind.FIXED:
            filt = cascade([q.to_biquad() for q in coeffs.quantized()])
        else:
            filt = coeffs.cascade()
        stability = check_stability(filt)
        if not stability.stable:
            raise StabilityError(f"{args.coefficients}: {engine.value} coefficients are unstable")

        audio = read_wav(args.input, expected_rate=coeffs.sample_rate)
        result = {
            "input": str(args.input),
            "output": str(args.output),
            "engine": engine.value,
            "sample_rate": audio.sample_rate,
            "samples": len(audio),
        }

        if engine == EngineKind.FIXED:
            engines = engines_from_quantized(coeffs.quantized(), args.guard_bits)
            out8, report = run(engines, audio.to_engine_samples())
            out = AudioBuffer.from_engine_samples(audio.sample_rate, out8)
            result["report"] = report.model_dump(mode="json")
        else:
            out = AudioBuffer.from_float(audio.sample_rate, run_reference(filt, audio.to_float()))

        write_wav(args.output, out)
        result["input_peak_dbfs"] = peak_dbfs(audio)
        result["output_peak_dbfs"] = peak_dbfs(out)
        logger.info("Filtered %d samples with the %s engine", len(audio), engine.value)
        return result
