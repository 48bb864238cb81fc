#  Notch Studio - spectrum subcommand
#
#  Depends on: utils/spectrum.py, utils/wav_io.py, utils/csv_io.py, config.py
#  Used by:    commands/registry.py

import argparse
import logging
import math
from pathlib import Path

import numpy as np

from notchstudio.commands.base import Command
from notchstudio.config import SPECTRUM_NFFT
from notchstudio.utils.csv_io import write_spectrum_csv
from notchstudio.utils.spectrum import check_nfft, compute_spectrum
from notchstudio.utils.wav_io import read_wav

logger = logging.getLogger("notchstudio.commands.spectrum")


class SpectrumCommand(Command):
    name = "spectrum"
    help = "Averaged Hann-window magnitude spectrum of a WAV file as CSV"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("input", type=Path, help="Input WAV (16-bit PCM, mono)")
        parser.add_argument("--nfft", type=int, default=SPECTRUM_NFFT, help="Frame length, a power of two")
        parser.add_argument("-o", "--output", type=Path, required=True, help="Spectrum CSV to write")

    def run(self, args: argparse.Namespace) -> dict:
        check_nfft(args.nfft)
        audio = read_wav(args.input)
        spectrum = compute_spectrum(audio.to_float(), audio.sample_rate, args.nfft)
        write_spectrum_csv(args.output, spectrum)

        peak = int(np.argmax(spectrum.magnitude_db))
        peak_db = float(spectrum.magnitude_db[peak])
        silent = math.isinf(peak_db)
        if silent:
            logger.info("%s is silent", args.input)
        return {
            "input": str(args.input),
            "output": str(args.output),
            "bins": len(spectrum),
            "frames": spectrum.frames,
            "peak_hz": None if silent else float(spectrum.freqs[peak]),
            "peak_db": None if silent else peak_db,
        }
