#  Notch Studio - acoustics subcommand
#
#  Full pipeline entry point: insulation curve CSV -> resonance and
#  coincidence dips -> one notch section per dip -> coefficient file.
#  A curve without dips writes nothing.
#
#  Depends on: services/acoustics.py, commands/design.py, utils/csv_io.py
#  Used by:    commands/registry.py

import argparse
import logging
from pathlib import Path

from notchstudio.commands.base import Command
from notchstudio.commands.design import add_design_arguments, design_and_write
from notchstudio.models.schemas import NotchSpec
from notchstudio.services.acoustics import find_dips, notch_specs_from_dips
from notchstudio.services.filter_design import radius_from_bandwidth
from notchstudio.utils.csv_io import read_insulation_csv

logger = logging.getLogger("notchstudio.commands.acoustics")


class AcousticsCommand(Command):
    name = "acoustics"
    help = "Find insulation dips in a curve CSV and design a notch for each"

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("curve", type=Path, help="Insulation curve CSV (freq_hz,r_db)")
        add_design_arguments(parser)

    def run(self, args: argparse.Namespace) -> dict:
        curve = read_insulation_csv(args.curve)
        report = find_dips(curve)
        result = {"curve": str(args.curve), "dips": report.model_dump(mode="json")}

        if not report.frequencies():
            logger.info("No dips found in %s; no coefficient file written", args.curve)
            result["message"] = "no dips found"
            result["output"] = None
            return result

        radius = args.r if args.bandwidth is None else radius_from_bandwidth(args.bandwidth, args.fs)
        specs: list[NotchSpec] = notch_specs_from_dips(report, args.fs, radius)
        result.update(design_and_write(specs, args))
        return result
