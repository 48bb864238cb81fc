#  Notch Studio - CSV I/O
#
#  Response and spectrum curve export, insulation curve import.
#  Columns:
#      response    freq_hz, magnitude, magnitude_db, phase_rad
#      spectrum    freq_hz, magnitude_db
#      insulation  freq_hz, r_db          (header row required)
#
#  -inf dB values are written as "-inf".
#
#  Depends on: models/schemas.py, exceptions.py
#  Used by:    commands/analyze.py, commands/spectrum.py, commands/acoustics.py

import csv
import logging
from pathlib import Path

from pydantic import ValidationError

from notchstudio.exceptions import CurveFormatError
from notchstudio.models.schemas import InsulationCurve, InsulationPoint

logger = logging.getLogger("notchstudio.csv_io")

RESPONSE_COLUMNS = ("freq_hz", "magnitude", "magnitude_db", "phase_rad")
SPECTRUM_COLUMNS = ("freq_hz", "magnitude_db")
INSULATION_COLUMNS = ("freq_hz", "r_db")


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_rows(path: Path, header: tuple[str, ...], rows) -> int:
    path = Path(path)
    count = 0
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
            count += 1
    logger.info("Wrote %d rows to %s", count, path)
    return count


def write_response_csv(path: Path, curve) -> int:
    """One row per sweep point of a ResponseCurve."""
    return _write_rows(
        path, RESPONSE_COLUMNS,
        zip(curve.freqs, curve.magnitude, curve.magnitude_db, curve.phase),
    )


def write_spectrum_csv(path: Path, spectrum) -> int:
    return _write_rows(path, SPECTRUM_COLUMNS, zip(spectrum.freqs, spectrum.magnitude_db))


def write_insulation_csv(path: Path, curve: InsulationCurve) -> int:
    return _write_rows(path, INSULATION_COLUMNS, ((p.freq, p.r_db) for p in curve.points))


def read_insulation_csv(path: Path) -> InsulationCurve:
    path = Path(path)
    if not path.exists():
        raise CurveFormatError(f"insulation curve not found: {path}")

    # (physical line, row); blank lines dropped
    with open(path, newline="") as f:
        reader = csv.reader(f)
        rows = [(reader.line_num, r) for r in reader if r and any(c.strip() for c in r)]
    if not rows:
        raise CurveFormatError(f"{path}: empty file")

    _, first = rows[0]
    header = tuple(c.strip().lower() for c in first)
    if header != INSULATION_COLUMNS:
        raise CurveFormatError(
            f"{path}: header must be {','.join(INSULATION_COLUMNS)}, got {','.join(first)}"
        )

    points = []
    for lineno, row in rows[1:]:
        if len(row) != 2:
            raise CurveFormatError(f"{path}:{lineno}: expected 2 columns, got {len(row)}")
        try:
            freq, r_db = float(row[0]), float(row[1])
        except ValueError:
            raise CurveFormatError(f"{path}:{lineno}: non-numeric value in {row}") from None
        try:
            points.append(InsulationPoint(freq=freq, r_db=r_db))
        except ValidationError as e:
            raise CurveFormatError(f"{path}:{lineno}: {e.errors()[0]['msg']}") from None

    try:
        curve = InsulationCurve(points=points)
    except ValidationError as e:
        raise CurveFormatError(f"{path}: {e.errors()[0]['msg']}") from None
    logger.debug("Read %d insulation points from %s", len(points), path)
    return curve
