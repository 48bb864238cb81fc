#  Notch Studio - Logging Configuration
#
#  Configures structured logging with JSON or text format.
#  Provides context variables for the running subcommand: its name, run id,
#  output file and (for filtering) the engine kind.
#
#  Depends on: (none)
#  Used by:    run.py, commands/*

import contextvars
import json
import logging
import sys
import time

# Context variables for per-invocation tracing
command_var: contextvars.ContextVar[str | None] = contextvars.ContextVar("command", default=None)
run_id_var: contextvars.ContextVar[str | None] = contextvars.ContextVar("run_id", default=None)
output_var: contextvars.ContextVar[str | None] = contextvars.ContextVar("output", default=None)
engine_var: contextvars.ContextVar[str | None] = contextvars.ContextVar("engine", default=None)


def set_command(name: str | None):
    command_var.set(name)


def set_run_id(rid: str | None):
    run_id_var.set(rid)


def set_output(path: str | None):
    output_var.set(str(path) if path is not None else None)


def set_engine(kind: str | None):
    engine_var.set(kind)


class JSONFormatter(logging.Formatter):
    """Emit log records as single-line JSON with context variables."""

    converter = time.gmtime

    def format(self, record: logging.LogRecord) -> str:
        entry = {
            "timestamp": self.formatTime(record, "%Y-%m-%dT%H:%M:%S") + f".{int(record.msecs):03d}Z",
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        cmd = command_var.get(None)
        if cmd:
            entry["command"] = cmd
        rid = run_id_var.get(None)
        if rid:
            entry["run_id"] = rid
        out = output_var.get(None)
        if out:
            entry["output"] = out
        engine = engine_var.get(None)
        if engine:
            entry["engine"] = engine
        if record.exc_info and record.exc_info[0] is not None:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


_TEXT_FORMAT = "%(asctime)s [%(name)s] %(levelname)s: %(message)s"


def setup_logging(level: str = "INFO", fmt: str = "text"):
    """Configure logging for the toolkit.

    Log lines go to stderr so that JSON results on stdout stay parseable.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR).
        fmt: "json" for structured output, "text" for human-readable.
    """
    root = logging.getLogger("notchstudio")
    root.setLevel(getattr(logging, level.upper(), logging.INFO))

    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        if fmt == "json":
            handler.setFormatter(JSONFormatter())
        else:
            handler.setFormatter(logging.Formatter(_TEXT_FORMAT, datefmt="%H:%M:%S"))
        root.addHandler(handler)
