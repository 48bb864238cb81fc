#  Notch Studio - Command Base Class
#
#  Abstract base class for CLI subcommands.
#
#  Depends on: (none)
#  Used by:    commands/registry.py, commands/*

import argparse
from abc import ABC, abstractmethod


class Command(ABC):
    """One subcommand of the notchstudio CLI."""

    name: str = ""
    help: str = ""

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser):
        """Declare the subcommand's flags."""
        ...

    @abstractmethod
    def run(self, args: argparse.Namespace) -> dict:
        """Execute and return a JSON-serializable result for stdout."""
        ...

    def register(self, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help=self.help, description=self.help)
        self.add_arguments(parser)
        parser.set_defaults(command=self)
        return parser
