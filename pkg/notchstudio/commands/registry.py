#  Notch Studio - Command Registry
#
#  Subcommands are instantiated and registered when the registry is created.
#  A subcommand that fails to load is logged and skipped; the others still
#  register.
#
#  Depends on: commands/base.py, commands/*
#  Used by:    cli.py

import logging

from notchstudio.commands.base import Command

logger = logging.getLogger("notchstudio.commands.registry")


class CommandRegistry:
    """Registry of CLI subcommands, in the order they appear in --help."""

    def __init__(self):
        self._commands: dict[str, Command] = {}
        self._failed: list[str] = []
        self._register_defaults()

    def _register_defaults(self):
        """Imports are deferred into each factory so a broken module only takes down its own command."""

        def _design():
            from notchstudio.commands.design import DesignCommand
            return DesignCommand()

        def _analyze():
            from notchstudio.commands.analyze import AnalyzeCommand
            return AnalyzeCommand()

        def _filter():
            from notchstudio.commands.filter import FilterCommand
            return FilterCommand()

        def _spectrum():
            from notchstudio.commands.spectrum import SpectrumCommand
            return SpectrumCommand()

        def _acoustics():
            from notchstudio.commands.acoustics import AcousticsCommand
            return AcousticsCommand()

        command_factories = [
            ("DesignCommand", _design),
            ("AnalyzeCommand", _analyze),
            ("FilterCommand", _filter),
            ("SpectrumCommand", _spectrum),
            ("AcousticsCommand", _acoustics),
        ]

        for name, factory in command_factories:
            try:
                command = factory()
                self._commands[command.name] = command
            except Exception as e:
                logger.warning("Failed to register command %s: %s", name, e)
                self._failed.append(name)

        logger.debug("Registered %d/%d commands", len(self._commands), len(command_factories))

    @property
    def failed_commands(self) -> list[str]:
        """Command class names that failed to register."""
        return list(self._failed)

    def get(self, name: str) -> Command | None:
        return self._commands.get(name)

    def all(self) -> list[Command]:
        return list(self._commands.values())

    def all_names(self) -> list[str]:
        return list(self._commands.keys())
