#  Notch Studio - Entry Point
#
#  Runs one CLI subcommand: python run.py <design|analyze|filter|spectrum|acoustics> ...
#
#  Depends on: notchstudio/cli.py, notchstudio/config.py
#  Used by:    (run directly)

import sys


def main():
    try:
        from notchstudio.cli import main as cli_main
    except (FileNotFoundError, ValueError) as e:
        # Config that does not parse, or a NOTCHSTUDIO_CONFIG path that does not exist
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(1)

    sys.exit(cli_main())


if __name__ == "__main__":
    main()
