"""
Entry point: python workbench.py <command> [options]

Run with --help for the list of commands.
"""

from src.cli import main


if __name__ == "__main__":
    main()
