#!/usr/bin/env python3
"""
Main entry point for the quiver moduli toolkit.

Usage:
    python main.py validate ringel5
    python main.py moduli ringel5 -d 1,1,2,1,1 -t -1,-1,0,1,1 --format json
"""

from cli_io.cli_interface import cli


def main():
    """Run the command-line interface."""
    cli()


if __name__ == "__main__":
    main()
