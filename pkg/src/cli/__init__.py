"""Command-line entry point for excross."""

from src.cli.main import build_parser, main

__all__ = ["build_parser", "main"]
