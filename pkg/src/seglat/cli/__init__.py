"""
Command-line interface for seglat.
"""

from seglat.cli.main import app

__all__ = ["app"]
