"""Exact evaluation and asymptotics of classical spin networks."""

__version__ = "0.1.0"
