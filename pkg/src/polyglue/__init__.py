"""Exact verification engine for commuting bosonic trace Hamiltonians."""

__version__ = "0.1.0"
