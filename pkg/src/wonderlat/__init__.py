"""Exact combinatorics and identities for wonderful varieties."""

__version__ = "0.1.0"
