"""Exact obstructions to unlinking links with few crossing changes."""

__version__ = "0.1.0"
