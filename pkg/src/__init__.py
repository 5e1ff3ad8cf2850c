"""Sublinear MST/TSP cost estimation in streaming and query models."""

__version__ = "0.1.0"
