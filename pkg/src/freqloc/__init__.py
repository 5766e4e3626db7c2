"""Frequency localization bounds for wave initial data."""

__version__ = "0.1.0"
